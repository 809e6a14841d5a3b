//! The group-spec language: parser, constraint checks and printer.
//!
//! ```text
//! term := "Z" | "Z^" INT | "free(" INT ")" | "cyclic(" INT ")" | "table(" PATH ")"
//!       | "product(" term "," term ")" | "semidirect_fz(" term "," INT ")"
//!       | "semidirect_zf(" term ")" | "amalgam(" term "," term "," INT ")"
//!       | "hnn(" term "," INT ["," INT] ")" | "quotient(" term "," list ")"
//!       | "rel(" term "," list ")" | "gens(" term "," list ")"
//! list := "[" [item {"," item}] "]"
//! item := WORD | "(" INT {"," INT} ")"
//! ```

use std::fmt;

use ends_core::group_core::Word;

/// Largest rank accepted for `free` and `Z^n`; words name generators `a..z`.
pub const MAX_RANK: u64 = 26;
/// Largest order accepted for `cyclic`, which is stored as a full table.
pub const MAX_CYCLIC_ORDER: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpecAst {
    Z,
    ZPow(u32),
    Free(u32),
    Cyclic(u32),
    Table(String),
    Product(Box<GroupSpecAst>, Box<GroupSpecAst>),
    SemidirectFz(Box<GroupSpecAst>, i64),
    SemidirectZf(Box<GroupSpecAst>),
    Amalgam(Box<GroupSpecAst>, Box<GroupSpecAst>, u32),
    Hnn(Box<GroupSpecAst>, u32, Option<i64>),
    Quotient(Box<GroupSpecAst>, Vec<Element>),
    Rel(Box<GroupSpecAst>, Vec<Element>),
    Gens(Box<GroupSpecAst>, Vec<Element>),
}

/// A list entry: a word in the generators, or an integer vector for `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Word(Word),
    Vector(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected {}, found {found}", expected.join(" or "))]
    Syntax { expected: Vec<String>, found: String },
    #[error("{constructor} takes {expected}, got {found} argument(s)")]
    Arity {
        constructor: String,
        expected: String,
        found: usize,
    },
    #[error("{0}")]
    Constraint(String),
}

impl GroupSpecAst {
    pub fn is_finite_leaf(&self) -> bool {
        matches!(self, GroupSpecAst::Cyclic(_) | GroupSpecAst::Table(_))
    }

    /// Number of generators, when it does not depend on a table file.
    pub fn generator_count(&self) -> Option<usize> {
        use GroupSpecAst::*;
        Some(match self {
            Z => 1,
            ZPow(n) | Free(n) => *n as usize,
            Cyclic(n) => usize::from(*n > 1),
            Table(_) => return None,
            Product(a, b) => a.generator_count()? + b.generator_count()?,
            SemidirectFz(k, _) | SemidirectZf(k) => k.generator_count()? + 1,
            Amalgam(a, b, _) => a.finite_order()? - 1 + b.finite_order()? - 1,
            Hnn(a, _, _) => a.finite_order()?,
            Quotient(t, _) | Rel(t, _) => t.generator_count()?,
            Gens(_, ws) => ws.len(),
        })
    }

    fn finite_order(&self) -> Option<usize> {
        match self {
            GroupSpecAst::Cyclic(n) => Some(*n as usize),
            _ => None,
        }
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpecAst, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    p.skip_ws();
    let start = p.pos;
    let term = p.term()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.unexpected(&["end of input"]));
    }
    if let GroupSpecAst::Rel(..) = term {
        return Ok(term);
    }
    p.check_no_rel(&term, start)?;
    Ok(term)
}

enum Arg {
    Term(GroupSpecAst),
    Int(i64),
    List(Vec<Element>),
    Path(String),
}

impl Arg {
    fn kind(&self) -> &'static str {
        match self {
            Arg::Term(_) => "a group term",
            Arg::Int(_) => "an integer",
            Arg::List(_) => "a list",
            Arg::Path(_) => "a path",
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError { line, column, kind }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        self.error_at(
            self.pos,
            ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found,
            },
        )
    }

    fn constraint(&self, pos: usize, msg: String) -> ParseError {
        self.error_at(pos, ParseErrorKind::Constraint(msg))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("{c:?}")]))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.unexpected(&["an integer"]));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.constraint(start, format!("integer {text} out of range")))
    }

    fn term(&mut self) -> Result<GroupSpecAst, ParseError> {
        const TERMS: [&str; 13] = [
            "Z", "Z^", "free", "cyclic", "table", "product", "semidirect_fz", "semidirect_zf",
            "amalgam", "hnn", "quotient", "rel", "gens",
        ];
        self.skip_ws();
        let start = self.pos;
        let name = self.ident();
        if name == "Z" {
            if self.peek() != Some('^') {
                return Ok(GroupSpecAst::Z);
            }
            self.pos += 1;
            let at = self.pos;
            let n = self.int()?;
            return Ok(GroupSpecAst::ZPow(self.rank(at, n, "Z^n")?));
        }
        if !TERMS.contains(&name.as_str()) || name.is_empty() {
            self.pos = start;
            return Err(self.unexpected(&["a group term"]));
        }
        self.skip_ws();
        if self.peek() != Some('(') {
            return Err(self.unexpected(&["'('"]));
        }
        self.pos += 1;
        let mut args = Vec::new();
        if name == "table" {
            args.push((self.pos, Arg::Path(self.path()?)));
        } else {
            loop {
                self.skip_ws();
                let at = self.pos;
                args.push((at, self.arg()?));
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => break,
                    _ => return Err(self.unexpected(&["','", "')'"])),
                }
            }
        }
        self.expect(')')?;
        self.construct(start, &name, args)
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        match self.peek() {
            Some('[') => Ok(Arg::List(self.list()?)),
            Some(c) if c == '-' || c.is_ascii_digit() => Ok(Arg::Int(self.int()?)),
            Some(c) if c.is_ascii_alphabetic() => Ok(Arg::Term(self.term()?)),
            _ => Err(self.unexpected(&["a group term", "an integer", "'['"])),
        }
    }

    fn path(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let mut out = String::new();
        if self.peek() == Some('"') {
            self.pos += 1;
            loop {
                match self.peek() {
                    None => return Err(self.unexpected(&["'\"'"])),
                    Some('"') => {
                        self.pos += 1;
                        break;
                    }
                    Some('\\') => {
                        self.pos += 1;
                        match self.peek() {
                            Some(c @ ('"' | '\\')) => out.push(c),
                            _ => return Err(self.unexpected(&["'\"'", "'\\\\'"])),
                        }
                        self.pos += 1;
                    }
                    Some(c) => {
                        out.push(c);
                        self.pos += 1;
                    }
                }
            }
        } else {
            while let Some(c) = self.peek().filter(|&c| !is_path_delimiter(c)) {
                out.push(c);
                self.pos += 1;
            }
        }
        if out.is_empty() {
            return Err(self.unexpected(&["a path"]));
        }
        Ok(out)
    }

    fn list(&mut self) -> Result<Vec<Element>, ParseError> {
        self.expect('[')?;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            self.skip_ws();
            items.push(self.element()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(items);
                }
                _ => return Err(self.unexpected(&["','", "']'"])),
            }
        }
    }

    fn element(&mut self) -> Result<Element, ParseError> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let mut v = vec![self.int()?];
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(',') => {
                        self.pos += 1;
                        v.push(self.int()?);
                    }
                    Some(')') => {
                        self.pos += 1;
                        return Ok(Element::Vector(v));
                    }
                    _ => return Err(self.unexpected(&["','", "')'"])),
                }
            }
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || matches!(c, '\'' | '^' | '-'))
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected(&["a word", "'('"]));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<Word>().map(Element::Word).map_err(|e| {
            let offset = match e {
                ends_core::group_core::GroupError::WordSyntax { offset, .. } => offset,
                _ => 0,
            };
            self.constraint(start + offset, format!("bad word {text:?}: {e}"))
        })
    }

    fn rank(&self, at: usize, n: i64, what: &str) -> Result<u32, ParseError> {
        if n < 1 || n as u64 > MAX_RANK {
            return Err(self.constraint(at, format!("{what} needs 1 <= n <= {MAX_RANK}, got {n}")));
        }
        Ok(n as u32)
    }

    fn construct(
        &self,
        start: usize,
        name: &str,
        args: Vec<(usize, Arg)>,
    ) -> Result<GroupSpecAst, ParseError> {
        use GroupSpecAst as G;
        let n = args.len();
        let arity = |expected: &str| {
            self.error_at(
                start,
                ParseErrorKind::Arity {
                    constructor: name.to_string(),
                    expected: expected.to_string(),
                    found: n,
                },
            )
        };
        let wrong = |(at, a): &(usize, Arg), want: &str| {
            self.constraint(*at, format!("{name}: expected {want}, found {}", a.kind()))
        };
        let term = |a: (usize, Arg)| match a.1 {
            Arg::Term(t) => Ok(t),
            _ => Err(wrong(&a, "a group term")),
        };
        let int = |a: (usize, Arg)| match a.1 {
            Arg::Int(n) => Ok((a.0, n)),
            _ => Err(wrong(&a, "an integer")),
        };
        let list = |a: (usize, Arg)| match a.1 {
            Arg::List(l) => Ok((a.0, l)),
            _ => Err(wrong(&a, "a list")),
        };
        let finite = |a: (usize, Arg)| {
            let at = a.0;
            let t = term(a)?;
            if !t.is_finite_leaf() {
                return Err(self.constraint(at, format!("{name}: expected cyclic(n) or table(path)")));
            }
            Ok(t)
        };
        let mut it = args.into_iter();
        let ast = match (name, n) {
            ("free", 1) | ("cyclic", 1) => {
                let (at, k) = int(it.next().unwrap())?;
                if name == "free" {
                    G::Free(self.rank(at, k, "free(n)")?)
                } else {
                    if k < 1 || k as u64 > MAX_CYCLIC_ORDER {
                        return Err(self.constraint(
                            at,
                            format!("cyclic(n) needs 1 <= n <= {MAX_CYCLIC_ORDER}, got {k}"),
                        ));
                    }
                    G::Cyclic(k as u32)
                }
            }
            ("table", 1) => match it.next().unwrap().1 {
                Arg::Path(p) => G::Table(p),
                _ => unreachable!(),
            },
            ("product", 2) => G::Product(
                Box::new(term(it.next().unwrap())?),
                Box::new(term(it.next().unwrap())?),
            ),
            ("semidirect_fz", 2) => {
                let k = finite(it.next().unwrap())?;
                let (at, unit) = int(it.next().unwrap())?;
                if let G::Cyclic(m) = k {
                    if gcd(unit, m as i64) != 1 {
                        return Err(self.constraint(at, format!("{unit} is not a unit mod {m}")));
                    }
                }
                G::SemidirectFz(Box::new(k), unit)
            }
            ("semidirect_zf", 1) => G::SemidirectZf(Box::new(finite(it.next().unwrap())?)),
            ("amalgam", 3) => {
                let a = finite(it.next().unwrap())?;
                let b = finite(it.next().unwrap())?;
                let (at, d) = int(it.next().unwrap())?;
                if d < 1 {
                    return Err(self.constraint(at, format!("edge group order must be positive, got {d}")));
                }
                if let (G::Cyclic(m), G::Cyclic(k)) = (&a, &b) {
                    let g = gcd(*m as i64, *k as i64);
                    if g % d != 0 {
                        return Err(self.constraint(at, format!("{d} does not divide gcd({m}, {k}) = {g}")));
                    }
                }
                G::Amalgam(Box::new(a), Box::new(b), d as u32)
            }
            ("hnn", 2) | ("hnn", 3) => {
                let a = finite(it.next().unwrap())?;
                let (at, d) = int(it.next().unwrap())?;
                if d < 1 {
                    return Err(self.constraint(at, format!("edge group order must be positive, got {d}")));
                }
                if let G::Cyclic(m) = a {
                    if m as i64 % d != 0 {
                        return Err(self.constraint(at, format!("{d} does not divide {m}")));
                    }
                }
                let e = match it.next() {
                    Some(arg) => {
                        let (at, e) = int(arg)?;
                        if gcd(e, d) != 1 {
                            return Err(self.constraint(
                                at,
                                format!("x -> x^{e} is not an automorphism of a cyclic group of order {d}"),
                            ));
                        }
                        Some(e)
                    }
                    None => None,
                };
                G::Hnn(Box::new(a), d as u32, e)
            }
            ("quotient", 2) | ("rel", 2) | ("gens", 2) => {
                let t = term(it.next().unwrap())?;
                let (at, items) = list(it.next().unwrap())?;
                self.check_elements(name, &t, at, &items)?;
                match name {
                    "quotient" => G::Quotient(Box::new(t), items),
                    "rel" => G::Rel(Box::new(t), items),
                    _ => G::Gens(Box::new(t), items),
                }
            }
            ("free" | "cyclic" | "table" | "semidirect_zf", _) => return Err(arity("1")),
            ("product" | "semidirect_fz" | "quotient" | "rel" | "gens", _) => {
                return Err(arity("2"))
            }
            ("amalgam", _) => return Err(arity("3")),
            ("hnn", _) => return Err(arity("2 or 3")),
            _ => unreachable!("unknown constructor {name}"),
        };
        Ok(ast)
    }

    fn check_elements(
        &self,
        name: &str,
        base: &GroupSpecAst,
        at: usize,
        items: &[Element],
    ) -> Result<(), ParseError> {
        let count = base.generator_count();
        for item in items {
            match item {
                Element::Word(w) => {
                    if let (Some(c), Some(m)) = (count, w.max_index()) {
                        if m >= c {
                            return Err(self.constraint(
                                at,
                                format!("{name}: word {w} uses generator {} but the group has {c}", m + 1),
                            ));
                        }
                    }
                }
                Element::Vector(v) => {
                    let dim = match base {
                        GroupSpecAst::Z => 1,
                        GroupSpecAst::ZPow(n) => *n as usize,
                        _ => {
                            return Err(self.constraint(at, format!("{name}: vectors are only allowed over Z^n")))
                        }
                    };
                    if name == "gens" {
                        return Err(self.constraint(at, "gens: generators must be words".into()));
                    }
                    if v.len() != dim {
                        return Err(self.constraint(
                            at,
                            format!("{name}: vector of length {} in Z^{dim}", v.len()),
                        ));
                    }
                }
            }
        }
        if name == "rel" && !matches!(base, GroupSpecAst::Free(_) | GroupSpecAst::Z | GroupSpecAst::ZPow(_)) {
            return Err(self.constraint(at, "rel: the ambient group must be free(n), Z or Z^n".into()));
        }
        if name == "gens" && items.is_empty() {
            return Err(self.constraint(at, "gens: empty generating set".into()));
        }
        Ok(())
    }

    fn check_no_rel(&self, term: &GroupSpecAst, at: usize) -> Result<(), ParseError> {
        use GroupSpecAst::*;
        match term {
            Rel(..) => Err(self.constraint(at, "rel(...) is only allowed as the outermost term".into())),
            Product(a, b) | Amalgam(a, b, _) => {
                self.check_no_rel(a, at)?;
                self.check_no_rel(b, at)
            }
            SemidirectFz(t, _) | SemidirectZf(t) | Hnn(t, _, _) | Quotient(t, _) | Gens(t, _) => {
                self.check_no_rel(t, at)
            }
            Z | ZPow(_) | Free(_) | Cyclic(_) | Table(_) => Ok(()),
        }
    }
}

fn is_path_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, ',' | '(' | ')' | '[' | ']' | '"')
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) => write!(f, "{w}"),
            Element::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Element]) -> fmt::Result {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    write!(f, "[{}]", parts.join(", "))
}

impl fmt::Display for GroupSpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupSpecAst::*;
        match self {
            Z => write!(f, "Z"),
            ZPow(n) => write!(f, "Z^{n}"),
            Free(n) => write!(f, "free({n})"),
            Cyclic(n) => write!(f, "cyclic({n})"),
            Table(p) if p.chars().any(is_path_delimiter) || p.contains('\\') => {
                write!(f, "table(\"{}\")", p.replace('\\', "\\\\").replace('"', "\\\""))
            }
            Table(p) => write!(f, "table({p})"),
            Product(a, b) => write!(f, "product({a}, {b})"),
            SemidirectFz(k, u) => write!(f, "semidirect_fz({k}, {u})"),
            SemidirectZf(k) => write!(f, "semidirect_zf({k})"),
            Amalgam(a, b, d) => write!(f, "amalgam({a}, {b}, {d})"),
            Hnn(a, d, Some(e)) => write!(f, "hnn({a}, {d}, {e})"),
            Hnn(a, d, None) => write!(f, "hnn({a}, {d})"),
            Quotient(t, l) | Rel(t, l) | Gens(t, l) => {
                let name = match self {
                    Quotient(..) => "quotient",
                    Rel(..) => "rel",
                    _ => "gens",
                };
                write!(f, "{name}({t}, ")?;
                write_list(f, l)?;
                write!(f, ")")
            }
        }
    }
}
