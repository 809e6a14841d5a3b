use std::fmt;
use std::str::FromStr;

use super::GroupError;

/// A generator `s` or its formal inverse `s⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    index: u16,
    inverse: bool,
}

impl Gen {
    pub fn new(index: usize, inverse: bool) -> Self {
        let index = u16::try_from(index).expect("generator index exceeds u16");
        Gen { index, inverse }
    }

    pub fn pos(index: usize) -> Self {
        Gen::new(index, false)
    }

    pub fn neg(index: usize) -> Self {
        Gen::new(index, true)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.index as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` for a generator, `-1` for an inverse generator.
    #[inline]
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inv(self) -> Self {
        Gen {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// Dense slot in `0..2n`: `a, A, b, B, ...`.
    #[inline]
    pub fn slot(self) -> usize {
        2 * self.index() + self.inverse as usize
    }

    pub fn from_slot(slot: usize) -> Self {
        Gen::new(slot / 2, slot % 2 == 1)
    }
}

/// Conventional name of generator `index`: `a`..`z`, then `g26`, `g27`, ...
pub fn generator_name(index: usize) -> String {
    if index < 26 {
        ((b'a' + index as u8) as char).to_string()
    } else {
        format!("g{index}")
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index();
        match (i < 26, self.inverse) {
            (true, false) => write!(f, "{}", (b'a' + i as u8) as char),
            (true, true) => write!(f, "{}", (b'A' + i as u8) as char),
            (false, false) => write!(f, "g{i}"),
            (false, true) => write!(f, "g{i}'"),
        }
    }
}

/// A finite sequence of generator symbols; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Gen> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Gen) {
        self.0.push(s);
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Gen> + '_ {
        self.0.iter().copied()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self^k`; negative powers use the inverse word.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Free reduction: cancels every adjacent `s s⁻¹` pair.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Gen> = Vec::with_capacity(self.0.len());
        for &s in &self.0 {
            if out.last() == Some(&s.inv()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        Word(out)
    }

    /// Largest generator index used, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().map(|s| s.index()).max()
    }

    /// All words of length exactly `len` over the given alphabet, in
    /// lexicographic order of alphabet positions.
    pub fn all_of_length(alphabet: &[Gen], len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * alphabet.len());
            for w in &out {
                for &s in alphabet {
                    let mut v = w.0.clone();
                    v.push(s);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

impl FromIterator<Gen> for Word {
    fn from_iter<I: IntoIterator<Item = Gen>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses `aBb'a^3c^-2`: lowercase letters are generators, uppercase or a
/// trailing `'` inverts, `^k` repeats the preceding letter. `1` is the
/// empty word.
impl FromStr for Word {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let chars: Vec<char> = s.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let mut g = if c.is_ascii_lowercase() {
                Gen::pos((c as u8 - b'a') as usize)
            } else if c.is_ascii_uppercase() {
                Gen::neg((c as u8 - b'A') as usize)
            } else {
                return Err(GroupError::WordSyntax {
                    offset: i,
                    message: format!("unexpected character {c:?}"),
                });
            };
            i += 1;
            if i < chars.len() && chars[i] == '\'' {
                g = g.inv();
                i += 1;
            }
            let mut reps: i64 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                reps = text.parse().map_err(|_| GroupError::WordSyntax {
                    offset: start,
                    message: "expected an integer exponent".into(),
                })?;
            }
            let letter = if reps < 0 { g.inv() } else { g };
            for _ in 0..reps.unsigned_abs() {
                out.push(letter);
            }
        }
        Ok(Word(out))
    }
}
