use std::sync::Arc;

use crate::group_core::{
    check_gen, malformed, AmalgamForm, FiniteGroup, Gen, Group, GroupError, NormalForm, Word,
};

/// `A *_C B` for finite `A`, `B` and a common subgroup `C` given by two
/// injective homomorphisms.
#[derive(Clone, Debug)]
pub struct AmalgamSpec {
    pub a: Arc<FiniteGroup>,
    pub b: Arc<FiniteGroup>,
    pub c: Arc<FiniteGroup>,
    pub c_in_a: Vec<u32>,
    pub c_in_b: Vec<u32>,
}

impl AmalgamSpec {
    /// `cyclic(m) *_{cyclic(d)} cyclic(n)` with `1 ↦ m/d` and `1 ↦ n/d`.
    pub fn cyclic(m: usize, n: usize, d: usize) -> Result<Self, GroupError> {
        if d == 0 || m % d != 0 || n % d != 0 {
            return Err(GroupError::Validation(format!(
                "{d} does not divide gcd({m}, {n})"
            )));
        }
        let a = Arc::new(FiniteGroup::cyclic(m));
        let b = Arc::new(FiniteGroup::cyclic(n));
        Self::with_cyclic_edge(a, b, d)
    }

    /// Amalgamates the cyclic subgroups of order `d` generated by the
    /// smallest-index element of order `d` in each factor.
    pub fn with_cyclic_edge(
        a: Arc<FiniteGroup>,
        b: Arc<FiniteGroup>,
        d: usize,
    ) -> Result<Self, GroupError> {
        let ga = first_of_order(&a, d)?;
        let gb = first_of_order(&b, d)?;
        let c = Arc::new(FiniteGroup::cyclic(d));
        let c_in_a = (0..d as i64).map(|k| a.pow(ga, k)).collect();
        let c_in_b = (0..d as i64).map(|k| b.pow(gb, k)).collect();
        Ok(AmalgamSpec {
            a,
            b,
            c,
            c_in_a,
            c_in_b,
        })
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        check_embedding(&self.c, &self.a, &self.c_in_a, "C -> A")?;
        check_embedding(&self.c, &self.b, &self.c_in_b, "C -> B")
    }
}

pub(crate) fn first_of_order(g: &FiniteGroup, d: usize) -> Result<u32, GroupError> {
    (0..g.order() as u32)
        .find(|&x| g.element_order(x) == d)
        .ok_or_else(|| GroupError::Validation(format!("{} has no element of order {d}", g.name())))
}

fn check_embedding(
    c: &FiniteGroup,
    g: &FiniteGroup,
    map: &[u32],
    what: &str,
) -> Result<(), GroupError> {
    let err = |m: &str| GroupError::Validation(format!("embedding {what}: {m}"));
    if map.len() != c.order() || map.iter().any(|&x| x as usize >= g.order()) {
        return Err(err("wrong size or out of range"));
    }
    let mut seen = vec![false; g.order()];
    for &x in map {
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(err("not injective"));
        }
    }
    for p in 0..c.order() as u32 {
        for q in 0..c.order() as u32 {
            if map[c.mul(p, q) as usize] != g.mul(map[p as usize], map[q as usize]) {
                return Err(err("not a homomorphism"));
            }
        }
    }
    Ok(())
}

/// Decomposition `x = c · rep` with `rep` the payload-minimal element of the
/// coset `C x`.
pub(crate) fn coset_split(g: &FiniteGroup, sub: &[u32]) -> Vec<(u32, u32)> {
    (0..g.order() as u32)
        .map(|x| {
            let rep = sub.iter().map(|&c| g.mul(c, x)).min().unwrap();
            let c = g.mul(x, g.inv(rep));
            (c, rep)
        })
        .collect()
}

/// Oracle for an amalgam. Generators are the non-identity elements of `A`
/// followed by those of `B`; payloads are reduced forms with an explicit
/// head in `C`.
pub struct AmalgamProduct {
    spec: AmalgamSpec,
    factors: [Arc<FiniteGroup>; 2],
    emb: [Vec<u32>; 2],
    /// Per factor: element ↦ (C-index of the head part, representative).
    split: [Vec<(u32, u32)>; 2],
    label: String,
}

impl AmalgamProduct {
    pub fn new(spec: AmalgamSpec) -> Result<Self, GroupError> {
        spec.validate()?;
        let mut split = [Vec::new(), Vec::new()];
        let emb = [spec.c_in_a.clone(), spec.c_in_b.clone()];
        let factors = [spec.a.clone(), spec.b.clone()];
        for f in 0..2 {
            let g = &factors[f];
            let mut inv_emb = vec![u32::MAX; g.order()];
            for (i, &x) in emb[f].iter().enumerate() {
                inv_emb[x as usize] = i as u32;
            }
            split[f] = coset_split(g, &emb[f])
                .into_iter()
                .map(|(c, rep)| (inv_emb[c as usize], rep))
                .collect();
        }
        let label = format!(
            "amalgam({}, {}, {})",
            spec.a.name(),
            spec.b.name(),
            spec.c.order()
        );
        Ok(AmalgamProduct {
            spec,
            factors,
            emb,
            split,
            label,
        })
    }

    pub fn spec(&self) -> &AmalgamSpec {
        &self.spec
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Generator symbol for element `x` of factor `f` (`x ≠ 1`).
    pub fn letter(&self, f: usize, x: u32) -> Gen {
        assert!(x != 0, "identity is not a generator");
        let offset = if f == 0 { 0 } else { self.factors[0].order() - 1 };
        Gen::pos(offset + x as usize - 1)
    }

    /// `(factor, element)` of a generator symbol.
    pub fn decode(&self, s: Gen) -> (usize, u32) {
        let na = self.factors[0].order() - 1;
        let (f, x) = if s.index() < na {
            (0, s.index() as u32 + 1)
        } else {
            (1, (s.index() - na) as u32 + 1)
        };
        let x = if s.is_inverse() {
            self.factors[f].inv(x)
        } else {
            x
        };
        (f, x)
    }

    fn form<'a>(&self, g: &'a NormalForm) -> Result<&'a AmalgamForm, GroupError> {
        match g {
            NormalForm::Amalgam(a) => Ok(a),
            _ => Err(malformed(self, g)),
        }
    }

    fn mul_element(&self, form: &AmalgamForm, f: usize, x: u32) -> AmalgamForm {
        let mut letters = form.letters.clone();
        let y = match letters.last() {
            Some(&(lf, le)) if lf as usize == f => {
                letters.pop();
                self.factors[f].mul(le, x)
            }
            _ => x,
        };
        let (mut c, rep) = self.split[f][y as usize];
        let start = letters.len();
        if rep != 0 {
            letters.push((f as u8, rep));
        }
        for i in (0..start).rev() {
            let (g, e) = letters[i];
            let g = g as usize;
            let z = self.factors[g].mul(e, self.emb[g][c as usize]);
            let (c2, r2) = self.split[g][z as usize];
            letters[i] = (g as u8, r2);
            c = c2;
        }
        AmalgamForm {
            head: self.spec.c.mul(form.head, c),
            letters,
        }
    }

    pub fn reduce(&self, w: &Word) -> Result<AmalgamForm, GroupError> {
        match self.canonical(w)? {
            NormalForm::Amalgam(a) => Ok(a),
            _ => unreachable!(),
        }
    }
}

impl Group for AmalgamProduct {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn generator_count(&self) -> usize {
        self.factors[0].order() + self.factors[1].order() - 2
    }

    fn generator_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..self.factors[0].order()).map(|x| format!("x{x}")).collect();
        names.extend((1..self.factors[1].order()).map(|y| format!("y{y}")));
        names
    }

    fn identity(&self) -> NormalForm {
        NormalForm::Amalgam(AmalgamForm {
            head: 0,
            letters: Vec::new(),
        })
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.generator_count())?;
        let (f, x) = self.decode(s);
        Ok(NormalForm::Amalgam(self.mul_element(self.form(g)?, f, x)))
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        let form = self.form(g)?;
        let mut w = Word::empty();
        if form.head != 0 {
            w.push(self.letter(0, self.emb[0][form.head as usize]));
        }
        for &(f, e) in &form.letters {
            w.push(self.letter(f as usize, e));
        }
        Ok(w)
    }
}
