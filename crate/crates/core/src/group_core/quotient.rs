use std::collections::HashSet;

use super::oracle::check_gen;
use super::{Gen, Group, GroupError, NormalForm, Oracle, Word};

/// `G / N` for a finite normal subgroup `N`; each coset `gN = Ng` is named by
/// its payload-minimal element.
pub struct QuotientGroup {
    base: Oracle,
    elements: Vec<NormalForm>,
}

impl QuotientGroup {
    pub fn new(base: Oracle, subgroup: Vec<NormalForm>) -> Result<Self, GroupError> {
        let err = |m: &str| GroupError::Validation(format!("quotient of {}: {m}", base.name()));
        let set: HashSet<NormalForm> = subgroup.iter().cloned().collect();
        if !set.contains(&base.identity()) {
            return Err(err("subgroup must contain the identity"));
        }
        for x in &set {
            if !set.contains(&base.inverse(x)?) {
                return Err(err("subgroup is not closed under inverses"));
            }
            for y in &set {
                if !set.contains(&base.product(x, y)?) {
                    return Err(err("subgroup is not closed under products"));
                }
            }
        }
        for i in 0..base.generator_count() {
            let s = base.generator(Gen::pos(i))?;
            let si = base.inverse(&s)?;
            for x in &set {
                let c = base.product(&base.product(&si, x)?, &s)?;
                if !set.contains(&c) {
                    return Err(err("subgroup is not normal"));
                }
            }
        }
        let mut elements: Vec<NormalForm> = set.into_iter().collect();
        elements.sort();
        Ok(QuotientGroup { base, elements })
    }

    fn representative(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        let mut best: Option<NormalForm> = None;
        for n in &self.elements {
            let x = self.base.product(g, n)?;
            if best.as_ref().map_or(true, |b| x < *b) {
                best = Some(x);
            }
        }
        Ok(best.expect("subgroup is non-empty"))
    }
}

impl Group for QuotientGroup {
    fn name(&self) -> String {
        let names: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        format!("quotient({}, [{}])", self.base.name(), names.join(", "))
    }

    fn generator_count(&self) -> usize {
        self.base.generator_count()
    }

    fn generator_names(&self) -> Vec<String> {
        self.base.generator_names()
    }

    fn identity(&self) -> NormalForm {
        self.base.identity()
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.generator_count())?;
        self.representative(&self.base.multiply(g, s)?)
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        self.base.word_of(g)
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        self.representative(&self.base.product(g, h)?)
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        self.representative(&self.base.inverse(g)?)
    }
}
