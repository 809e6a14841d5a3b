use super::oracle::{check_gen, malformed};
use super::{Gen, Group, GroupError, NormalForm, Oracle, Word};

/// `G1 × G2` with generators `(s,1)` followed by `(1,t)`.
pub struct DirectProduct {
    left: Oracle,
    right: Oracle,
}

impl DirectProduct {
    pub fn new(left: Oracle, right: Oracle) -> Self {
        DirectProduct { left, right }
    }

    fn parts<'a>(&self, g: &'a NormalForm) -> Result<(&'a NormalForm, &'a NormalForm), GroupError> {
        g.as_pair().ok_or_else(|| malformed(self, g))
    }
}

impl Group for DirectProduct {
    fn name(&self) -> String {
        format!("product({}, {})", self.left.name(), self.right.name())
    }

    fn generator_count(&self) -> usize {
        self.left.generator_count() + self.right.generator_count()
    }

    fn identity(&self) -> NormalForm {
        NormalForm::pair(self.left.identity(), self.right.identity())
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.generator_count())?;
        let (x, y) = self.parts(g)?;
        let k = self.left.generator_count();
        if s.index() < k {
            Ok(NormalForm::pair(self.left.multiply(x, s)?, y.clone()))
        } else {
            let t = Gen::new(s.index() - k, s.is_inverse());
            Ok(NormalForm::pair(x.clone(), self.right.multiply(y, t)?))
        }
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        let (x, y) = self.parts(g)?;
        let k = self.left.generator_count();
        let mut w = self.left.word_of(x)?;
        for t in self.right.word_of(y)?.iter() {
            w.push(Gen::new(t.index() + k, t.is_inverse()));
        }
        Ok(w)
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        let (x, y) = self.parts(g)?;
        Ok(NormalForm::pair(self.left.inverse(x)?, self.right.inverse(y)?))
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        let (x, y) = self.parts(g)?;
        let (u, v) = self.parts(h)?;
        Ok(NormalForm::pair(
            self.left.product(x, u)?,
            self.right.product(y, v)?,
        ))
    }
}
