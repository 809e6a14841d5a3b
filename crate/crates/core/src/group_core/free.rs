use super::oracle::{check_gen, malformed};
use super::{Gen, Group, GroupError, NormalForm, Word};

/// Free group on `rank` generators; payloads are freely reduced words.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        FreeGroup { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn letters<'a>(&self, g: &'a NormalForm) -> Result<&'a [Gen], GroupError> {
        match g {
            NormalForm::Word(w) => Ok(w),
            _ => Err(malformed(self, g)),
        }
    }
}

impl Group for FreeGroup {
    fn name(&self) -> String {
        format!("free({})", self.rank)
    }

    fn generator_count(&self) -> usize {
        self.rank
    }

    fn identity(&self) -> NormalForm {
        NormalForm::Word(Vec::new())
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.rank)?;
        let mut w = self.letters(g)?.to_vec();
        if w.last() == Some(&s.inv()) {
            w.pop();
        } else {
            w.push(s);
        }
        Ok(NormalForm::Word(w))
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        Ok(Word::new(self.letters(g)?.to_vec()))
    }

    fn canonical(&self, w: &Word) -> Result<NormalForm, GroupError> {
        for s in w.iter() {
            check_gen(s, self.rank)?;
        }
        Ok(NormalForm::Word(w.free_reduce().into_letters()))
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        Ok(NormalForm::Word(self.word_of(g)?.inverse().into_letters()))
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        let w = Word::new(self.letters(g)?.to_vec()).concat(&Word::new(self.letters(h)?.to_vec()));
        Ok(NormalForm::Word(w.free_reduce().into_letters()))
    }
}

/// `ℤⁿ` with the standard basis; payloads are integer vectors.
#[derive(Clone, Debug)]
pub struct FreeAbelian {
    rank: usize,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Self {
        FreeAbelian { rank }
    }

    fn coords<'a>(&self, g: &'a NormalForm) -> Result<&'a [i64], GroupError> {
        match g {
            NormalForm::Ints(v) if v.len() == self.rank => Ok(v),
            _ => Err(malformed(self, g)),
        }
    }
}

impl Group for FreeAbelian {
    fn name(&self) -> String {
        match self.rank {
            1 => "Z".into(),
            n => format!("Z^{n}"),
        }
    }

    fn generator_count(&self) -> usize {
        self.rank
    }

    fn identity(&self) -> NormalForm {
        NormalForm::Ints(vec![0; self.rank])
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.rank)?;
        let mut v = self.coords(g)?.to_vec();
        v[s.index()] += s.sign();
        Ok(NormalForm::Ints(v))
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        let v = self.coords(g)?;
        let mut w = Word::empty();
        for (i, &x) in v.iter().enumerate() {
            for _ in 0..x.unsigned_abs() {
                w.push(Gen::new(i, x < 0));
            }
        }
        Ok(w)
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        Ok(NormalForm::Ints(self.coords(g)?.iter().map(|x| -x).collect()))
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        let (a, b) = (self.coords(g)?, self.coords(h)?);
        Ok(NormalForm::Ints(a.iter().zip(b).map(|(x, y)| x + y).collect()))
    }
}
