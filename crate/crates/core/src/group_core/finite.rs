use std::collections::VecDeque;
use std::path::Path;

use super::oracle::{check_gen, malformed};
use super::{Gen, Group, GroupError, NormalForm, Word};

/// A finite group given by its multiplication table; element `0` is the
/// identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<u32>,
    words: Vec<Word>,
}

impl FiniteGroup {
    /// Validates the table (identity, Latin square, associativity) and that
    /// `generators` generate. With `None`, every non-identity element is a
    /// generator.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        generators: Option<Vec<u32>>,
    ) -> Result<Self, GroupError> {
        let bad = |m: String| GroupError::Table(m);
        if order == 0 {
            return Err(bad("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(bad(format!("expected {} entries, got {}", order * order, table.len())));
        }
        if let Some(x) = table.iter().find(|&&x| x as usize >= order) {
            return Err(bad(format!("entry {x} out of range")));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for g in 0..order {
            if at(0, g) != g || at(g, 0) != g {
                return Err(bad("element 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0usize; order];
        for g in 0..order {
            for h in 0..order {
                let x = at(g, h);
                if seen[x] == 2 * g + 1 {
                    return Err(bad(format!("row {g} repeats {x}")));
                }
                seen[x] = 2 * g + 1;
            }
        }
        for g in 0..order {
            seen.iter_mut().for_each(|s| *s = 0);
            for h in 0..order {
                let x = at(h, g);
                if seen[x] == 1 {
                    return Err(bad(format!("column {g} repeats {x}")));
                }
                seen[x] = 1;
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(bad(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inverses = vec![0u32; order];
        for g in 0..order {
            inverses[g] = (0..order).find(|&h| at(g, h) == 0).unwrap() as u32;
        }
        let generators = generators.unwrap_or_else(|| (1..order as u32).collect());
        if let Some(x) = generators.iter().find(|&&x| x as usize >= order) {
            return Err(bad(format!("generator {x} out of range")));
        }
        let mut grp = FiniteGroup {
            name: name.into(),
            order,
            table,
            inverses,
            generators,
            words: Vec::new(),
        };
        grp.words = grp.shortest_words()?;
        Ok(grp)
    }

    /// `ℤ/n` with generator `1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::from_table(format!("cyclic({n})"), n, table, Some(gens))
            .expect("cyclic table is valid")
    }

    /// Parses the plain-text format: the order `n`, then `n` rows of `n`
    /// whitespace separated entries.
    pub fn parse_table(name: impl Into<String>, text: &str) -> Result<Self, GroupError> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| GroupError::Table("empty table file".into()))?
            .parse()
            .map_err(|_| GroupError::Table("first token must be the order".into()))?;
        let mut table = Vec::with_capacity(n * n);
        for tok in tokens {
            table.push(
                tok.parse::<u32>()
                    .map_err(|_| GroupError::Table(format!("bad entry {tok:?}")))?,
            );
        }
        FiniteGroup::from_table(name, n, table, None)
    }

    pub fn load_table(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Table(format!("{}: {e}", path.display())))?;
        FiniteGroup::parse_table(format!("table({})", path.display()), &text)
    }

    fn shortest_words(&self) -> Result<Vec<Word>, GroupError> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0u32]);
        while let Some(g) = queue.pop_front() {
            for (i, &s) in self.generators.iter().enumerate() {
                for (inv, x) in [(false, s), (true, self.inverses[s as usize])] {
                    let h = self.mul(g, x);
                    if words[h as usize].is_none() {
                        let mut w = words[g as usize].clone().unwrap();
                        w.push(Gen::new(i, inv));
                        words[h as usize] = Some(w);
                        queue.push_back(h);
                    }
                }
            }
        }
        words
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GroupError::Validation(format!("generators do not generate {}", self.name)))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut x = 0;
        for _ in 0..k.unsigned_abs() {
            x = self.mul(x, base);
        }
        x
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut stack = vec![0u32];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order as u32).filter(|&x| inside[x as usize]).collect()
    }

    pub fn is_subgroup(&self, elems: &[u32]) -> bool {
        let mut inside = vec![false; self.order];
        for &x in elems {
            if x as usize >= self.order {
                return false;
            }
            inside[x as usize] = true;
        }
        inside[0]
            && elems.iter().all(|&x| inside[self.inv(x) as usize])
            && elems
                .iter()
                .all(|&x| elems.iter().all(|&y| inside[self.mul(x, y) as usize]))
    }

    /// True when `map` (indexed by element) is a bijective homomorphism.
    pub fn is_automorphism(&self, map: &[u32]) -> bool {
        if map.len() != self.order {
            return false;
        }
        let mut hit = vec![false; self.order];
        for &y in map {
            if y as usize >= self.order || hit[y as usize] {
                return false;
            }
            hit[y as usize] = true;
        }
        (0..self.order as u32).all(|a| {
            (0..self.order as u32)
                .all(|b| map[self.mul(a, b) as usize] == self.mul(map[a as usize], map[b as usize]))
        })
    }

    /// `x ↦ x^k` as an element-indexed map.
    pub fn power_map(&self, k: i64) -> Vec<u32> {
        (0..self.order as u32).map(|x| self.pow(x, k)).collect()
    }

    /// Shortest word for `x` over this group's generators.
    pub fn word(&self, x: u32) -> &Word {
        &self.words[x as usize]
    }

    fn element_of(&self, g: &NormalForm) -> Result<u32, GroupError> {
        match g {
            NormalForm::Finite(x) if (*x as usize) < self.order => Ok(*x),
            _ => Err(malformed(self, g)),
        }
    }

    pub fn generator_element(&self, s: Gen) -> u32 {
        let x = self.generators[s.index()];
        if s.is_inverse() {
            self.inv(x)
        } else {
            x
        }
    }
}

impl Group for FiniteGroup {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn identity(&self) -> NormalForm {
        NormalForm::Finite(0)
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.generators.len())?;
        let x = self.element_of(g)?;
        Ok(NormalForm::Finite(self.mul(x, self.generator_element(s))))
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        Ok(self.words[self.element_of(g)? as usize].clone())
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        Ok(NormalForm::Finite(self.inv(self.element_of(g)?)))
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        Ok(NormalForm::Finite(self.mul(self.element_of(g)?, self.element_of(h)?)))
    }
}
