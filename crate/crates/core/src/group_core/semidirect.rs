use std::sync::Arc;

use super::oracle::{check_gen, malformed};
use super::{FiniteGroup, Gen, Group, GroupError, NormalForm, Word};

/// `K ⋊ ℤ` for finite `K` and an automorphism `φ`: elements `(k, n)` with
/// `(k,n)(k',n') = (k·φⁿ(k'), n+n')`. Generators are those of `K`, then `t`.
pub struct SemidirectFiniteByZ {
    kernel: Arc<FiniteGroup>,
    /// `powers[i] = φ^i` for `i` in `0..period`.
    powers: Vec<Vec<u32>>,
    label: String,
}

impl SemidirectFiniteByZ {
    pub fn new(kernel: Arc<FiniteGroup>, action: Vec<u32>) -> Result<Self, GroupError> {
        if !kernel.is_automorphism(&action) {
            return Err(GroupError::Validation(format!(
                "action is not an automorphism of {}",
                kernel.name()
            )));
        }
        let identity: Vec<u32> = (0..kernel.order() as u32).collect();
        let mut powers = vec![identity.clone()];
        loop {
            let last = powers.last().unwrap();
            let next: Vec<u32> = last.iter().map(|&x| action[x as usize]).collect();
            if next == identity {
                break;
            }
            powers.push(next);
        }
        let label = format!("semidirect_fz({}, {:?})", kernel.name(), action);
        Ok(SemidirectFiniteByZ {
            kernel,
            powers,
            label,
        })
    }

    /// Power map `x ↦ x^k`; must be an automorphism (a unit for cyclic `K`).
    pub fn with_power(kernel: Arc<FiniteGroup>, k: i64) -> Result<Self, GroupError> {
        let map = kernel.power_map(k);
        let mut g = SemidirectFiniteByZ::new(kernel, map)?;
        g.label = format!("semidirect_fz({}, {k})", g.kernel.name());
        Ok(g)
    }

    pub fn kernel(&self) -> &FiniteGroup {
        &self.kernel
    }

    /// Order of the automorphism.
    pub fn period(&self) -> usize {
        self.powers.len()
    }

    fn act(&self, n: i64, k: u32) -> u32 {
        let i = n.rem_euclid(self.powers.len() as i64) as usize;
        self.powers[i][k as usize]
    }

    fn parts(&self, g: &NormalForm) -> Result<(u32, i64), GroupError> {
        match g.as_pair() {
            Some((NormalForm::Finite(k), NormalForm::Ints(n)))
                if n.len() == 1 && (*k as usize) < self.kernel.order() =>
            {
                Ok((*k, n[0]))
            }
            _ => Err(malformed(self, g)),
        }
    }

    fn form(k: u32, n: i64) -> NormalForm {
        NormalForm::pair(NormalForm::Finite(k), NormalForm::Ints(vec![n]))
    }

    fn t_index(&self) -> usize {
        self.kernel.generator_count()
    }
}

impl Group for SemidirectFiniteByZ {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn generator_count(&self) -> usize {
        self.kernel.generator_count() + 1
    }

    fn generator_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.t_index()).map(super::generator_name).collect();
        names.push("t".into());
        names
    }

    fn identity(&self) -> NormalForm {
        Self::form(0, 0)
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.generator_count())?;
        let (k, n) = self.parts(g)?;
        if s.index() == self.t_index() {
            Ok(Self::form(k, n + s.sign()))
        } else {
            let x = self.kernel.generator_element(s);
            Ok(Self::form(self.kernel.mul(k, self.act(n, x)), n))
        }
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        let (k, n) = self.parts(g)?;
        let mut w = self.kernel.word(k).clone();
        for _ in 0..n.unsigned_abs() {
            w.push(Gen::new(self.t_index(), n < 0));
        }
        Ok(w)
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        let (k, n) = self.parts(g)?;
        let (k2, n2) = self.parts(h)?;
        Ok(Self::form(self.kernel.mul(k, self.act(n, k2)), n + n2))
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        // (k,n)⁻¹ = (φ^{-n}(k⁻¹), -n)
        let (k, n) = self.parts(g)?;
        Ok(Self::form(self.act(-n, self.kernel.inv(k)), -n))
    }
}

/// `ℤ ⋊ K` for finite `K` acting on `ℤ` through a sign character `σ`:
/// elements `(n, k)` with `(n,k)(n',k') = (n + σ(k)n', kk')`. Generators are
/// `t`, then those of `K`.
pub struct SemidirectZByFinite {
    kernel: Arc<FiniteGroup>,
    signs: Vec<i64>,
}

impl SemidirectZByFinite {
    pub fn new(kernel: Arc<FiniteGroup>, signs: Vec<i64>) -> Result<Self, GroupError> {
        let n = kernel.order();
        let ok = signs.len() == n
            && signs.iter().all(|&s| s == 1 || s == -1)
            && (0..n as u32).all(|a| {
                (0..n as u32).all(|b| {
                    signs[kernel.mul(a, b) as usize] == signs[a as usize] * signs[b as usize]
                })
            });
        if !ok {
            return Err(GroupError::Validation(format!(
                "action of {} on Z is not a homomorphism to {{±1}}",
                kernel.name()
            )));
        }
        Ok(SemidirectZByFinite { kernel, signs })
    }

    /// First non-trivial sign character in the order that enumerates sign
    /// assignments to the generators of `K` (last generator varying fastest),
    /// or the trivial one if `K` has none.
    pub fn default_action(kernel: &FiniteGroup) -> Vec<i64> {
        let gens = kernel.generators().to_vec();
        let n = kernel.order();
        let trivial = vec![1i64; n];
        for mask in 1u64..(1u64 << gens.len().min(20)) {
            let mut signs = vec![0i64; n];
            signs[0] = 1;
            let mut stack = vec![0u32];
            let mut consistent = true;
            while let Some(x) = stack.pop() {
                for (i, &g) in gens.iter().enumerate() {
                    let bit = (mask >> (gens.len() - 1 - i)) & 1;
                    let sg = if bit == 1 { -1 } else { 1 };
                    for (y, sy) in [(kernel.mul(x, g), sg), (kernel.mul(x, kernel.inv(g)), sg)] {
                        let want = signs[x as usize] * sy;
                        if signs[y as usize] == 0 {
                            signs[y as usize] = want;
                            stack.push(y);
                        } else if signs[y as usize] != want {
                            consistent = false;
                        }
                    }
                }
            }
            if consistent {
                let hom = (0..n as u32).all(|a| {
                    (0..n as u32).all(|b| {
                        signs[kernel.mul(a, b) as usize] == signs[a as usize] * signs[b as usize]
                    })
                });
                if hom {
                    return signs;
                }
            }
        }
        trivial
    }

    fn parts(&self, g: &NormalForm) -> Result<(i64, u32), GroupError> {
        match g.as_pair() {
            Some((NormalForm::Ints(n), NormalForm::Finite(k)))
                if n.len() == 1 && (*k as usize) < self.kernel.order() =>
            {
                Ok((n[0], *k))
            }
            _ => Err(malformed(self, g)),
        }
    }

    fn form(n: i64, k: u32) -> NormalForm {
        NormalForm::pair(NormalForm::Ints(vec![n]), NormalForm::Finite(k))
    }
}

impl Group for SemidirectZByFinite {
    fn name(&self) -> String {
        format!("semidirect_zf({})", self.kernel.name())
    }

    fn generator_count(&self) -> usize {
        self.kernel.generator_count() + 1
    }

    fn identity(&self) -> NormalForm {
        Self::form(0, 0)
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.generator_count())?;
        let (n, k) = self.parts(g)?;
        if s.index() == 0 {
            Ok(Self::form(n + self.signs[k as usize] * s.sign(), k))
        } else {
            let x = self
                .kernel
                .generator_element(Gen::new(s.index() - 1, s.is_inverse()));
            Ok(Self::form(n, self.kernel.mul(k, x)))
        }
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        let (n, k) = self.parts(g)?;
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w.push(Gen::new(0, n < 0));
        }
        for s in self.kernel.word(k).iter() {
            w.push(Gen::new(s.index() + 1, s.is_inverse()));
        }
        Ok(w)
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        let (n, k) = self.parts(g)?;
        let (n2, k2) = self.parts(h)?;
        Ok(Self::form(n + self.signs[k as usize] * n2, self.kernel.mul(k, k2)))
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        // (n,k)⁻¹ = (-σ(k⁻¹)n, k⁻¹)
        let (n, k) = self.parts(g)?;
        let ki = self.kernel.inv(k);
        Ok(Self::form(-self.signs[ki as usize] * n, ki))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn infinite_dihedral() -> SemidirectZByFinite {
        let k = Arc::new(FiniteGroup::cyclic(2));
        let signs = SemidirectZByFinite::default_action(&k);
        SemidirectZByFinite::new(k, signs).unwrap()
    }

    #[test]
    fn reflection_squares_to_identity() {
        let d = infinite_dihedral();
        let lk = SemidirectZByFinite::form(1, 1);
        assert_eq!(d.product(&lk, &lk).unwrap(), d.identity());
        let x = SemidirectZByFinite::form(3, 0);
        let y = SemidirectZByFinite::form(-5, 0);
        assert_eq!(d.product(&x, &y).unwrap(), SemidirectZByFinite::form(-2, 0));
    }

    #[test]
    fn rejects_non_character() {
        let k = Arc::new(FiniteGroup::cyclic(3));
        assert!(SemidirectZByFinite::new(k.clone(), vec![1, -1, -1]).is_err());
        assert_eq!(SemidirectZByFinite::default_action(&k), vec![1, 1, 1]);
    }

    #[test]
    fn inversion_twist() {
        let k = Arc::new(FiniteGroup::cyclic(3));
        let g = SemidirectFiniteByZ::with_power(k.clone(), 2).unwrap();
        assert_eq!(g.period(), 2);
        // x t x t⁻¹ = x·φ(x) = x·x² = 1
        let w: Word = "abaB".parse().unwrap();
        assert_eq!(g.canonical(&w).unwrap(), g.identity());
        assert!(SemidirectFiniteByZ::with_power(k, 3).is_err());
    }
}
