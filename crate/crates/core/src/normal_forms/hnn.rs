use std::sync::Arc;

use super::amalgam::{coset_split, first_of_order};
use crate::group_core::{
    check_gen, malformed, FiniteGroup, Gen, Group, GroupError, HnnForm, NormalForm, Word,
};

/// HNN extension of a finite group `A` along an isomorphism `φ: C1 → C2`,
/// with stable letter `t` and relations `t c t⁻¹ = φ(c)` for `c ∈ C1`.
#[derive(Clone, Debug)]
pub struct HnnSpec {
    pub a: Arc<FiniteGroup>,
    pub c1: Vec<u32>,
    pub c2: Vec<u32>,
    /// Pairs `(c, φ(c))`.
    pub phi: Vec<(u32, u32)>,
}

impl HnnSpec {
    /// `cyclic(m)` with `C1 = C2` the subgroup of order `d` and `φ(c) = c^e`.
    pub fn cyclic(m: usize, d: usize, e: i64) -> Result<Self, GroupError> {
        if d == 0 || m % d != 0 {
            return Err(GroupError::Validation(format!("{d} does not divide {m}")));
        }
        Self::with_power_map(Arc::new(FiniteGroup::cyclic(m)), d, e)
    }

    /// `C1 = C2` generated by the smallest-index element of order `d`, and
    /// `φ` the `e`-th power map on it.
    pub fn with_power_map(a: Arc<FiniteGroup>, d: usize, e: i64) -> Result<Self, GroupError> {
        let g = first_of_order(&a, d)?;
        let c: Vec<u32> = a.generated_subgroup(&[g]);
        let phi = c.iter().map(|&x| (x, a.pow(x, e))).collect();
        let spec = HnnSpec {
            a,
            c1: c.clone(),
            c2: c,
            phi,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let err = |m: &str| GroupError::Validation(format!("hnn: {m}"));
        let a = &self.a;
        if !a.is_subgroup(&self.c1) || !a.is_subgroup(&self.c2) {
            return Err(err("associated sets must be subgroups"));
        }
        if self.c1.len() != self.c2.len() || self.phi.len() != self.c1.len() {
            return Err(err("phi must be a bijection C1 -> C2"));
        }
        let mut map = vec![u32::MAX; a.order()];
        let mut hit = vec![false; a.order()];
        for &(x, y) in &self.phi {
            if !self.c1.contains(&x) || !self.c2.contains(&y) {
                return Err(err("phi leaves its domain or codomain"));
            }
            if map[x as usize] != u32::MAX || hit[y as usize] {
                return Err(err("phi is not a bijection"));
            }
            map[x as usize] = y;
            hit[y as usize] = true;
        }
        for &x in &self.c1 {
            for &y in &self.c1 {
                if map[a.mul(x, y) as usize] != a.mul(map[x as usize], map[y as usize]) {
                    return Err(err("phi is not a homomorphism"));
                }
            }
        }
        Ok(())
    }
}

/// Oracle for an HNN extension. Generators are the non-identity elements of
/// `A`, then `t`; payloads are Britton normal forms.
pub struct HnnExtension {
    spec: HnnSpec,
    phi: Vec<u32>,
    phi_inv: Vec<u32>,
    /// `[split by C1, split by C2]`: element ↦ (element of the subgroup, rep).
    split: [Vec<(u32, u32)>; 2],
    label: String,
}

impl HnnExtension {
    pub fn new(spec: HnnSpec) -> Result<Self, GroupError> {
        spec.validate()?;
        let n = spec.a.order();
        let mut phi = vec![u32::MAX; n];
        let mut phi_inv = vec![u32::MAX; n];
        for &(x, y) in &spec.phi {
            phi[x as usize] = y;
            phi_inv[y as usize] = x;
        }
        let split = [coset_split(&spec.a, &spec.c1), coset_split(&spec.a, &spec.c2)];
        let label = format!("hnn({}, {})", spec.a.name(), spec.c1.len());
        Ok(HnnExtension {
            spec,
            phi,
            phi_inv,
            split,
            label,
        })
    }

    pub fn spec(&self) -> &HnnSpec {
        &self.spec
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn t(&self) -> Gen {
        Gen::pos(self.spec.a.order() - 1)
    }

    /// Generator symbol for a non-identity element of `A`.
    pub fn letter(&self, x: u32) -> Gen {
        assert!(x != 0, "identity is not a generator");
        Gen::pos(x as usize - 1)
    }

    fn form<'a>(&self, g: &'a NormalForm) -> Result<&'a HnnForm, GroupError> {
        match g {
            NormalForm::Hnn(h) => Ok(h),
            _ => Err(malformed(self, g)),
        }
    }

    fn side(eps: i8) -> usize {
        if eps > 0 {
            0
        } else {
            1
        }
    }

    fn mul_element(&self, form: &HnnForm, x: u32) -> HnnForm {
        let a = &self.spec.a;
        let mut syl = form.syllables.clone();
        let Some(&(e, g)) = syl.last() else {
            return HnnForm {
                head: a.mul(form.head, x),
                syllables: syl,
            };
        };
        let (mut c, rep) = self.split[Self::side(e)][a.mul(g, x) as usize];
        let last = syl.len() - 1;
        syl[last] = (e, rep);
        let mut head = form.head;
        let mut j = last;
        loop {
            // t^ε c = ψ(c) t^ε
            let eps = syl[j].0;
            c = if eps > 0 {
                self.phi[c as usize]
            } else {
                self.phi_inv[c as usize]
            };
            if j == 0 {
                head = a.mul(head, c);
                break;
            }
            let (e2, g2) = syl[j - 1];
            let (c2, r2) = self.split[Self::side(e2)][a.mul(g2, c) as usize];
            syl[j - 1] = (e2, r2);
            c = c2;
            j -= 1;
        }
        HnnForm {
            head,
            syllables: syl,
        }
    }

    fn mul_stable(&self, form: &HnnForm, eps: i8) -> HnnForm {
        let mut syl = form.syllables.clone();
        match syl.last() {
            Some(&(e, 0)) if e == -eps => {
                syl.pop();
            }
            _ => syl.push((eps, 0)),
        }
        HnnForm {
            head: form.head,
            syllables: syl,
        }
    }

    pub fn reduce(&self, w: &Word) -> Result<HnnForm, GroupError> {
        match self.canonical(w)? {
            NormalForm::Hnn(h) => Ok(h),
            _ => unreachable!(),
        }
    }
}

impl Group for HnnExtension {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn generator_count(&self) -> usize {
        self.spec.a.order()
    }

    fn generator_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..self.spec.a.order()).map(|x| format!("x{x}")).collect();
        names.push("t".into());
        names
    }

    fn identity(&self) -> NormalForm {
        NormalForm::Hnn(HnnForm {
            head: 0,
            syllables: Vec::new(),
        })
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.generator_count())?;
        let form = self.form(g)?;
        let next = if s.index() == self.t().index() {
            self.mul_stable(form, s.sign() as i8)
        } else {
            let x = s.index() as u32 + 1;
            let x = if s.is_inverse() { self.spec.a.inv(x) } else { x };
            self.mul_element(form, x)
        };
        Ok(NormalForm::Hnn(next))
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        let form = self.form(g)?;
        let mut w = Word::empty();
        if form.head != 0 {
            w.push(self.letter(form.head));
        }
        for &(e, x) in &form.syllables {
            w.push(if e > 0 { self.t() } else { self.t().inv() });
            if x != 0 {
                w.push(self.letter(x));
            }
        }
        Ok(w)
    }
}
