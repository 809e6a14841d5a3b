//! Concrete models of small virtually cyclic groups, used to check group
//! oracles and coset counts independently of the ball machinery.

use std::collections::{HashMap, HashSet};

use ends_core::group_core::{Gen, Word};

/// Infinite dihedral group as affine maps `x ↦ εx + s` of `ℤ`, stored as
/// `(ε, s)`; composition applies the right factor first.
pub type Affine = (i64, i64);

pub fn affine_mul(f: Affine, g: Affine) -> Affine {
    // (f ∘ g)(x) = ε_f(ε_g x + s_g) + s_f
    (f.0 * g.0, f.0 * g.1 + f.1)
}

/// A group model: identity, generator images and multiplication.
pub trait Model {
    type E: Clone + Eq + std::hash::Hash + std::fmt::Debug;
    fn identity(&self) -> Self::E;
    fn gen(&self, s: Gen) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;

    fn eval(&self, w: &Word) -> Self::E {
        w.iter().fold(self.identity(), |x, s| self.mul(&x, &self.gen(s)))
    }
}

/// `ℤ2 * ℤ2` with `a: x ↦ −x`, `b: x ↦ 1 − x`.
pub struct DihedralAffine;

impl Model for DihedralAffine {
    type E = Affine;
    fn identity(&self) -> Affine {
        (1, 0)
    }
    fn gen(&self, s: Gen) -> Affine {
        match s.index() {
            0 => (-1, 0),
            1 => (-1, 1),
            _ => panic!("bad generator"),
        }
    }
    fn mul(&self, a: &Affine, b: &Affine) -> Affine {
        affine_mul(*a, *b)
    }
}

/// `ℤ ⋊ ℤ2` with generators `t: x ↦ x + 1` and `k: x ↦ −x`.
pub struct DihedralTk;

impl Model for DihedralTk {
    type E = Affine;
    fn identity(&self) -> Affine {
        (1, 0)
    }
    fn gen(&self, s: Gen) -> Affine {
        match (s.index(), s.is_inverse()) {
            (0, false) => (1, 1),
            (0, true) => (1, -1),
            (1, _) => (-1, 0),
            _ => panic!("bad generator"),
        }
    }
    fn mul(&self, a: &Affine, b: &Affine) -> Affine {
        affine_mul(*a, *b)
    }
}

/// `ℤ × ℤ/2`.
pub struct ZTimesC2;

impl Model for ZTimesC2 {
    type E = (i64, i64);
    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }
    fn gen(&self, s: Gen) -> (i64, i64) {
        match s.index() {
            0 => (s.sign(), 0),
            1 => (0, 1),
            _ => panic!("bad generator"),
        }
    }
    fn mul(&self, a: &(i64, i64), b: &(i64, i64)) -> (i64, i64) {
        (a.0 + b.0, (a.1 + b.1) % 2)
    }
}

/// `ℤ/n ⋊ ℤ` with `t` acting by `x ↦ kx`: `(x,p)(y,q) = (x + k^p y, p + q)`.
pub struct CyclicByZ {
    pub n: i64,
    pub k: i64,
}

impl CyclicByZ {
    fn act(&self, p: i64, y: i64) -> i64 {
        let unit = (1..self.n).find(|&u| (u * self.k).rem_euclid(self.n) == 1).unwrap_or(1);
        let base = if p >= 0 { self.k } else { unit };
        let mut y = y;
        for _ in 0..p.unsigned_abs() {
            y = (y * base).rem_euclid(self.n);
        }
        y
    }
}

impl Model for CyclicByZ {
    type E = (i64, i64);
    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }
    fn gen(&self, s: Gen) -> (i64, i64) {
        match s.index() {
            0 => ((s.sign()).rem_euclid(self.n), 0),
            1 => (0, s.sign()),
            _ => panic!("bad generator"),
        }
    }
    fn mul(&self, a: &(i64, i64), b: &(i64, i64)) -> (i64, i64) {
        ((a.0 + self.act(a.1, b.0)).rem_euclid(self.n), a.1 + b.1)
    }
}

/// Model elements reachable by words of length `≤ radius`, with their
/// word lengths.
pub fn model_ball<M: Model>(m: &M, generators: usize, radius: usize) -> HashMap<M::E, usize> {
    let mut dist = HashMap::from([(m.identity(), 0)]);
    let mut frontier = vec![m.identity()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for slot in 0..2 * generators {
                let y = m.mul(x, &m.gen(Gen::from_slot(slot)));
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Number of right cosets `⟨g⟩x` met by the model ball of `radius`,
/// deciding `y ∈ ⟨g⟩x` by trying powers `g^j`, `|j| ≤ max_power`.
pub fn coset_count<M: Model>(
    m: &M,
    generators: usize,
    g: &M::E,
    radius: usize,
    max_power: usize,
) -> usize {
    let ball = model_ball(m, generators, radius);
    let mut powers = vec![m.identity()];
    let mut x = m.identity();
    for _ in 0..max_power {
        x = m.mul(&x, g);
        powers.push(x.clone());
    }
    // Negative powers: find g⁻¹ in a larger ball.
    let big = model_ball(m, generators, 4 * radius);
    let g_inv = big
        .keys()
        .find(|h| m.mul(g, h) == m.identity())
        .expect("inverse within reach")
        .clone();
    let mut y = m.identity();
    for _ in 0..max_power {
        y = m.mul(&y, &g_inv);
        powers.push(y.clone());
    }
    let mut elements: Vec<&M::E> = ball.keys().collect();
    elements.sort_by_key(|e| format!("{e:?}"));
    let mut reps: Vec<M::E> = Vec::new();
    let mut covered: HashSet<M::E> = HashSet::new();
    for x in elements {
        if covered.contains(x) {
            continue;
        }
        reps.push(x.clone());
        for p in &powers {
            covered.insert(m.mul(p, x));
        }
    }
    reps.len()
}
