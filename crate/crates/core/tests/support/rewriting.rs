//! Word-rewriting closures for cyclic amalgams and cyclic HNN extensions,
//! written against plain modular arithmetic.

use std::collections::{HashSet, VecDeque};

/// `cyclic(m) *_{cyclic(d)} cyclic(n)`, embedding `c ↦ c·m/d`, `c ↦ c·n/d`.
#[derive(Clone, Copy, Debug)]
pub struct CyclicAmalgam {
    pub m: u32,
    pub n: u32,
    pub d: u32,
}

/// Letter `(factor, residue)` with non-zero residue.
pub type ALetter = (u8, u32);

impl CyclicAmalgam {
    fn modulus(&self, f: u8) -> u32 {
        if f == 0 {
            self.m
        } else {
            self.n
        }
    }

    /// Residue of `x` in factor `f` as an element of `C`, if it lies there.
    fn in_c(&self, f: u8, x: u32) -> Option<u32> {
        let step = self.modulus(f) / self.d;
        (x % step == 0).then_some(x / step)
    }

    pub fn alphabet(&self) -> Vec<ALetter> {
        (1..self.m).map(|x| (0, x)).chain((1..self.n).map(|y| (1, y))).collect()
    }

    /// Generator index used by the oracle under test for a letter.
    pub fn gen_index(&self, l: ALetter) -> usize {
        if l.0 == 0 {
            l.1 as usize - 1
        } else {
            (self.m - 1 + l.1 - 1) as usize
        }
    }

    fn moves(&self, w: &[ALetter]) -> Vec<Vec<ALetter>> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            if i + 1 < w.len() && w[i].0 == w[i + 1].0 {
                let f = w[i].0;
                let x = (w[i].1 + w[i + 1].1) % self.modulus(f);
                let mut v = w[..i].to_vec();
                if x != 0 {
                    v.push((f, x));
                }
                v.extend_from_slice(&w[i + 2..]);
                out.push(v);
            }
            if let Some(c) = self.in_c(w[i].0, w[i].1) {
                let g = 1 - w[i].0;
                let mut v = w.to_vec();
                v[i] = (g, c * self.modulus(g) / self.d);
                out.push(v);
            }
        }
        out
    }

    pub fn closure(&self, w: &[ALetter]) -> HashSet<Vec<ALetter>> {
        closure(w.to_vec(), |x| self.moves(x))
    }

    /// Length of the shortest word in the closure, a lone letter from `C`
    /// counting as zero.
    pub fn ell(&self, set: &HashSet<Vec<ALetter>>) -> usize {
        set.iter()
            .map(|v| {
                if v.len() == 1 && self.in_c(v[0].0, v[0].1).is_some() {
                    0
                } else {
                    v.len()
                }
            })
            .min()
            .unwrap()
    }
}

/// HNN extension of `cyclic(m)` along the subgroup of order `d` with
/// `t c t⁻¹ = c^e`.
#[derive(Clone, Copy, Debug)]
pub struct CyclicHnn {
    pub m: u32,
    pub d: u32,
    pub e: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HLetter {
    A(u32),
    T(i8),
}

impl CyclicHnn {
    fn in_c(&self, x: u32) -> bool {
        x % (self.m / self.d) == 0
    }

    fn phi(&self, x: u32) -> u32 {
        (x * self.e) % self.m
    }

    fn phi_inv(&self, x: u32) -> u32 {
        (0..self.m).find(|&y| self.in_c(y) && self.phi(y) == x).unwrap()
    }

    pub fn alphabet(&self) -> Vec<HLetter> {
        let mut v: Vec<HLetter> = (1..self.m).map(HLetter::A).collect();
        v.push(HLetter::T(1));
        v.push(HLetter::T(-1));
        v
    }

    /// Generator of the oracle under test for a letter.
    pub fn gen(&self, l: HLetter) -> (usize, bool) {
        match l {
            HLetter::A(x) => (x as usize - 1, false),
            HLetter::T(s) => (self.m as usize - 1, s < 0),
        }
    }

    fn moves(&self, w: &[HLetter]) -> Vec<Vec<HLetter>> {
        use HLetter::*;
        let mut out = Vec::new();
        for i in 0..w.len() {
            if let (A(x), Some(A(y))) = (w[i], w.get(i + 1)) {
                let z = (x + y) % self.m;
                let mut v = w[..i].to_vec();
                if z != 0 {
                    v.push(A(z));
                }
                v.extend_from_slice(&w[i + 2..]);
                out.push(v);
            }
            if let T(s) = w[i] {
                // t^s t^-s, or t^s c t^-s with c in C.
                let (mid, j) = match w.get(i + 1) {
                    Some(A(c)) => (Some(*c), i + 2),
                    _ => (None, i + 1),
                };
                if w.get(j) == Some(&T(-s)) {
                    let c = mid.unwrap_or(0);
                    if self.in_c(c) {
                        let img = if s > 0 { self.phi(c) } else { self.phi_inv(c) };
                        let mut v = w[..i].to_vec();
                        if img != 0 {
                            v.push(A(img));
                        }
                        v.extend_from_slice(&w[j + 1..]);
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    pub fn closure(&self, w: &[HLetter]) -> HashSet<Vec<HLetter>> {
        closure(w.to_vec(), |x| self.moves(x))
    }

    /// Fewest stable letters over the closure.
    pub fn ell(&self, set: &HashSet<Vec<HLetter>>) -> usize {
        set.iter()
            .map(|v| v.iter().filter(|l| matches!(l, HLetter::T(_))).count())
            .min()
            .unwrap()
    }
}

fn closure<L, F>(start: Vec<L>, moves: F) -> HashSet<Vec<L>>
where
    L: Clone + Eq + std::hash::Hash,
    F: Fn(&[L]) -> Vec<Vec<L>>,
{
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for v in moves(&w) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// All words of length `0..=max_len` over an alphabet.
pub fn words_up_to<L: Clone>(alphabet: &[L], max_len: usize) -> Vec<Vec<L>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for l in alphabet {
                let mut v: Vec<L> = w.clone();
                v.push(l.clone());
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}
