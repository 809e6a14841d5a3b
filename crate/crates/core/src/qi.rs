//! Changes of generating set and the identity map between the two word
//! metrics.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ends_analysis::{ends_profile, AnalysisError, Classification, EndsProfile};
use crate::graph_build::{build_ball, CayleyGraph, GraphError, RootedGraph};
use crate::group_core::{check_gen, malformed, Gen, Group, GroupError, NormalForm, Oracle, Word};

/// Longest word searched when expressing old generators in the new ones.
pub const SEARCH_LENGTH_BOUND: u32 = 12;
const SEARCH_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QiError {
    #[error("new generators do not generate: {0} not reached within length {1}")]
    NotGenerating(String, u32),
    #[error("empty generating set")]
    Empty,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// The group of `base` with a new generating set. Payloads are unchanged.
pub struct GeneratingSetChange {
    base: Oracle,
    /// Each new generator as given, over the old generators.
    new_gens: Vec<Word>,
    /// Shortest word over the old generators for each new generator.
    new_in_old: Vec<Word>,
    /// Shortest word over the new generators for each old generator.
    old_in_new: Vec<Word>,
}

pub fn change_generators(base: Oracle, new_gens: Vec<Word>) -> Result<GeneratingSetChange, QiError> {
    if new_gens.is_empty() && base.generator_count() > 0 {
        return Err(QiError::Empty);
    }
    for w in &new_gens {
        for s in w.iter() {
            check_gen(s, base.generator_count())?;
        }
    }
    let mut change = GeneratingSetChange {
        base: base.clone(),
        new_gens,
        new_in_old: Vec::new(),
        old_in_new: Vec::new(),
    };
    let targets: Vec<NormalForm> = change
        .new_gens
        .iter()
        .map(|w| base.canonical(w))
        .collect::<Result<_, _>>()?;
    change.new_in_old = geodesic_words(base.as_ref(), &targets, u32::MAX)?
        .into_iter()
        .zip(&change.new_gens)
        .map(|(w, given)| w.unwrap_or_else(|| given.clone()))
        .collect();
    let old: Vec<NormalForm> = (0..base.generator_count())
        .map(|i| base.generator(Gen::pos(i)))
        .collect::<Result<_, _>>()?;
    let found = geodesic_words(&change, &old, SEARCH_LENGTH_BOUND)?;
    change.old_in_new = found
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| QiError::NotGenerating(base.generator_names()[i].clone(), SEARCH_LENGTH_BOUND))
        })
        .collect::<Result<_, _>>()?;
    Ok(change)
}

/// Shortest words (first in BFS label order) reaching each target, searched
/// up to `max_len`; targets longer than a word of length `max_len` or
/// outside the search budget stay `None`.
fn geodesic_words(
    group: &dyn Group,
    targets: &[NormalForm],
    max_len: u32,
) -> Result<Vec<Option<Word>>, QiError> {
    let mut out: Vec<Option<Word>> = vec![None; targets.len()];
    let mut remaining = targets.len();
    let mut parent: HashMap<NormalForm, Option<(NormalForm, Gen)>> = HashMap::new();
    parent.insert(group.identity(), None);
    let mut frontier = vec![group.identity()];
    let mut depth = 0;
    let trace = |parent: &HashMap<NormalForm, Option<(NormalForm, Gen)>>, mut x: NormalForm| {
        let mut letters = Vec::new();
        while let Some(Some((p, s))) = parent.get(&x) {
            letters.push(*s);
            x = p.clone();
        }
        letters.reverse();
        Word::new(letters)
    };
    loop {
        for (i, t) in targets.iter().enumerate() {
            if out[i].is_none() && parent.contains_key(t) {
                out[i] = Some(trace(&parent, t.clone()));
                remaining -= 1;
            }
        }
        if remaining == 0 || depth >= max_len || frontier.is_empty() || parent.len() > SEARCH_BUDGET {
            return Ok(out);
        }
        let mut next = Vec::new();
        for x in &frontier {
            for slot in 0..2 * group.generator_count() {
                let s = Gen::from_slot(slot);
                let y = group.multiply(x, s)?;
                if !parent.contains_key(&y) {
                    parent.insert(y.clone(), Some((x.clone(), s)));
                    next.push(y);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
}

impl GeneratingSetChange {
    pub fn base(&self) -> &Oracle {
        &self.base
    }

    pub fn new_generators(&self) -> &[Word] {
        &self.new_gens
    }

    pub fn new_in_old(&self) -> &[Word] {
        &self.new_in_old
    }

    pub fn old_in_new(&self) -> &[Word] {
        &self.old_in_new
    }

    pub fn into_oracle(self) -> Oracle {
        Arc::new(self)
    }
}

impl Group for GeneratingSetChange {
    fn name(&self) -> String {
        let gens: Vec<String> = self.new_gens.iter().map(|w| w.to_string()).collect();
        format!("gens({}, [{}])", self.base.name(), gens.join(", "))
    }

    fn generator_count(&self) -> usize {
        self.new_gens.len()
    }

    fn identity(&self) -> NormalForm {
        self.base.identity()
    }

    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError> {
        check_gen(s, self.new_gens.len())?;
        let w = &self.new_gens[s.index()];
        let mut x = g.clone();
        if s.is_inverse() {
            for t in w.iter().rev() {
                x = self.base.multiply(&x, t.inv())?;
            }
        } else {
            for t in w.iter() {
                x = self.base.multiply(&x, t)?;
            }
        }
        Ok(x)
    }

    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError> {
        if self.old_in_new.is_empty() && self.base.generator_count() > 0 {
            return Err(malformed(self, g));
        }
        let mut out = Word::empty();
        for s in self.base.word_of(g)?.iter() {
            let w = &self.old_in_new[s.index()];
            let w = if s.is_inverse() { w.inverse() } else { w.clone() };
            for t in w.iter() {
                out.push(t);
            }
        }
        Ok(out)
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        self.base.inverse(g)
    }

    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        self.base.product(g, h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QiConstants {
    pub lambda: f64,
    pub epsilon: f64,
}

/// `λ` is the longest entry of either translation table, `ε = 0`.
pub fn qi_constants(change: &GeneratingSetChange) -> QiConstants {
    let longest = change
        .new_in_old
        .iter()
        .chain(&change.old_in_new)
        .map(|w| w.len())
        .max()
        .unwrap_or(1)
        .max(1);
    QiConstants {
        lambda: longest as f64,
        epsilon: 0.0,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QiViolation {
    pub element: NormalForm,
    pub old_norm: u32,
    pub new_norm: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QiCertificate {
    pub constants: QiConstants,
    pub radius: u32,
    pub checked: usize,
    pub violations: Vec<QiViolation>,
}

/// Checks `d/λ − ε ≤ d′ ≤ λd + ε` for every `z` in the radius-`radius`
/// balls of both metrics. By left invariance this covers every pair
/// `(x, xz)` at distance `≤ radius` in either metric.
pub fn certify_qi(
    change: &GeneratingSetChange,
    constants: QiConstants,
    radius: u32,
    budget: usize,
) -> Result<QiCertificate, QiError> {
    let reach = (radius as f64 * constants.lambda + constants.epsilon).ceil() as u32;
    let old = build_ball(&CayleyGraph::new(change.base.clone()), reach, budget)?;
    let new = build_ball(&ChangedCayley(change), reach, budget)?;
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut visit = |z: &NormalForm| {
        checked += 1;
        let d = old.norm_of(z);
        let d2 = new.norm_of(z);
        let ok = match (d, d2) {
            (Some(d), Some(d2)) => {
                let (d, d2) = (d as f64, d2 as f64);
                let (l, e) = (constants.lambda, constants.epsilon);
                d / l - e <= d2 && d2 <= l * d + e && d2 / l - e <= d && d <= l * d2 + e
            }
            _ => false,
        };
        if !ok {
            violations.push(QiViolation {
                element: z.clone(),
                old_norm: d.unwrap_or(u32::MAX),
                new_norm: d2.unwrap_or(u32::MAX),
            });
        }
    };
    for i in 0..old.level(radius).end {
        visit(old.vertex(i));
    }
    for i in 0..new.level(radius).end {
        if old.norm_of(new.vertex(i)).map_or(true, |d| d > radius) {
            visit(new.vertex(i));
        }
    }
    Ok(QiCertificate {
        constants,
        radius,
        checked,
        violations,
    })
}

struct ChangedCayley<'a>(&'a GeneratingSetChange);

impl RootedGraph for ChangedCayley<'_> {
    fn name(&self) -> String {
        self.0.name()
    }

    fn root(&self) -> NormalForm {
        self.0.identity()
    }

    fn label_count(&self) -> usize {
        self.0.generator_count()
    }

    fn label_names(&self) -> Vec<String> {
        self.0.generator_names()
    }

    fn neighbors(&self, v: &NormalForm) -> Result<Vec<(Gen, NormalForm)>, GroupError> {
        (0..2 * self.0.generator_count())
            .map(|slot| {
                let s = Gen::from_slot(slot);
                Ok((s, self.0.multiply(v, s)?))
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Equal,
    NotEqual,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileParams {
    pub r_max: u32,
    pub big_r_max: u32,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub agreement: Agreement,
    pub first: EndsProfile,
    pub second: EndsProfile,
}

/// Compares classifications and stable values; an inconclusive side makes
/// the comparison inconclusive.
pub fn compare_end_classification(
    first: &dyn RootedGraph,
    second: &dyn RootedGraph,
    first_params: &ProfileParams,
    second_params: &ProfileParams,
) -> Result<Comparison, QiError> {
    let a = ends_profile(first, first_params.r_max, first_params.big_r_max, first_params.budget)?;
    let b = ends_profile(second, second_params.r_max, second_params.big_r_max, second_params.budget)?;
    let agreement = if a.classification == Classification::Inconclusive
        || b.classification == Classification::Inconclusive
    {
        Agreement::Inconclusive
    } else if a.classification == b.classification && a.stable_e == b.stable_e {
        Agreement::Equal
    } else {
        Agreement::NotEqual
    };
    Ok(Comparison {
        agreement,
        first: a,
        second: b,
    })
}
