use super::{annulus_components, AnalysisError};
use crate::graph_build::{build_ball, BallGraph, CayleyGraph};
use crate::group_core::{Group, NormalForm, Oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeReport {
    pub verdict: Verdict,
    pub r: u32,
    pub big_r: u32,
    /// An element `v` in the same touching component as `v⁻¹`; an
    /// involution when one exists.
    pub inverse_witness: Option<NormalForm>,
    pub witness_is_involution: bool,
    /// `(v, v', vv')` with `v, v'` in one touching component and `vv'`
    /// either inside `B(r)` or in another component.
    pub product_witness: Option<(NormalForm, NormalForm, NormalForm)>,
    pub inverses_checked: usize,
    pub products_checked: usize,
}

const SAMPLES_PER_LEVEL: usize = 1;

pub fn multiplicative_ends_test(
    group: &Oracle,
    r: u32,
    big_r: u32,
    budget: usize,
) -> Result<MultiplicativeReport, AnalysisError> {
    check(r, big_r)?;
    let ball = build_ball(&CayleyGraph::new(group.clone()), big_r, budget)?;
    multiplicative_ends_test_on_ball(group.as_ref(), &ball, r)
}

fn check(r: u32, big_r: u32) -> Result<(), AnalysisError> {
    if big_r < 2 * r + 4 {
        return Err(AnalysisError::Margin(format!(
            "multiplicative test needs R >= 2r + 4 (got r={r}, R={big_r})"
        )));
    }
    Ok(())
}

/// Checks that no annulus vertex shares a touching component with its
/// inverse, and spot-checks closure of each touching component under
/// products.
pub fn multiplicative_ends_test_on_ball(
    group: &dyn Group,
    ball: &BallGraph,
    r: u32,
) -> Result<MultiplicativeReport, AnalysisError> {
    let big_r = ball.radius();
    check(r, big_r)?;
    let partition = annulus_components(ball, r)?;
    let lo = ball.level(r + 1).start;
    let mut best: Option<(bool, usize)> = None;
    let mut inverses_checked = 0;
    for v in lo..ball.len() {
        let Some(k) = partition.touching_index_of(v) else { continue };
        inverses_checked += 1;
        let inv = group.inverse(ball.vertex(v))?;
        let j = ball
            .index_of(&inv)
            .ok_or_else(|| AnalysisError::Inconsistent(format!("inverse {inv} left the ball")))?;
        if partition.touching_index_of(j) == Some(k) {
            let involution = j == v;
            let better = match best {
                None => true,
                Some((inv_before, _)) => involution && !inv_before,
            };
            if better {
                best = Some((involution, v));
            }
        }
    }

    let mut samples: Vec<Vec<usize>> = vec![Vec::new(); partition.touching_count()];
    for level in r + 1..=big_r / 2 {
        let mut taken = vec![0usize; samples.len()];
        for v in ball.level(level) {
            if let Some(k) = partition.touching_index_of(v) {
                if taken[k] < SAMPLES_PER_LEVEL {
                    taken[k] += 1;
                    samples[k].push(v);
                }
            }
        }
    }
    let mut product_witness = None;
    let mut products_checked = 0;
    'outer: for (k, sample) in samples.iter().enumerate() {
        for &v in sample {
            for &w in sample {
                if ball.norm(v) + ball.norm(w) > big_r {
                    continue;
                }
                products_checked += 1;
                let p = group.product(ball.vertex(v), ball.vertex(w))?;
                let same = ball
                    .index_of(&p)
                    .and_then(|i| partition.touching_index_of(i))
                    == Some(k);
                if !same {
                    product_witness = Some((ball.vertex(v).clone(), ball.vertex(w).clone(), p));
                    break 'outer;
                }
            }
        }
    }

    let verdict = if best.is_none() && product_witness.is_none() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(MultiplicativeReport {
        verdict,
        r,
        big_r,
        inverse_witness: best.map(|(_, v)| ball.vertex(v).clone()),
        witness_is_involution: best.is_some_and(|(i, _)| i),
        product_witness,
        inverses_checked,
        products_checked,
    })
}
