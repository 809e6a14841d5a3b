use std::collections::HashSet;

use super::AnalysisError;
use crate::graph_build::{build_ball, BallGraph, CayleyGraph};
use crate::group_core::{Gen, Group, NormalForm, Oracle};

pub fn central_infinite_order_search(
    group: &Oracle,
    big_r: u32,
    budget: usize,
) -> Result<Option<NormalForm>, AnalysisError> {
    if big_r < 4 {
        return Err(AnalysisError::Margin(format!(
            "central search needs R >= 4, got {big_r}"
        )));
    }
    let ball = build_ball(&CayleyGraph::new(group.clone()), big_r, budget)?;
    central_search_on_ball(group.as_ref(), &ball)
}

/// First element in ball order that commutes with every generator and
/// whose powers `g, …, g^⌊R/|g|⌋` are distinct and non-trivial.
pub fn central_search_on_ball(
    group: &dyn Group,
    ball: &BallGraph,
) -> Result<Option<NormalForm>, AnalysisError> {
    let big_r = ball.radius();
    let gens: Vec<NormalForm> = (0..group.generator_count())
        .map(|i| group.generator(Gen::pos(i)))
        .collect::<Result<_, _>>()?;
    'candidates: for v in ball.level(1).start..ball.len() {
        let g = ball.vertex(v);
        for (i, s) in gens.iter().enumerate() {
            if group.multiply(g, Gen::pos(i))? != group.product(s, g)? {
                continue 'candidates;
            }
        }
        let steps = big_r / ball.norm(v);
        let mut seen = HashSet::from([group.identity()]);
        let mut x = group.identity();
        for _ in 0..steps {
            x = group.product(&x, g)?;
            if !seen.insert(x.clone()) {
                continue 'candidates;
            }
        }
        return Ok(Some(g.clone()));
    }
    Ok(None)
}
