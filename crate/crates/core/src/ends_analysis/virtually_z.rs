use super::{annulus_components, end_action_on, AnalysisError, ComponentPartition, UnionFind};
use crate::graph_build::{build_ball, BallGraph, CayleyGraph};
use crate::group_core::{Group, NormalForm, Oracle};

pub const SEARCH_NORM_BOUND: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtuallyZWitness {
    pub element: NormalForm,
    pub element_norm: u32,
    /// Touching index of the component `V` with `gV ⊆ V`.
    pub component: usize,
    /// Number of right cosets `⟨g⟩x` met by `B(⌊R/2⌋)`.
    pub index_estimate: usize,
    /// Payload-minimal element of each such coset, in ball order.
    pub coset_representatives: Vec<NormalForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtuallyZSearch {
    pub witness: Option<VirtuallyZWitness>,
    pub candidates_tried: usize,
    pub diagnostics: Vec<String>,
}

pub fn virtually_z_witness(
    group: &Oracle,
    r: u32,
    big_r: u32,
    budget: usize,
) -> Result<VirtuallyZSearch, AnalysisError> {
    let ball = build_ball(&CayleyGraph::new(group.clone()), big_r, budget)?;
    virtually_z_witness_on_ball(group.as_ref(), &ball, r)
}

/// Searches `g` with `1 ≤ |g| ≤ min(4, (R−r−1)/2)` that fixes both touching
/// components, maps one of them strictly into itself, and whose cyclic
/// subgroup has a stable number of cosets in the ball. Returns the
/// candidate of smallest index, ties broken by ball order.
pub fn virtually_z_witness_on_ball(
    group: &dyn Group,
    ball: &BallGraph,
    r: u32,
) -> Result<VirtuallyZSearch, AnalysisError> {
    let big_r = ball.radius();
    let partition = annulus_components(ball, r)?;
    let mut diagnostics = Vec::new();
    if partition.touching_count() != 2 {
        diagnostics.push(format!(
            "{} touching components at (r={r}, R={big_r}); a witness needs exactly 2",
            partition.touching_count()
        ));
        return Ok(VirtuallyZSearch {
            witness: None,
            candidates_tried: 0,
            diagnostics,
        });
    }
    let bound = SEARCH_NORM_BOUND.min(big_r.saturating_sub(r + 1) / 2);
    if bound == 0 {
        diagnostics.push(format!("no room for candidates at (r={r}, R={big_r})"));
    }
    let mut best: Option<VirtuallyZWitness> = None;
    let mut tried = 0;
    for level in 1..=bound {
        for c in ball.level(level) {
            tried += 1;
            let g = ball.vertex(c);
            if let Some(w) = try_candidate(group, ball, &partition, g, level)? {
                if best.as_ref().map_or(true, |b| w.index_estimate < b.index_estimate) {
                    best = Some(w);
                }
            }
        }
    }
    if best.is_none() {
        diagnostics.push(format!("no candidate among {tried} elements of norm <= {bound}"));
    }
    Ok(VirtuallyZSearch {
        witness: best,
        candidates_tried: tried,
        diagnostics,
    })
}

fn try_candidate(
    group: &dyn Group,
    ball: &BallGraph,
    partition: &ComponentPartition,
    g: &NormalForm,
    norm: u32,
) -> Result<Option<VirtuallyZWitness>, AnalysisError> {
    let big_r = ball.radius();
    let action = end_action_on(ball, partition, group, g)?;
    if !action.fixes_all {
        return Ok(None);
    }
    let g_inv = group.inverse(g)?;
    let limit = big_r - norm;
    let mut component = None;
    'components: for k in 0..partition.touching_count() {
        let c = partition.touching()[k];
        let mut strict = false;
        for v in partition.members(c) {
            if ball.norm(v) > limit {
                continue;
            }
            let x = ball.vertex(v);
            let in_v = |y: &NormalForm| {
                ball.index_of(y).and_then(|i| partition.component_of(i)) == Some(c)
            };
            if !in_v(&group.product(g, x)?) {
                continue 'components;
            }
            if !strict && !in_v(&group.product(&g_inv, x)?) {
                strict = true;
            }
        }
        if strict {
            component = Some(k);
            break;
        }
    }
    let Some(component) = component else { return Ok(None) };

    let mut uf = UnionFind::new(ball.len());
    for v in 0..ball.level(limit).end {
        let y = group.product(g, ball.vertex(v))?;
        if let Some(j) = ball.index_of(&y) {
            uf.union(v, j);
        }
    }
    let rho = big_r / 2;
    let count = |uf: &mut UnionFind, radius: u32| {
        let mut roots: Vec<usize> = (0..ball.level(radius).end).map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };
    if rho == 0 || count(&mut uf, rho - 1) != count(&mut uf, rho) {
        return Ok(None);
    }
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for v in 0..ball.level(rho).end {
        if seen.insert(uf.find(v)) {
            reps.push(ball.vertex(v).clone());
        }
    }
    Ok(Some(VirtuallyZWitness {
        element: g.clone(),
        element_norm: norm,
        component,
        index_estimate: reps.len(),
        coset_representatives: reps,
    }))
}
