use super::{AnalysisError, UnionFind};
use crate::graph_build::BallGraph;

pub const NONE: u32 = u32::MAX;

/// Connected components of the annulus `{v : r < |v| ≤ R}` of a ball.
/// Component ids follow the smallest vertex index they contain.
#[derive(Clone, Debug)]
pub struct ComponentPartition {
    inner: u32,
    outer: u32,
    /// Per ball vertex: component id, or `NONE` outside the annulus.
    assignment: Vec<u32>,
    /// Smallest vertex index of each component.
    representatives: Vec<u32>,
    /// Touching component ids in increasing order.
    touching: Vec<u32>,
    /// Per component: position in `touching`, or `NONE`.
    touching_rank: Vec<u32>,
}

impl ComponentPartition {
    pub fn inner_radius(&self) -> u32 {
        self.inner
    }

    pub fn outer_radius(&self) -> u32 {
        self.outer
    }

    pub fn component_count(&self) -> usize {
        self.representatives.len()
    }

    /// `e(r, R)`: components meeting the outer sphere.
    pub fn touching_count(&self) -> usize {
        self.touching.len()
    }

    pub fn touching(&self) -> &[u32] {
        &self.touching
    }

    pub fn component_of(&self, v: usize) -> Option<u32> {
        match self.assignment.get(v) {
            Some(&c) if c != NONE => Some(c),
            _ => None,
        }
    }

    /// Position among touching components of the component containing `v`.
    pub fn touching_index_of(&self, v: usize) -> Option<usize> {
        let c = self.component_of(v)?;
        match self.touching_rank[c as usize] {
            NONE => None,
            k => Some(k as usize),
        }
    }

    pub fn representative(&self, component: u32) -> usize {
        self.representatives[component as usize] as usize
    }

    pub fn is_touching(&self, component: u32) -> bool {
        self.touching_rank[component as usize] != NONE
    }

    /// Vertex indices of a component, increasing.
    pub fn members(&self, component: u32) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&v| self.assignment[v] == component)
            .collect()
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }
}

/// Components of `{r < |v| ≤ R}` with `R` the ball's radius.
pub fn annulus_components(ball: &BallGraph, r: u32) -> Result<ComponentPartition, AnalysisError> {
    annulus_components_within(ball, r, ball.radius())
}

/// Components of `{r < |v| ≤ outer}` inside a ball of radius `≥ outer`.
pub fn annulus_components_within(
    ball: &BallGraph,
    r: u32,
    outer: u32,
) -> Result<ComponentPartition, AnalysisError> {
    if r >= outer {
        return Err(AnalysisError::InnerRadius { r, outer });
    }
    if outer > ball.radius() {
        return Err(AnalysisError::Margin(format!(
            "outer radius {outer} exceeds ball radius {}",
            ball.radius()
        )));
    }
    let lo = ball.level(r + 1).start;
    let hi = ball.level(outer).end;
    let mut uf = UnionFind::new(hi - lo);
    for v in lo..hi {
        for (_, w) in ball.neighbors(v) {
            if w >= lo && w < hi && w > v {
                uf.union(v - lo, w - lo);
            }
        }
    }
    let mut assignment = vec![NONE; ball.len()];
    let mut root_id = vec![NONE; hi - lo];
    let mut representatives = Vec::new();
    for v in lo..hi {
        let root = uf.find(v - lo);
        if root_id[root] == NONE {
            root_id[root] = representatives.len() as u32;
            representatives.push(v as u32);
        }
        assignment[v] = root_id[root];
    }
    let mut is_touching = vec![false; representatives.len()];
    for v in ball.level(outer) {
        is_touching[assignment[v] as usize] = true;
    }
    let mut touching = Vec::new();
    let mut touching_rank = vec![NONE; representatives.len()];
    for (c, &t) in is_touching.iter().enumerate() {
        if t {
            touching_rank[c] = touching.len() as u32;
            touching.push(c as u32);
        }
    }
    Ok(ComponentPartition {
        inner: r,
        outer,
        assignment,
        representatives,
        touching,
        touching_rank,
    })
}
