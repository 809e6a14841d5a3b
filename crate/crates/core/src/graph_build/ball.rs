use std::ops::Range;

use indexmap::IndexSet;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;

use super::{GraphError, RootedGraph};
use crate::group_core::{Gen, GroupError, NormalForm};

pub const DEFAULT_VERTEX_BUDGET: usize = 5_000_000;

const CHUNK: usize = 1 << 14;
const PENDING: u32 = 1 << 31;

type VertexSet = IndexSet<NormalForm, FxBuildHasher>;

/// The closed ball `B(root, R)` of a rooted graph. Vertices are numbered by
/// level, and within a level by payload order, so indices are deterministic.
pub struct BallGraph {
    name: String,
    label_names: Vec<String>,
    vertices: VertexSet,
    norms: Vec<u32>,
    /// `levels[k]..levels[k+1]` are the vertices at distance `k`.
    levels: Vec<usize>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    labels: Vec<Gen>,
    radius: u32,
}

/// Result of [`build_ball_truncated`]: the largest ball that fit.
pub struct TruncatedBall {
    pub ball: BallGraph,
    pub requested: u32,
    /// `Some` when the budget stopped construction before `requested`.
    pub overflow: Option<GraphError>,
}

impl BallGraph {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Outer radius `R`.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex(&self, i: usize) -> &NormalForm {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &NormalForm> {
        self.vertices.iter()
    }

    pub fn index_of(&self, v: &NormalForm) -> Option<usize> {
        self.vertices.get_index_of(v)
    }

    #[inline]
    pub fn norm(&self, i: usize) -> u32 {
        self.norms[i]
    }

    pub fn norm_of(&self, v: &NormalForm) -> Option<u32> {
        self.index_of(v).map(|i| self.norms[i])
    }

    /// Vertices at distance exactly `k` (empty beyond `R`).
    pub fn level(&self, k: u32) -> Range<usize> {
        let k = k as usize;
        if k + 1 >= self.levels.len() {
            return self.len()..self.len();
        }
        self.levels[k]..self.levels[k + 1]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        (0..=self.radius).map(|k| self.level(k).len()).collect()
    }

    /// Neighbours inside the ball, in label order.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (Gen, usize)> + '_ {
        let r = self.offsets[i]..self.offsets[i + 1];
        self.labels[r.clone()]
            .iter()
            .copied()
            .zip(self.targets[r].iter().map(|&t| t as usize))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }
}

/// BFS ball of radius `radius`; fails with [`GraphError::Overflow`] if more
/// than `budget` vertices would be needed.
pub fn build_ball(
    graph: &dyn RootedGraph,
    radius: u32,
    budget: usize,
) -> Result<BallGraph, GraphError> {
    let t = build_ball_truncated(graph, radius, budget)?;
    match t.overflow {
        Some(e) => Err(e),
        None => Ok(t.ball),
    }
}

/// Like [`build_ball`] but returns the largest complete ball on overflow.
pub fn build_ball_truncated(
    graph: &dyn RootedGraph,
    radius: u32,
    budget: usize,
) -> Result<TruncatedBall, GraphError> {
    let mut vertices = VertexSet::default();
    vertices.insert(graph.root());
    let mut ball = BallGraph {
        name: graph.name(),
        label_names: graph.label_names(),
        vertices,
        norms: vec![0],
        levels: vec![0, 1],
        offsets: vec![0],
        targets: Vec::new(),
        labels: Vec::new(),
        radius,
    };
    if budget == 0 {
        return Err(GraphError::Overflow {
            budget,
            reached_radius: 0,
            requested: radius,
        });
    }
    for k in 0..=radius {
        let frontier = ball.level(k);
        let expand = k < radius;
        let mark = (ball.offsets.len(), ball.targets.len());
        match expand_level(graph, &mut ball, frontier.clone(), expand, budget)? {
            Some(next) => {
                if !expand {
                    break;
                }
                append_level(&mut ball, next, mark.1);
            }
            None => {
                ball.offsets.truncate(mark.0);
                ball.targets.truncate(mark.1);
                ball.labels.truncate(mark.1);
                expand_level(graph, &mut ball, frontier, false, budget)?;
                ball.radius = k;
                return Ok(TruncatedBall {
                    ball,
                    requested: radius,
                    overflow: Some(GraphError::Overflow {
                        budget,
                        reached_radius: k,
                        requested: radius,
                    }),
                });
            }
        }
    }
    Ok(TruncatedBall {
        ball,
        requested: radius,
        overflow: None,
    })
}

/// Records the edges of every frontier vertex. New vertices go to the
/// returned set with `PENDING`-tagged targets; `None` signals overflow.
fn expand_level(
    graph: &dyn RootedGraph,
    ball: &mut BallGraph,
    frontier: Range<usize>,
    expand: bool,
    budget: usize,
) -> Result<Option<VertexSet>, GraphError> {
    let mut next = VertexSet::default();
    let mut start = frontier.start;
    while start < frontier.end {
        let end = (start + CHUNK).min(frontier.end);
        let vertices = &ball.vertices;
        let lists: Vec<Result<Vec<(Gen, NormalForm)>, GroupError>> = (start..end)
            .into_par_iter()
            .map(|i| graph.neighbors(&vertices[i]))
            .collect();
        for list in lists {
            for (s, w) in list? {
                if let Some(j) = ball.vertices.get_index_of(&w) {
                    ball.targets.push(j as u32);
                    ball.labels.push(s);
                } else if expand {
                    let (t, _) = next.insert_full(w);
                    if ball.vertices.len() + next.len() > budget {
                        return Ok(None);
                    }
                    ball.targets.push(PENDING | t as u32);
                    ball.labels.push(s);
                }
            }
            ball.offsets.push(ball.targets.len());
        }
        start = end;
    }
    Ok(Some(next))
}

fn append_level(ball: &mut BallGraph, next: VertexSet, edge_mark: usize) {
    let mut items: Vec<(NormalForm, usize)> =
        next.into_iter().enumerate().map(|(t, v)| (v, t)).collect();
    items.par_sort_unstable();
    let base = ball.vertices.len();
    let mut rank = vec![0u32; items.len()];
    let level = ball.levels.len() as u32 - 1;
    for (pos, (v, t)) in items.into_iter().enumerate() {
        rank[t] = (base + pos) as u32;
        ball.vertices.insert(v);
        ball.norms.push(level);
    }
    for t in &mut ball.targets[edge_mark..] {
        if *t & PENDING != 0 {
            *t = rank[(*t & !PENDING) as usize];
        }
    }
    ball.levels.push(ball.vertices.len());
}
