use std::fmt::Write;

use serde::Serialize;

use super::BallGraph;

/// DOT rendering; each undirected edge appears once, under its positive
/// label.
pub fn to_dot(ball: &BallGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph ball {{");
    let _ = writeln!(out, "  // {} radius {}", escape(ball.name()), ball.radius());
    for i in 0..ball.len() {
        let _ = writeln!(
            out,
            "  v{i} [label=\"{}\", norm={}];",
            escape(&ball.vertex(i).to_string()),
            ball.norm(i)
        );
    }
    let names = ball.label_names();
    for i in 0..ball.len() {
        for (s, j) in ball.neighbors(i) {
            if !s.is_inverse() {
                let _ = writeln!(out, "  v{i} -> v{j} [label=\"{}\"];", escape(&names[s.index()]));
            }
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[derive(Serialize)]
pub struct BallVertex {
    pub id: usize,
    pub payload: String,
    pub norm: u32,
}

#[derive(Serialize)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

/// Adjacency document: `{root, radius, vertices: [{id, payload, norm}],
/// edges: [{from, to, label}]}` with positive labels only.
#[derive(Serialize)]
pub struct BallExport {
    pub root: usize,
    pub radius: u32,
    pub vertices: Vec<BallVertex>,
    pub edges: Vec<BallEdge>,
}

pub fn to_adjacency(ball: &BallGraph) -> BallExport {
    let names = ball.label_names();
    let vertices = (0..ball.len())
        .map(|i| BallVertex {
            id: i,
            payload: ball.vertex(i).to_string(),
            norm: ball.norm(i),
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..ball.len() {
        for (s, j) in ball.neighbors(i) {
            if !s.is_inverse() {
                edges.push(BallEdge {
                    from: i,
                    to: j,
                    label: names[s.index()].clone(),
                });
            }
        }
    }
    BallExport {
        root: 0,
        radius: ball.radius(),
        vertices,
        edges,
    }
}
