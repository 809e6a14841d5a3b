use std::collections::VecDeque;

use super::RootedGraph;
use crate::group_core::{check_gen, generator_name, Gen, GroupError, NormalForm, Word};

/// A labelled edge `from --label--> to` with a positive label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledEdge {
    pub from: u32,
    pub label: usize,
    pub to: u32,
}

/// Folded, trimmed core graph of a finitely generated subgroup of a free
/// group. States are numbered in BFS order from the base (state `0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsAutomaton {
    rank: usize,
    /// `transitions[state][slot]`, slots as in [`Gen::slot`].
    transitions: Vec<Vec<Option<u32>>>,
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }
}

/// Folds the graph with the given edges and base until deterministic, then
/// trims hanging trees and renumbers canonically.
pub fn fold(rank: usize, edges: &[LabeledEdge], base: u32) -> StallingsAutomaton {
    let n = edges
        .iter()
        .flat_map(|e| [e.from, e.to])
        .chain([base])
        .max()
        .unwrap() as usize
        + 1;
    let slots = 2 * rank;
    let mut dsu = Dsu((0..n as u32).collect());
    let mut trans: Vec<Vec<Option<u32>>> = vec![vec![None; slots]; n];
    let mut pending: Vec<(u32, usize, u32)> = Vec::new();
    for e in edges {
        assert!(e.label < rank, "label out of range");
        pending.push((e.from, Gen::pos(e.label).slot(), e.to));
        pending.push((e.to, Gen::neg(e.label).slot(), e.from));
    }
    while let Some((u, slot, v)) = pending.pop() {
        let (u, v) = (dsu.find(u), dsu.find(v));
        match trans[u as usize][slot] {
            None => trans[u as usize][slot] = Some(v),
            Some(w) => {
                let w = dsu.find(w);
                if w != v {
                    let (keep, drop) = if w < v { (w, v) } else { (v, w) };
                    dsu.0[drop as usize] = keep;
                    for s in 0..slots {
                        if let Some(t) = trans[drop as usize][s].take() {
                            pending.push((keep, s, t));
                        }
                    }
                }
            }
        }
    }
    // Resolve targets and keep representatives only.
    let mut adj: Vec<Vec<Option<u32>>> = vec![vec![None; slots]; n];
    for u in 0..n as u32 {
        if dsu.find(u) != u {
            continue;
        }
        for s in 0..slots {
            if let Some(t) = trans[u as usize][s] {
                adj[u as usize][s] = Some(dsu.find(t));
            }
        }
    }
    let base = dsu.find(base);
    trim(&mut adj, base);
    canonical(rank, &adj, base)
}

/// Repeatedly deletes non-base vertices of degree one.
fn trim(adj: &mut [Vec<Option<u32>>], base: u32) {
    let degree = |a: &[Option<u32>]| a.iter().filter(|t| t.is_some()).count();
    let mut stack: Vec<u32> = (0..adj.len() as u32)
        .filter(|&u| u != base && degree(&adj[u as usize]) == 1)
        .collect();
    while let Some(u) = stack.pop() {
        if degree(&adj[u as usize]) != 1 {
            continue;
        }
        let slot = adj[u as usize].iter().position(|t| t.is_some()).unwrap();
        let v = adj[u as usize][slot].take().unwrap();
        let back = Gen::from_slot(slot).inv().slot();
        adj[v as usize][back] = None;
        if v != base && degree(&adj[v as usize]) == 1 {
            stack.push(v);
        }
    }
}

fn canonical(rank: usize, adj: &[Vec<Option<u32>>], base: u32) -> StallingsAutomaton {
    let mut id = vec![u32::MAX; adj.len()];
    let mut order = vec![base];
    id[base as usize] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for t in adj[u as usize].iter().flatten() {
            if id[*t as usize] == u32::MAX {
                id[*t as usize] = order.len() as u32;
                order.push(*t);
                queue.push_back(*t);
            }
        }
    }
    let transitions = order
        .iter()
        .map(|&u| {
            adj[u as usize]
                .iter()
                .map(|t| t.map(|t| id[t as usize]))
                .collect()
        })
        .collect();
    StallingsAutomaton { rank, transitions }
}

impl StallingsAutomaton {
    /// Folds the bouquet of loops spelling the given subgroup generators.
    pub fn from_generators(rank: usize, gens: &[Word]) -> Result<Self, GroupError> {
        let mut edges = Vec::new();
        let mut next = 1u32;
        for w in gens {
            for s in w.iter() {
                check_gen(s, rank)?;
            }
            let w = w.free_reduce();
            if w.is_empty() {
                continue;
            }
            let mut cur = 0u32;
            for (i, s) in w.iter().enumerate() {
                let to = if i + 1 == w.len() {
                    0
                } else {
                    next += 1;
                    next - 1
                };
                let label = s.index();
                edges.push(if s.is_inverse() {
                    LabeledEdge { from: to, label, to: cur }
                } else {
                    LabeledEdge { from: cur, label, to }
                });
                cur = to;
            }
        }
        Ok(fold(rank, &edges, 0))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> u32 {
        0
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn transition(&self, state: u32, s: Gen) -> Option<u32> {
        self.transitions[state as usize][s.slot()]
    }

    /// Positive-label edges, sorted.
    pub fn edges(&self) -> Vec<LabeledEdge> {
        let mut out = Vec::new();
        for (u, row) in self.transitions.iter().enumerate() {
            for label in 0..self.rank {
                if let Some(v) = row[Gen::pos(label).slot()] {
                    out.push(LabeledEdge {
                        from: u as u32,
                        label,
                        to: v,
                    });
                }
            }
        }
        out
    }

    /// Reads the reduced form of `w` from the base as far as transitions
    /// allow; returns the stopping state and the unread suffix.
    pub fn read(&self, w: &Word) -> (u32, Vec<Gen>) {
        let w = w.free_reduce();
        let letters = w.letters();
        let mut state = 0;
        for (i, &s) in letters.iter().enumerate() {
            match self.transition(state, s) {
                Some(t) => state = t,
                None => return (state, letters[i..].to_vec()),
            }
        }
        (state, Vec::new())
    }

    pub fn membership(&self, w: &Word) -> bool {
        self.read(w) == (0, Vec::new())
    }

    /// True when every state has every transition, i.e. the subgroup has
    /// finite index.
    pub fn is_complete(&self) -> bool {
        self.transitions.iter().all(|row| row.iter().all(|t| t.is_some()))
    }
}

/// Names right cosets `Kg`; `coset_id(w1) = coset_id(w2)` iff `w1 w2⁻¹ ∈ K`.
pub trait CosetOracle: RootedGraph {
    fn coset_id(&self, w: &Word) -> Result<NormalForm, GroupError>;
}

/// Schreier graph of `K ≤ F_n` via its Stallings automaton. A coset is
/// named by `(state, residual)`: the state reached by reading the reduced
/// word and the unread reduced suffix.
pub struct FreeCosetOracle {
    automaton: StallingsAutomaton,
    label: String,
}

pub fn free_coset_oracle(automaton: StallingsAutomaton) -> FreeCosetOracle {
    let label = format!("rel(free({}))", automaton.rank);
    FreeCosetOracle { automaton, label }
}

impl FreeCosetOracle {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn automaton(&self) -> &StallingsAutomaton {
        &self.automaton
    }

    fn step(&self, state: u32, residual: &[Gen], s: Gen) -> NormalForm {
        let mut residual = residual.to_vec();
        let mut state = state;
        if residual.is_empty() {
            match self.automaton.transition(state, s) {
                Some(t) => state = t,
                None => residual.push(s),
            }
        } else if residual.last() == Some(&s.inv()) {
            residual.pop();
        } else {
            residual.push(s);
        }
        NormalForm::Coset { state, residual }
    }
}

impl RootedGraph for FreeCosetOracle {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn root(&self) -> NormalForm {
        NormalForm::Coset {
            state: 0,
            residual: Vec::new(),
        }
    }

    fn label_count(&self) -> usize {
        self.automaton.rank
    }

    fn label_names(&self) -> Vec<String> {
        (0..self.automaton.rank).map(generator_name).collect()
    }

    fn neighbors(&self, v: &NormalForm) -> Result<Vec<(Gen, NormalForm)>, GroupError> {
        let NormalForm::Coset { state, residual } = v else {
            return Err(GroupError::MalformedForm {
                group: self.label.clone(),
                payload: v.to_string(),
            });
        };
        Ok((0..2 * self.automaton.rank)
            .map(|slot| {
                let s = Gen::from_slot(slot);
                (s, self.step(*state, residual, s))
            })
            .collect())
    }
}

impl CosetOracle for FreeCosetOracle {
    fn coset_id(&self, w: &Word) -> Result<NormalForm, GroupError> {
        for s in w.iter() {
            check_gen(s, self.automaton.rank)?;
        }
        let (state, residual) = self.automaton.read(w);
        Ok(NormalForm::Coset { state, residual })
    }
}
