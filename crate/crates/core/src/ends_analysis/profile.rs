use std::fmt;

use rayon::prelude::*;

use super::{AnalysisError, UnionFind};
use crate::graph_build::{build_ball, BallGraph, RootedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Zero,
    One,
    Two,
    Infinite,
    Inconclusive,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Zero => "zero",
            Classification::One => "one",
            Classification::Two => "two",
            Classification::Infinite => "infinite",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub r: u32,
    pub big_r: u32,
    pub e: usize,
}

/// Radii whose values decided a stable or infinite verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRadii {
    pub r: Vec<u32>,
    pub big_r: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndsProfile {
    /// Sorted by `(r, R)`.
    pub entries: Vec<ProfileEntry>,
    pub classification: Classification,
    pub stable_e: Option<usize>,
    pub witness_radii: Option<WitnessRadii>,
    pub r_max: u32,
    pub big_r_max: u32,
    /// `false` when the ball stopped short of `big_r_max`.
    pub complete: bool,
}

impl EndsProfile {
    pub fn e(&self, r: u32, big_r: u32) -> Option<usize> {
        self.entries
            .iter()
            .find(|x| x.r == r && x.big_r == big_r)
            .map(|x| x.e)
    }

    /// Cells where `e` decreases in `r` or increases in `R`.
    pub fn monotonicity_violations(&self) -> Vec<(ProfileEntry, ProfileEntry)> {
        let mut out = Vec::new();
        for a in &self.entries {
            if let Some(e) = self.e(a.r + 1, a.big_r) {
                if e < a.e {
                    out.push((*a, ProfileEntry { r: a.r + 1, big_r: a.big_r, e }));
                }
            }
            if let Some(e) = self.e(a.r, a.big_r + 1) {
                if e > a.e {
                    out.push((*a, ProfileEntry { r: a.r, big_r: a.big_r + 1, e }));
                }
            }
        }
        out
    }
}

fn check_margin(r_max: u32, big_r_max: u32) -> Result<(), AnalysisError> {
    if r_max == 0 || big_r_max < 2 * r_max + 4 {
        return Err(AnalysisError::Margin(format!(
            "profile needs r_max >= 1 and R_max >= 2*r_max + 4 (got r_max={r_max}, R_max={big_r_max})"
        )));
    }
    Ok(())
}

/// Builds `B(R_max)` and computes the profile table and its classification.
pub fn ends_profile(
    graph: &dyn RootedGraph,
    r_max: u32,
    big_r_max: u32,
    budget: usize,
) -> Result<EndsProfile, AnalysisError> {
    check_margin(r_max, big_r_max)?;
    let ball = build_ball(graph, big_r_max, budget)?;
    profile_from_ball(&ball, r_max, big_r_max)
}

/// Profile on an existing ball. If the ball is smaller than `big_r_max`
/// the table covers the available radii and the result is marked
/// incomplete and inconclusive.
pub fn profile_from_ball(
    ball: &BallGraph,
    r_max: u32,
    big_r_max: u32,
) -> Result<EndsProfile, AnalysisError> {
    check_margin(r_max, big_r_max)?;
    let top = ball.radius().min(big_r_max);
    let complete = top == big_r_max;
    let columns: Vec<Vec<ProfileEntry>> = (1..=r_max)
        .into_par_iter()
        .map(|r| column(ball, r, r_max + 2, top))
        .collect();
    let entries: Vec<ProfileEntry> = columns.into_iter().flatten().collect();
    let mut profile = EndsProfile {
        entries,
        classification: Classification::Inconclusive,
        stable_e: None,
        witness_radii: None,
        r_max,
        big_r_max,
        complete,
    };
    if complete {
        classify(&mut profile, ball.level(big_r_max).is_empty());
    }
    Ok(profile)
}

/// `e(r, R)` for `R` in `lo..=hi`, adding one level at a time.
fn column(ball: &BallGraph, r: u32, lo: u32, hi: u32) -> Vec<ProfileEntry> {
    let base = ball.level(r + 1).start;
    let end = ball.level(hi).end;
    let mut uf = UnionFind::new(end - base);
    let mut stamp = vec![u32::MAX; end - base];
    let mut out = Vec::new();
    for level in r + 1..=hi {
        let range = ball.level(level);
        for v in range.clone() {
            for (_, w) in ball.neighbors(v) {
                if w >= base && w < range.end {
                    uf.union(v - base, w - base);
                }
            }
        }
        if level >= lo {
            let mut e = 0;
            for v in range {
                let root = uf.find(v - base);
                if stamp[root] != level {
                    stamp[root] = level;
                    e += 1;
                }
            }
            out.push(ProfileEntry {
                r,
                big_r: level,
                e,
            });
        }
    }
    out
}

/// Stable: constant over the top three `r` and top two `R`. Infinite:
/// `e(·, R_max)` strictly increasing over the top three `r`.
fn classify(p: &mut EndsProfile, sphere_empty: bool) {
    if sphere_empty {
        p.classification = Classification::Zero;
        p.stable_e = Some(0);
        return;
    }
    if p.r_max < 3 {
        return;
    }
    let rs: Vec<u32> = (p.r_max - 2..=p.r_max).collect();
    let big_rs = vec![p.big_r_max - 1, p.big_r_max];
    let window: Option<Vec<usize>> = rs
        .iter()
        .flat_map(|&r| big_rs.iter().map(move |&b| (r, b)))
        .map(|(r, b)| p.e(r, b))
        .collect();
    let Some(window) = window else { return };
    let radii = WitnessRadii {
        r: rs.clone(),
        big_r: big_rs.clone(),
    };
    if window.iter().all(|&e| e == window[0]) {
        let e = window[0];
        p.stable_e = Some(e);
        p.witness_radii = Some(radii);
        p.classification = match e {
            1 => Classification::One,
            2 => Classification::Two,
            _ => Classification::Inconclusive,
        };
        return;
    }
    let last: Vec<usize> = rs.iter().map(|&r| p.e(r, p.big_r_max).unwrap()).collect();
    if last.windows(2).all(|w| w[0] < w[1]) {
        p.classification = Classification::Infinite;
        p.witness_radii = Some(WitnessRadii {
            r: rs,
            big_r: vec![p.big_r_max],
        });
    }
}
