//! Analysis requests, their execution and the report document.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use ends_core::ends_analysis::{
    almost_invariant_check, annulus_components, central_search_on_ball, end_action_on, end_stabilizer_report,
    multiplicative_ends_test_on_ball, profile_from_ball, virtually_z_witness_on_ball, AlmostInvarianceVerdict,
    AnalysisError, EndsProfile, Verdict,
};
use ends_core::graph_build::{build_ball_truncated, BallGraph, GraphError};
use ends_core::group_core::{Gen, Group, NormalForm};
use serde::Serialize;

use crate::build::{RelativeInfo, Target};
use crate::dsl::GroupSpecAst;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Analysis {
    Profile,
    Action,
    Stabilizer,
    Multiplicative,
    VzWitness,
    AlmostInvariance,
    Relative,
}

impl Analysis {
    pub const ALL: [Analysis; 7] = [
        Analysis::Profile,
        Analysis::Action,
        Analysis::Stabilizer,
        Analysis::Multiplicative,
        Analysis::VzWitness,
        Analysis::AlmostInvariance,
        Analysis::Relative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Analysis::Profile => "profile",
            Analysis::Action => "action",
            Analysis::Stabilizer => "stabilizer",
            Analysis::Multiplicative => "multiplicative",
            Analysis::VzWitness => "vz_witness",
            Analysis::AlmostInvariance => "almost_invariance",
            Analysis::Relative => "relative",
        }
    }

    fn needs_group(self) -> bool {
        !matches!(self, Analysis::Profile | Analysis::Relative)
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Analysis {
    type Err = RequestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Analysis::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| RequestError::UnknownAnalysis(s.to_string()))
    }
}

/// Parses a comma separated list; `all` selects every analysis that applies
/// to the target.
pub fn parse_analyses(text: &str) -> Result<BTreeSet<Analysis>, RequestError> {
    let mut out = BTreeSet::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part == "all" {
            out.extend(Analysis::ALL);
        } else {
            out.insert(part.parse()?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RequestError {
    #[error("unknown analysis {0:?}")]
    UnknownAnalysis(String),
    #[error("R_max = {big_r_max} is below 2 * r_max + 4 = {}", 2 * r_max + 4)]
    Margin { r_max: u32, big_r_max: u32 },
    #[error("vertex budget must be positive")]
    Budget,
    #[error("{0} needs a group; rel(...) describes a coset graph")]
    NeedsGroup(Analysis),
    #[error("relative needs a rel(...) spec")]
    NeedsRelative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub spec: GroupSpecAst,
    pub r_max: u32,
    pub big_r_max: u32,
    pub budget: usize,
    pub analyses: BTreeSet<Analysis>,
}

impl AnalysisRequest {
    pub fn validate(&self) -> Result<(), RequestError> {
        if self.big_r_max < 2 * self.r_max + 4 {
            return Err(RequestError::Margin {
                r_max: self.r_max,
                big_r_max: self.big_r_max,
            });
        }
        if self.budget == 0 {
            return Err(RequestError::Budget);
        }
        let relative = matches!(self.spec, GroupSpecAst::Rel(..));
        for &a in &self.analyses {
            if relative && a.needs_group() {
                return Err(RequestError::NeedsGroup(a));
            }
            if !relative && a == Analysis::Relative {
                return Err(RequestError::NeedsRelative);
            }
        }
        Ok(())
    }

    /// Drops analyses that do not apply to the spec, for `--analyses all`.
    pub fn applicable(mut self) -> Self {
        let relative = matches!(self.spec, GroupSpecAst::Rel(..));
        self.analyses
            .retain(|a| if relative { !a.needs_group() } else { *a != Analysis::Relative });
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Request(#[from] RequestError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub r: u32,
    #[serde(rename = "R")]
    pub big_r: u32,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionRow {
    pub g: String,
    pub perm: Vec<usize>,
    pub fixes_all: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Radii>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<Radii>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<StabilizerJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicative: Option<MultiplicativeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub virtually_z: Option<VirtuallyZJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<Option<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_invariance: Option<Vec<AlmostInvarianceJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative: Option<RelativeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Radii {
    pub r: Vec<u32>,
    #[serde(rename = "R")]
    pub big_r: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerJson {
    pub r: u32,
    #[serde(rename = "R")]
    pub big_r: u32,
    pub permutes: bool,
    pub image_order: Option<usize>,
    pub stabilizer_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativeJson {
    pub verdict: String,
    pub r: u32,
    #[serde(rename = "R")]
    pub big_r: u32,
    pub inverse_witness: Option<String>,
    pub witness_is_involution: bool,
    pub product_witness: Option<[String; 3]>,
    pub inverses_checked: usize,
    pub products_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtuallyZJson {
    pub g: Option<String>,
    pub norm: Option<u32>,
    pub index: Option<usize>,
    pub component: Option<usize>,
    pub coset_representatives: Vec<String>,
    pub candidates_tried: usize,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostInvarianceJson {
    pub component: usize,
    pub g: String,
    pub difference: usize,
    pub max_norm: Option<u32>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeJson {
    pub subgroup: Vec<String>,
    pub index: Option<u64>,
    pub automaton_states: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetJson {
    pub vertex_budget: usize,
    pub vertices: usize,
    pub radius_requested: u32,
    pub radius_reached: u32,
    pub complete: bool,
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub group: String,
    pub generators: Vec<String>,
    pub profile: Vec<ProfileRow>,
    pub classification: String,
    pub stable_e: Option<usize>,
    pub actions: Vec<ActionRow>,
    pub witnesses: Witnesses,
    pub budget: BudgetJson,
    pub version: String,
}

impl Report {
    pub fn is_complete(&self) -> bool {
        self.budget.complete
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group           {}", self.group);
        let _ = writeln!(out, "generators      {}", self.generators.join(" "));
        let stable = self.stable_e.map_or("-".to_string(), |e| e.to_string());
        let _ = writeln!(out, "classification  {} (stable e = {stable})", self.classification);
        if !self.budget.complete {
            let _ = writeln!(
                out,
                "incomplete      ball stopped at radius {} of {} ({} vertices)",
                self.budget.radius_reached, self.budget.radius_requested, self.budget.vertices
            );
        }
        let rs: BTreeSet<u32> = self.profile.iter().map(|p| p.r).collect();
        let big_rs: BTreeSet<u32> = self.profile.iter().map(|p| p.big_r).collect();
        if !rs.is_empty() {
            let _ = write!(out, "\n  r\\R");
            for big_r in &big_rs {
                let _ = write!(out, " {big_r:>6}");
            }
            let _ = writeln!(out);
            for r in &rs {
                let _ = write!(out, "{r:>5}");
                for big_r in &big_rs {
                    match self.profile.iter().find(|p| p.r == *r && p.big_r == *big_r) {
                        Some(p) => {
                            let _ = write!(out, " {:>6}", p.e);
                        }
                        None => {
                            let _ = write!(out, " {:>6}", "");
                        }
                    }
                }
                let _ = writeln!(out);
            }
        }
        if !self.actions.is_empty() {
            let _ = writeln!(out, "\nend action");
            for a in &self.actions {
                let _ = writeln!(out, "  {:<12} {:?} fixes_all={}", a.g, a.perm, a.fixes_all);
            }
        }
        let w = &self.witnesses;
        if let Some(s) = &w.stabilizer {
            if s.permutes {
                let _ = writeln!(out, "\nstabilizer index {}", opt(s.stabilizer_index));
            } else {
                let _ = writeln!(out, "\nstabilizer index unknown (generators do not permute components at r = {})", s.r);
            }
        }
        if let Some(m) = &w.multiplicative {
            let _ = writeln!(out, "\nmultiplicative  {}", m.verdict);
            if let Some(v) = &m.inverse_witness {
                let _ = writeln!(out, "  inverse witness {v} (involution: {})", m.witness_is_involution);
            }
            if let Some([a, b, c]) = &m.product_witness {
                let _ = writeln!(out, "  product witness {a} * {b} = {c}");
            }
        }
        if let Some(v) = &w.virtually_z {
            match (&v.g, v.index) {
                (Some(g), Some(i)) => {
                    let _ = writeln!(out, "\nvirtually Z     <{g}> of index {i}");
                }
                _ => {
                    let _ = writeln!(out, "\nvirtually Z     no witness ({} candidates)", v.candidates_tried);
                }
            }
        }
        if let Some(c) = &w.central {
            let _ = writeln!(out, "central         {}", c.as_deref().unwrap_or("none found"));
        }
        if let Some(rows) = &w.almost_invariance {
            let _ = writeln!(out, "\nalmost invariance");
            for a in rows {
                let _ = writeln!(
                    out,
                    "  V{} {:<10} |Vg ^ V| = {:<5} {}",
                    a.component, a.g, a.difference, a.verdict
                );
            }
        }
        if let Some(rel) = &w.relative {
            let index = rel.index.map_or("infinite".to_string(), |i| i.to_string());
            let _ = writeln!(out, "\nsubgroup        <{}> index {index}", rel.subgroup.join(", "));
        }
        if !self.budget.skipped.is_empty() {
            let _ = writeln!(out, "\nskipped         {}", self.budget.skipped.join(", "));
        }
        out
    }
}

fn opt<T: fmt::Display>(x: Option<T>) -> String {
    x.map_or("unknown".to_string(), |v| v.to_string())
}

/// Runs the request. On budget overflow the report is built from the
/// largest complete ball, marked incomplete, and the analyses that need
/// the full ball are listed as skipped.
pub fn run(request: &AnalysisRequest, target: &Target) -> Result<Report, RunError> {
    request.validate()?;
    let graph = target.graph();
    let truncated = build_ball_truncated(graph.as_ref(), request.big_r_max, request.budget)?;
    let ball = &truncated.ball;
    let complete = truncated.overflow.is_none();
    let profile = profile_from_ball(ball, request.r_max, request.big_r_max)?;

    let mut witnesses = Witnesses {
        radii: profile.witness_radii.as_ref().map(|w| Radii {
            r: w.r.clone(),
            big_r: w.big_r.clone(),
        }),
        ..Witnesses::default()
    };
    let mut actions = Vec::new();
    let mut skipped = Vec::new();
    for &a in &request.analyses {
        if a == Analysis::Profile {
            continue;
        }
        if !complete && a != Analysis::Relative {
            skipped.push(a.to_string());
            continue;
        }
        match (a, target) {
            (Analysis::Relative, Target::Schreier { info, .. }) => {
                witnesses.relative = Some(relative_json(info));
            }
            (Analysis::Action, Target::Group(g)) => {
                let (rows, radii) = action_rows(g.as_ref(), ball, request.r_max)?;
                actions = rows;
                witnesses.action = Some(radii);
            }
            (Analysis::Stabilizer, Target::Group(g)) => {
                let s = end_stabilizer_report(g.as_ref(), ball, request.r_max)?;
                witnesses.stabilizer = Some(StabilizerJson {
                    r: s.r,
                    big_r: s.big_r,
                    permutes: s.permutes,
                    image_order: s.image_order,
                    stabilizer_index: s.stabilizer_index,
                });
            }
            (Analysis::Multiplicative, Target::Group(g)) => {
                let m = multiplicative_ends_test_on_ball(g.as_ref(), ball, request.r_max)?;
                witnesses.multiplicative = Some(MultiplicativeJson {
                    verdict: match m.verdict {
                        Verdict::Pass => "pass",
                        Verdict::Fail => "fail",
                    }
                    .to_string(),
                    r: m.r,
                    big_r: m.big_r,
                    inverse_witness: m.inverse_witness.map(|x| x.to_string()),
                    witness_is_involution: m.witness_is_involution,
                    product_witness: m
                        .product_witness
                        .map(|(a, b, c)| [a.to_string(), b.to_string(), c.to_string()]),
                    inverses_checked: m.inverses_checked,
                    products_checked: m.products_checked,
                });
            }
            (Analysis::VzWitness, Target::Group(g)) => {
                let s = virtually_z_witness_on_ball(g.as_ref(), ball, request.r_max)?;
                let w = s.witness.as_ref();
                witnesses.virtually_z = Some(VirtuallyZJson {
                    g: w.map(|w| w.element.to_string()),
                    norm: w.map(|w| w.element_norm),
                    index: w.map(|w| w.index_estimate),
                    component: w.map(|w| w.component),
                    coset_representatives: w
                        .map(|w| w.coset_representatives.iter().map(|x| x.to_string()).collect())
                        .unwrap_or_default(),
                    candidates_tried: s.candidates_tried,
                    diagnostics: s.diagnostics,
                });
                witnesses.central = Some(central_search_on_ball(g.as_ref(), ball)?.map(|c| c.to_string()));
            }
            (Analysis::AlmostInvariance, Target::Group(g)) => {
                witnesses.almost_invariance = Some(almost_invariance_rows(g.as_ref(), ball, request.r_max)?);
            }
            (a, _) => {
                return Err(if a == Analysis::Relative {
                    RequestError::NeedsRelative
                } else {
                    RequestError::NeedsGroup(a)
                }
                .into())
            }
        }
    }

    Ok(Report {
        group: request.spec.to_string(),
        generators: graph.label_names(),
        profile: profile_rows(&profile),
        classification: profile.classification.to_string(),
        stable_e: profile.stable_e,
        actions,
        witnesses,
        budget: BudgetJson {
            vertex_budget: request.budget,
            vertices: ball.len(),
            radius_requested: request.big_r_max,
            radius_reached: ball.radius(),
            complete,
            skipped,
        },
        version: VERSION.to_string(),
    })
}

fn profile_rows(p: &EndsProfile) -> Vec<ProfileRow> {
    p.entries
        .iter()
        .map(|e| ProfileRow {
            r: e.r,
            big_r: e.big_r,
            e: e.e,
        })
        .collect()
}

fn relative_json(info: &RelativeInfo) -> RelativeJson {
    RelativeJson {
        subgroup: info.subgroup.clone(),
        index: info.index,
        automaton_states: info.automaton_states,
    }
}

/// Generator actions at `(r_max, R_max)`.
fn action_rows(group: &dyn Group, ball: &BallGraph, r: u32) -> Result<(Vec<ActionRow>, Radii), AnalysisError> {
    let partition = annulus_components(ball, r)?;
    let mut rows = Vec::new();
    for i in 0..group.generator_count() {
        let g = group.generator(Gen::pos(i))?;
        let rep = end_action_on(ball, &partition, group, &g)?;
        rows.push(ActionRow {
            g: group.generator_names()[i].clone(),
            perm: rep.permutation,
            fixes_all: rep.fixes_all,
        });
    }
    Ok((
        rows,
        Radii {
            r: vec![r],
            big_r: vec![ball.radius()],
        },
    ))
}

fn almost_invariance_rows(
    group: &dyn Group,
    ball: &BallGraph,
    r: u32,
) -> Result<Vec<AlmostInvarianceJson>, AnalysisError> {
    let partition = annulus_components(ball, r)?;
    let names = group.generator_names();
    let mut rows = Vec::new();
    for (index, &component) in partition.touching().iter().enumerate() {
        for (i, name) in names.iter().enumerate() {
            let g: NormalForm = group.generator(Gen::pos(i))?;
            let rep = almost_invariant_check(group, ball, &partition, component, &g)?;
            rows.push(AlmostInvarianceJson {
                component: index,
                g: name.clone(),
                difference: rep.difference.len(),
                max_norm: rep.max_norm,
                verdict: match rep.verdict {
                    AlmostInvarianceVerdict::Bounded => "bounded",
                    AlmostInvarianceVerdict::UnboundedEvidence => "unbounded_evidence",
                }
                .to_string(),
            });
        }
    }
    Ok(rows)
}
