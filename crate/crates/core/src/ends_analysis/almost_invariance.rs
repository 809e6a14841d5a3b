use super::{AnalysisError, ComponentPartition};
use crate::graph_build::BallGraph;
use crate::group_core::{Group, NormalForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlmostInvarianceVerdict {
    Bounded,
    UnboundedEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostInvarianceReport {
    pub component: u32,
    pub element: NormalForm,
    /// Elements of `Vg △ V` found in the ball, in payload order.
    pub difference: Vec<NormalForm>,
    pub max_norm: Option<u32>,
    pub verdict: AlmostInvarianceVerdict,
}

/// `Vg △ V` restricted to vertices `v` with `|v| ≤ R − |g|`, so that both
/// `vg` and `vg⁻¹` lie in the ball.
pub fn almost_invariant_check(
    group: &dyn Group,
    ball: &BallGraph,
    partition: &ComponentPartition,
    component: u32,
    g: &NormalForm,
) -> Result<AlmostInvarianceReport, AnalysisError> {
    let (r, big_r) = (partition.inner_radius(), partition.outer_radius());
    let norm = ball
        .norm_of(g)
        .ok_or_else(|| AnalysisError::OutsideBall(g.to_string()))?;
    if norm + r >= big_r {
        return Err(AnalysisError::Margin(format!(
            "almost invariance of {g} (norm {norm}) at r={r} needs R > {}, got {big_r}",
            norm + r
        )));
    }
    if component as usize >= partition.component_count() {
        return Err(AnalysisError::Inconsistent(format!("no component {component}")));
    }
    let g_inv = group.inverse(g)?;
    let in_v = |x: &NormalForm| {
        ball.index_of(x)
            .and_then(|i| partition.component_of(i))
            == Some(component)
    };
    let mut difference = Vec::new();
    for v in partition.members(component) {
        if ball.norm(v) + norm > big_r {
            continue;
        }
        let x = ball.vertex(v);
        let vg = group.product(x, g)?;
        if !in_v(&vg) {
            difference.push(vg);
        }
        if !in_v(&group.product(x, &g_inv)?) {
            difference.push(x.clone());
        }
    }
    difference.sort();
    difference.dedup();
    let max_norm = difference.iter().filter_map(|x| ball.norm_of(x)).max();
    let verdict = if max_norm.map_or(true, |m| m <= r + norm) {
        AlmostInvarianceVerdict::Bounded
    } else {
        AlmostInvarianceVerdict::UnboundedEvidence
    };
    Ok(AlmostInvarianceReport {
        component,
        element: g.clone(),
        difference,
        max_norm,
        verdict,
    })
}
