use std::collections::{HashSet, VecDeque};

use super::{annulus_components, AnalysisError, ComponentPartition};
use crate::graph_build::BallGraph;
use crate::group_core::{Gen, Group, NormalForm};

/// Induced map of left multiplication by `g` on touching components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndActionReport {
    pub element: NormalForm,
    pub element_norm: u32,
    pub r: u32,
    pub big_r: u32,
    /// `permutation[i]`: touching index hit by the probe of touching
    /// component `i`.
    pub permutation: Vec<usize>,
    pub is_permutation: bool,
    pub fixes_all: bool,
}

pub fn end_action(
    ball: &BallGraph,
    group: &dyn Group,
    r: u32,
    g: &NormalForm,
) -> Result<EndActionReport, AnalysisError> {
    let partition = annulus_components(ball, r)?;
    end_action_on(ball, &partition, group, g)
}

/// [`end_action`] with a precomputed partition at `(r, R)`, `R` the ball
/// radius. Requires `R ≥ r + 2|g| + 1`.
pub fn end_action_on(
    ball: &BallGraph,
    partition: &ComponentPartition,
    group: &dyn Group,
    g: &NormalForm,
) -> Result<EndActionReport, AnalysisError> {
    let (r, big_r) = (partition.inner_radius(), partition.outer_radius());
    let norm = ball
        .norm_of(g)
        .ok_or_else(|| AnalysisError::OutsideBall(g.to_string()))?;
    if big_r < r + 2 * norm + 1 {
        return Err(AnalysisError::Margin(format!(
            "end action of {g} (norm {norm}) at r={r} needs R >= {}, got {big_r}",
            r + 2 * norm + 1
        )));
    }
    let probes = probes_at(ball, partition, big_r - norm)?;
    let mut permutation = Vec::with_capacity(probes.len());
    for &p in &probes {
        let image = group.product(g, ball.vertex(p))?;
        let j = ball
            .index_of(&image)
            .ok_or_else(|| AnalysisError::Inconsistent(format!("probe image {image} left the ball")))?;
        let k = partition.touching_index_of(j).ok_or_else(|| {
            AnalysisError::Inconsistent(format!(
                "probe image {image} is not in a touching component at r={r}"
            ))
        })?;
        permutation.push(k);
    }
    let distinct: HashSet<usize> = permutation.iter().copied().collect();
    let is_permutation = distinct.len() == permutation.len();
    let fixes_all = permutation.iter().enumerate().all(|(i, &k)| i == k);
    Ok(EndActionReport {
        element: g.clone(),
        element_norm: norm,
        r,
        big_r,
        permutation,
        is_permutation,
        fixes_all,
    })
}

/// Payload-minimal vertex at `level` of each touching component.
pub(crate) fn probes_at(
    ball: &BallGraph,
    partition: &ComponentPartition,
    level: u32,
) -> Result<Vec<usize>, AnalysisError> {
    let mut probes = vec![usize::MAX; partition.touching_count()];
    for v in ball.level(level) {
        if let Some(k) = partition.touching_index_of(v) {
            if probes[k] == usize::MAX {
                probes[k] = v;
            }
        }
    }
    if probes.contains(&usize::MAX) {
        return Err(AnalysisError::Inconsistent(format!(
            "a touching component has no vertex at level {level}"
        )));
    }
    Ok(probes)
}

pub const IMAGE_ORDER_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerSummary {
    pub r: u32,
    pub big_r: u32,
    pub actions: Vec<EndActionReport>,
    /// Every generator permutes the touching components. Fails for groups
    /// whose profile still grows at `r`, where the action only makes sense
    /// between levels.
    pub permutes: bool,
    /// Order of the permutation group generated by the generator images;
    /// `None` above [`IMAGE_ORDER_CAP`] or when `permutes` is false.
    pub image_order: Option<usize>,
    /// Index of the stabilizer (the kernel) in the group, equal to the
    /// order of the image.
    pub stabilizer_index: Option<usize>,
}

pub fn end_stabilizer_report(
    group: &dyn Group,
    ball: &BallGraph,
    r: u32,
) -> Result<StabilizerSummary, AnalysisError> {
    let partition = annulus_components(ball, r)?;
    let mut actions = Vec::new();
    for i in 0..group.generator_count() {
        let s = group.generator(Gen::pos(i))?;
        actions.push(end_action_on(ball, &partition, group, &s)?);
    }
    if actions.iter().any(|a| !a.is_permutation) {
        return Ok(StabilizerSummary {
            r,
            big_r: ball.radius(),
            actions,
            permutes: false,
            image_order: None,
            stabilizer_index: None,
        });
    }
    let n = partition.touching_count();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        if seen.len() > IMAGE_ORDER_CAP {
            break;
        }
        for a in &actions {
            let q: Vec<usize> = p.iter().map(|&i| a.permutation[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let order = (seen.len() <= IMAGE_ORDER_CAP).then_some(seen.len());
    Ok(StabilizerSummary {
        r,
        big_r: ball.radius(),
        actions,
        permutes: true,
        image_order: order,
        stabilizer_index: order,
    })
}
