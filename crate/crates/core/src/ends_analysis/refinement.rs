use super::{AnalysisError, ComponentPartition};

/// Containment maps between touching components at consecutive inner
/// radii, all with the same outer radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementTree {
    pub radii: Vec<u32>,
    /// Touching component count at each radius.
    pub counts: Vec<usize>,
    /// `parents[i][j]`: touching index at `radii[i]` of touching component
    /// `j` at `radii[i + 1]`.
    pub parents: Vec<Vec<usize>>,
}

impl RefinementTree {
    /// Number of children of each node at `radii[level]`.
    pub fn children_counts(&self, level: usize) -> Vec<usize> {
        let mut out = vec![0; self.counts[level]];
        for &p in &self.parents[level] {
            out[p] += 1;
        }
        out
    }

    /// True when every node at `radii[level]` has a child.
    pub fn is_surjective(&self, level: usize) -> bool {
        self.children_counts(level).iter().all(|&c| c > 0)
    }
}

pub fn refinement_tree(partitions: &[ComponentPartition]) -> Result<RefinementTree, AnalysisError> {
    let Some(first) = partitions.first() else {
        return Ok(RefinementTree {
            radii: Vec::new(),
            counts: Vec::new(),
            parents: Vec::new(),
        });
    };
    for w in partitions.windows(2) {
        if w[1].inner_radius() != w[0].inner_radius() + 1
            || w[1].outer_radius() != first.outer_radius()
            || w[1].assignment().len() != first.assignment().len()
        {
            return Err(AnalysisError::NonConsecutive);
        }
    }
    let mut parents = Vec::new();
    for w in partitions.windows(2) {
        let (coarse, fine) = (&w[0], &w[1]);
        let mut map = Vec::with_capacity(fine.touching_count());
        for &c in fine.touching() {
            let v = fine.representative(c);
            let p = coarse.touching_index_of(v).ok_or_else(|| {
                AnalysisError::Inconsistent(format!(
                    "touching component at r={} not inside a touching component at r={}",
                    fine.inner_radius(),
                    coarse.inner_radius()
                ))
            })?;
            map.push(p);
        }
        parents.push(map);
    }
    Ok(RefinementTree {
        radii: partitions.iter().map(|p| p.inner_radius()).collect(),
        counts: partitions.iter().map(|p| p.touching_count()).collect(),
        parents,
    })
}
