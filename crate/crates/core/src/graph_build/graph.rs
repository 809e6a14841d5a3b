use crate::group_core::{Gen, GroupError, NormalForm, Oracle};

/// A rooted, locally finite, edge-symmetric graph given by a neighbour
/// function on canonical vertex names.
pub trait RootedGraph: Send + Sync {
    fn name(&self) -> String;

    fn root(&self) -> NormalForm;

    /// Number of positive labels; edges carry labels and their inverses.
    fn label_count(&self) -> usize;

    fn label_names(&self) -> Vec<String>;

    /// Neighbours in label order `a, A, b, B, ...`.
    fn neighbors(&self, v: &NormalForm) -> Result<Vec<(Gen, NormalForm)>, GroupError>;
}

/// The Cayley graph of a group oracle, rooted at the identity.
#[derive(Clone)]
pub struct CayleyGraph {
    group: Oracle,
}

impl CayleyGraph {
    pub fn new(group: Oracle) -> Self {
        CayleyGraph { group }
    }

    pub fn group(&self) -> &Oracle {
        &self.group
    }
}

impl RootedGraph for CayleyGraph {
    fn name(&self) -> String {
        self.group.name()
    }

    fn root(&self) -> NormalForm {
        self.group.identity()
    }

    fn label_count(&self) -> usize {
        self.group.generator_count()
    }

    fn label_names(&self) -> Vec<String> {
        self.group.generator_names()
    }

    fn neighbors(&self, v: &NormalForm) -> Result<Vec<(Gen, NormalForm)>, GroupError> {
        let n = self.group.generator_count();
        let mut out = Vec::with_capacity(2 * n);
        for slot in 0..2 * n {
            let s = Gen::from_slot(slot);
            out.push((s, self.group.multiply(v, s)?));
        }
        Ok(out)
    }
}
