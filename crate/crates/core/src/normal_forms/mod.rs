//! Reduced forms for amalgamated free products and HNN extensions of
//! finite groups.

mod amalgam;
mod hnn;

pub use amalgam::{AmalgamProduct, AmalgamSpec};
pub use hnn::{HnnExtension, HnnSpec};

use crate::group_core::{AmalgamForm, GroupError, HnnForm, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReducedForm {
    Amalgam(AmalgamForm),
    Hnn(HnnForm),
}

impl ReducedForm {
    /// Number of reduced letters (amalgam) or stable letters (HNN).
    pub fn length(&self) -> usize {
        match self {
            ReducedForm::Amalgam(a) => a.letters.len(),
            ReducedForm::Hnn(h) => h.syllables.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ReducedForm::Amalgam(a) => a.head == 0 && a.letters.is_empty(),
            ReducedForm::Hnn(h) => h.head == 0 && h.syllables.is_empty(),
        }
    }
}

pub fn amalgam_reduce(g: &AmalgamProduct, w: &Word) -> Result<ReducedForm, GroupError> {
    g.reduce(w).map(ReducedForm::Amalgam)
}

pub fn britton_reduce(g: &HnnExtension, w: &Word) -> Result<ReducedForm, GroupError> {
    g.reduce(w).map(ReducedForm::Hnn)
}
