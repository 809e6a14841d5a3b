use std::sync::Arc;

use super::{generator_name, Gen, NormalForm, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("generator index {index} out of range ({count} generators)")]
    MalformedWord { index: usize, count: usize },
    #[error("payload {payload} is not an element of {group}")]
    MalformedForm { group: String, payload: String },
    #[error("word syntax at offset {offset}: {message}")]
    WordSyntax { offset: usize, message: String },
    #[error("invalid construction: {0}")]
    Validation(String),
    #[error("table: {0}")]
    Table(String),
}

/// Canonical-form oracle for a finitely generated group with a fixed
/// generating set `S`. Generators are numbered `0..generator_count()`; the
/// symmetric set `S ∪ S⁻¹` is spanned by [`Gen`].
pub trait Group: Send + Sync {
    fn name(&self) -> String;

    fn generator_count(&self) -> usize;

    fn generator_names(&self) -> Vec<String> {
        (0..self.generator_count()).map(generator_name).collect()
    }

    fn identity(&self) -> NormalForm;

    /// Right multiplication `g · s`.
    fn multiply(&self, g: &NormalForm, s: Gen) -> Result<NormalForm, GroupError>;

    /// Some word (not necessarily geodesic) evaluating to `g`.
    fn word_of(&self, g: &NormalForm) -> Result<Word, GroupError>;

    fn canonical(&self, w: &Word) -> Result<NormalForm, GroupError> {
        let mut g = self.identity();
        for s in w.iter() {
            g = self.multiply(&g, s)?;
        }
        Ok(g)
    }

    fn inverse(&self, g: &NormalForm) -> Result<NormalForm, GroupError> {
        self.canonical(&self.word_of(g)?.inverse())
    }

    /// `g · h`.
    fn product(&self, g: &NormalForm, h: &NormalForm) -> Result<NormalForm, GroupError> {
        let mut x = g.clone();
        for s in self.word_of(h)?.iter() {
            x = self.multiply(&x, s)?;
        }
        Ok(x)
    }

    fn generator(&self, s: Gen) -> Result<NormalForm, GroupError> {
        self.multiply(&self.identity(), s)
    }
}

pub type Oracle = Arc<dyn Group>;

pub(crate) fn check_gen(s: Gen, count: usize) -> Result<(), GroupError> {
    if s.index() < count {
        Ok(())
    } else {
        Err(GroupError::MalformedWord {
            index: s.index(),
            count,
        })
    }
}

pub(crate) fn malformed(group: &dyn Group, g: &NormalForm) -> GroupError {
    GroupError::MalformedForm {
        group: group.name(),
        payload: g.to_string(),
    }
}
