//! Finite-radius computation of the ends of finitely generated groups and
//! of relative (coset) graphs.

pub mod ends_analysis;
pub mod graph_build;
pub mod group_core;
pub mod normal_forms;
pub mod qi;
