//! Spec language, analysis orchestration and report output for `ends-lab`.

pub mod build;
pub mod dsl;
pub mod report;

pub use build::{build, build_group, BuildError, RelativeInfo, Target};
pub use dsl::{parse_spec, Element, GroupSpecAst, ParseError, ParseErrorKind};
pub use report::{parse_analyses, run, Analysis, AnalysisRequest, Report, RequestError, RunError};
