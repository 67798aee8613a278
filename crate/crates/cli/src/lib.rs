//! File formats, reports and the command-line driver for `confhol`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra_file;
pub mod app;
pub mod report;

pub use algebra_file::{parse_algebra_file, parse_algebra_str, AlgebraFile, FileError};
pub use app::{run, CliError};
pub use report::{AnalysisReport, Section};
