//! Normal conformal Cartan connections of bi-invariant metrics.
//!
//! Given a compact semisimple Lie algebra by structure constants, this crate
//! builds the orthonormal frame of its negative Killing form, transfers the
//! bracket onto the `m_{-1}` part of the Möbius algebra `so(1, n+1)`, writes
//! down the normal connection form, evaluates its curvature and computes the
//! conformal holonomy algebra as an iterated bracket closure.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the CLI
//! live in the companion `confhol-cli` crate.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod analysis;
pub mod catalog;
pub mod connection;
mod error;
pub mod holonomy;
pub mod lie_algebra;
pub mod linalg;
pub mod mobius;
pub mod riemannian;

pub use analysis::{analyze, Analysis, AnalysisOptions};
pub use catalog::catalog;
pub use connection::{
    connection_curvature, jacobi_gamma0_residual, normal_connection, normal_extension_residual,
    torsion_residual, trace_free_residual, ConnectionForm, CurvatureFunction,
};
pub use error::{Error, Result};
pub use holonomy::{
    classify, conformal_holonomy, riemannian_holonomy, span_reduce, stabilized_tractors,
    CausalType, Closure, HolonomyReport, MatrixSubspace,
};
pub use lie_algebra::{
    assert_compact_semisimple, direct_sum, jacobi_residual, killing_form, orthonormal_frame,
    transferred_bracket, KillingForm, LieAlgebraSpec, OrthonormalFrame, TransferredBracket,
};
pub use linalg::Matrix;
pub use mobius::{GradedParts, MobiusElement};
pub use riemannian::{metric_tensors, riemann, weyl_cross_check, CurvatureOperator, MetricTensors};
