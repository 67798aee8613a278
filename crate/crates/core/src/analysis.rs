//! The full pipeline from structure constants to holonomy, with every
//! residual collected in one place.

use alloc::string::String;
use alloc::vec::Vec;

use crate::connection::{
    connection_curvature, jacobi_gamma0_residual, normal_connection, normal_extension_residual,
    normal_lambda, torsion_residual, trace_free_residual, ConnectionForm, CurvatureFunction,
};
use crate::error::Result;
use crate::holonomy::{classify, conformal_holonomy, riemannian_holonomy, Closure, HolonomyReport};
use crate::lie_algebra::{
    assert_compact_semisimple, jacobi_residual, orthonormal_frame, transferred_bracket,
    KillingForm, LieAlgebraSpec, OrthonormalFrame, TransferredBracket,
};
use crate::linalg::Matrix;
use crate::riemannian::{
    metric_tensors, riemann, sectional_range, weyl_cross_check, CurvatureOperator, MetricTensors,
};

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    /// Relative tolerance for validation and rank decisions.
    pub tolerance: f64,
    /// Optional orthogonal `Q`; the frame becomes `Qθ`.
    pub frame_rotation: Option<Matrix>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            frame_rotation: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    pub jacobi: f64,
    pub torsion: f64,
    pub trace_free: f64,
    pub gamma0_jacobi: f64,
    pub normal_extension: f64,
    pub weyl_cross_check: f64,
}

impl Residuals {
    pub fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("jacobi", self.jacobi),
            ("torsion", self.torsion),
            ("trace_free", self.trace_free),
            ("gamma0_jacobi", self.gamma0_jacobi),
            ("normal_extension", self.normal_extension),
            ("weyl_cross_check", self.weyl_cross_check),
        ]
    }

    /// Names of the residuals above `tol` (non-finite values always fail).
    pub fn failures(&self, tol: f64) -> Vec<&'static str> {
        self.entries()
            .into_iter()
            .filter(|(_, v)| !(*v <= tol))
            .map(|(k, _)| k)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannianSummary {
    pub scal: f64,
    pub einstein_residual: f64,
    pub sectional_min: f64,
    pub sectional_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSummary {
    pub q_dim: usize,
    pub kappa_minus1_max: f64,
    pub kappa0_max: f64,
    pub kappa1_max: f64,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub algebra_name: String,
    pub dim: usize,
    pub killing: KillingForm,
    pub frame: OrthonormalFrame,
    pub rho: TransferredBracket,
    pub connection: ConnectionForm,
    pub lambda: f64,
    pub curvature: CurvatureFunction,
    pub riemann: CurvatureOperator,
    pub metric: MetricTensors,
    pub residuals: Residuals,
    pub riemannian: RiemannianSummary,
    pub curvature_summary: CurvatureSummary,
    pub holonomy: Closure,
    pub holonomy_report: HolonomyReport,
    pub riemannian_holonomy: Closure,
}

pub fn analyze(alg: &LieAlgebraSpec, options: &AnalysisOptions) -> Result<Analysis> {
    let tol = options.tolerance;
    let killing = assert_compact_semisimple(alg, tol)?;
    let mut frame = orthonormal_frame(&killing)?;
    if let Some(q) = &options.frame_rotation {
        frame = frame.rotated(q, &killing)?;
    }
    let rho = transferred_bracket(alg, &frame)?;
    let connection = normal_connection(&rho)?;
    let curvature = connection_curvature(&connection, &rho)?;
    let r = riemann(&rho);
    let metric = metric_tensors(&rho, &r)?;

    let residuals = Residuals {
        jacobi: jacobi_residual(alg),
        torsion: torsion_residual(&connection, &rho),
        trace_free: trace_free_residual(&curvature),
        gamma0_jacobi: jacobi_gamma0_residual(connection.gamma0()),
        normal_extension: normal_extension_residual(&connection),
        weyl_cross_check: weyl_cross_check(&curvature, &metric.weyl)?,
    };
    let (sectional_min, sectional_max) = sectional_range(&rho);
    let riemannian = RiemannianSummary {
        scal: metric.scal,
        einstein_residual: metric.einstein_residual(),
        sectional_min,
        sectional_max,
    };

    let holonomy = conformal_holonomy(&connection, &curvature, tol)?;
    let holonomy_report = classify(&holonomy.algebra, tol)?;
    let riemannian_holonomy = riemannian_holonomy(&rho, &r, tol)?;

    let curvature_summary = CurvatureSummary {
        q_dim: holonomy.seed_dim,
        kappa_minus1_max: curvature.max_abs_minus1(),
        kappa0_max: curvature.max_abs_0(),
        kappa1_max: curvature.max_abs_1(),
    };

    Ok(Analysis {
        algebra_name: String::from(alg.name()),
        dim: alg.dim(),
        lambda: normal_lambda(alg.dim()),
        killing,
        frame,
        rho,
        connection,
        curvature,
        riemann: r,
        metric,
        residuals,
        riemannian,
        curvature_summary,
        holonomy,
        holonomy_report,
        riemannian_holonomy,
    })
}
