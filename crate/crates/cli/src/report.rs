//! Serializable mirror of an [`Analysis`] plus the text rendering.
//!
//! Floats are written with 17 significant digits in exponent form so that
//! repeated runs are byte-identical.

use std::fmt::Write as _;

use clap::ValueEnum;
use confhol::analysis::Residuals;
use confhol::Analysis;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Section {
    Connection,
    Curvature,
    Riemannian,
    Holonomy,
    All,
}

impl Section {
    fn shows(self, other: Section) -> bool {
        self == Section::All || self == other
    }
}

/// `f64` rendered as `d.dddddddddddddddde±x`; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed(pub f64);

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw =
            RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualsReport {
    pub jacobi: Fixed,
    pub torsion: Fixed,
    pub trace_free: Fixed,
    pub gamma0_jacobi: Fixed,
    pub normal_extension: Fixed,
    pub weyl_cross_check: Fixed,
}

#[derive(Debug, Clone, Serialize)]
pub struct RiemannianReport {
    pub scal: Fixed,
    pub einstein_residual: Fixed,
    pub sectional_min: Fixed,
    pub sectional_max: Fixed,
    pub cotton_york_max: Fixed,
    pub weyl_trace_residual: Fixed,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub q_dim: usize,
    pub kappa_minus1_max: Fixed,
    pub kappa0_max: Fixed,
    pub kappa1_max: Fixed,
}

#[derive(Debug, Clone, Serialize)]
pub struct HolonomyJson {
    pub algebra_dim: usize,
    pub closed_under_bracket: bool,
    pub stabilized_tractor_dim: usize,
    pub tractor_causal_types: Vec<&'static str>,
    pub killing_signature: [usize; 3],
    pub candidate_name: Option<String>,
    pub round_dims: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub algebra: AlgebraInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<Fixed>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Fixed>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub riemannian: Option<RiemannianReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holonomy: Option<HolonomyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub riemannian_holonomy_dim: Option<usize>,
}

fn residuals(r: &Residuals) -> ResidualsReport {
    ResidualsReport {
        jacobi: Fixed(r.jacobi),
        torsion: Fixed(r.torsion),
        trace_free: Fixed(r.trace_free),
        gamma0_jacobi: Fixed(r.gamma0_jacobi),
        normal_extension: Fixed(r.normal_extension),
        weyl_cross_check: Fixed(r.weyl_cross_check),
    }
}

impl AnalysisReport {
    pub fn new(a: &Analysis, section: Section) -> Self {
        let conn = section.shows(Section::Connection);
        let riem = section.shows(Section::Riemannian);
        let h = &a.holonomy_report;
        Self {
            algebra: AlgebraInfo {
                name: a.algebra_name.clone(),
                dim: a.dim,
            },
            frame: conn.then(|| {
                a.frame
                    .theta()
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(Fixed).collect())
                    .collect()
            }),
            lambda: conn.then_some(Fixed(a.lambda)),
            residuals: conn.then(|| residuals(&a.residuals)),
            riemannian: riem.then(|| RiemannianReport {
                scal: Fixed(a.riemannian.scal),
                einstein_residual: Fixed(a.riemannian.einstein_residual),
                sectional_min: Fixed(a.riemannian.sectional_min),
                sectional_max: Fixed(a.riemannian.sectional_max),
                cotton_york_max: Fixed(a.metric.cotton_york_max()),
                weyl_trace_residual: Fixed(a.metric.weyl_trace_residual()),
            }),
            curvature: section
                .shows(Section::Curvature)
                .then_some(CurvatureReport {
                    q_dim: a.curvature_summary.q_dim,
                    kappa_minus1_max: Fixed(a.curvature_summary.kappa_minus1_max),
                    kappa0_max: Fixed(a.curvature_summary.kappa0_max),
                    kappa1_max: Fixed(a.curvature_summary.kappa1_max),
                }),
            holonomy: section.shows(Section::Holonomy).then(|| HolonomyJson {
                algebra_dim: h.algebra_dim,
                closed_under_bracket: h.closed_under_bracket,
                stabilized_tractor_dim: h.stabilized_tractor_dim,
                tractor_causal_types: h.tractor_causal_types.iter().map(|t| t.as_str()).collect(),
                killing_signature: [
                    h.killing_signature.0,
                    h.killing_signature.1,
                    h.killing_signature.2,
                ],
                candidate_name: h.candidate_name.clone(),
                round_dims: a.holonomy.round_dims.clone(),
            }),
            riemannian_holonomy_dim: riem.then_some(a.riemannian_holonomy.dim()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Two-column table in a fixed order.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: String| rows.push((k.to_string(), v));
        let f = |x: Fixed| format!("{:.6e}", x.0);
        push("algebra", self.algebra.name.clone());
        push("dim", self.algebra.dim.to_string());
        if let Some(l) = self.lambda {
            push("lambda", format!("{:.17}", l.0));
        }
        if let Some(r) = &self.residuals {
            push("residual.jacobi", f(r.jacobi));
            push("residual.torsion", f(r.torsion));
            push("residual.trace_free", f(r.trace_free));
            push("residual.gamma0_jacobi", f(r.gamma0_jacobi));
            push("residual.normal_extension", f(r.normal_extension));
            push("residual.weyl_cross_check", f(r.weyl_cross_check));
        }
        if let Some(r) = &self.riemannian {
            push("scal", format!("{:.15}", r.scal.0));
            push("einstein_residual", f(r.einstein_residual));
            push(
                "sectional_range",
                format!("[{:.6}, {:.6}]", r.sectional_min.0, r.sectional_max.0),
            );
            push("cotton_york_max", f(r.cotton_york_max));
            push("weyl_trace_residual", f(r.weyl_trace_residual));
        }
        if let Some(d) = self.riemannian_holonomy_dim {
            push("riemannian_holonomy_dim", d.to_string());
        }
        if let Some(c) = &self.curvature {
            push("q_dim", c.q_dim.to_string());
            push("kappa_minus1_max", f(c.kappa_minus1_max));
            push("kappa0_max", f(c.kappa0_max));
            push("kappa1_max", f(c.kappa1_max));
        }
        if let Some(h) = &self.holonomy {
            push("holonomy_dim", h.algebra_dim.to_string());
            push("closed_under_bracket", h.closed_under_bracket.to_string());
            push("round_dims", format!("{:?}", h.round_dims));
            push(
                "stabilized_tractor_dim",
                h.stabilized_tractor_dim.to_string(),
            );
            push("tractor_causal_types", h.tractor_causal_types.join(","));
            let [p, n, z] = h.killing_signature;
            push("trace_form_signature", format!("(+{p}, -{n}, 0:{z})"));
            push(
                "candidate",
                h.candidate_name.clone().unwrap_or_else(|| "-".into()),
            );
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}
