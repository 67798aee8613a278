//! Holonomy algebras as bracket closures of curvature values under the
//! connection image, plus the tractor/trace-form analysis of the result.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::connection::{ConnectionForm, CurvatureFunction};
use crate::error::{Error, Result};
use crate::lie_algebra::TransferredBracket;
use crate::linalg::{max_abs, symmetric_eigenvalues, Matrix, RowEchelon};
use crate::mobius::{lorentz_product, membership_residual};
use crate::riemannian::CurvatureOperator;

/// Which matrix algebra a subspace lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// `so(1, n+1)` as `(n+2) × (n+2)` matrices.
    Mobius(usize),
    /// `so(n)` as `n × n` matrices.
    Orthogonal(usize),
    /// Square matrices of the given size.
    General(usize),
}

impl Ambient {
    pub fn size(self) -> usize {
        match self {
            Ambient::Mobius(n) => n + 2,
            Ambient::Orthogonal(n) | Ambient::General(n) => n,
        }
    }

    /// Dimension of the ambient algebra.
    pub fn algebra_dim(self) -> usize {
        match self {
            Ambient::Mobius(n) => (n + 2) * (n + 1) / 2,
            Ambient::Orthogonal(n) => n * n.saturating_sub(1) / 2,
            Ambient::General(n) => n * n,
        }
    }

    /// Membership defect of a matrix in the ambient algebra.
    pub fn membership_residual(self, m: &Matrix) -> f64 {
        match self {
            Ambient::Mobius(_) => membership_residual(m),
            Ambient::Orthogonal(_) => m.antisymmetry_residual(),
            Ambient::General(_) => 0.0,
        }
    }
}

/// Span of matrices with a basis of linearly independent elements.
#[derive(Debug, Clone)]
pub struct MatrixSubspace {
    ambient: Ambient,
    echelon: RowEchelon,
    basis: Vec<Matrix>,
}

impl MatrixSubspace {
    fn from_echelon(ambient: Ambient, echelon: RowEchelon) -> Self {
        let s = ambient.size();
        let basis = echelon
            .rows()
            .iter()
            .map(|r| Matrix::from_vec(s, s, r.clone()).expect("row length is size²"))
            .collect();
        Self {
            ambient,
            echelon,
            basis,
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Largest leftover entry of `m` after projecting out the span.
    pub fn residual(&self, m: &Matrix) -> f64 {
        self.echelon.residual(m.as_slice())
    }

    /// Largest membership defect of the basis in the ambient algebra.
    pub fn membership_residual(&self) -> f64 {
        self.basis
            .iter()
            .map(|b| self.ambient.membership_residual(b))
            .fold(0.0, f64::max)
    }

    /// Worst relative residual of `[X, Y]` over basis pairs.
    pub fn bracket_closure_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, x) in self.basis.iter().enumerate() {
            for y in &self.basis[a + 1..] {
                let c = x.commutator(y);
                let scale = c.max_abs().max(1.0);
                worst = worst.max(self.residual(&c) / scale);
            }
        }
        worst
    }

    pub fn is_bracket_closed(&self, tol: f64) -> bool {
        self.bracket_closure_residual() <= tol
    }
}

/// Numerical span of `mats`; rows are kept while their pivot exceeds
/// `tol · max|input|`.
pub fn span_reduce(mats: &[Matrix], tol: f64) -> MatrixSubspace {
    let size = mats.first().map_or(0, Matrix::rows);
    let scale = mats.iter().map(Matrix::max_abs).fold(0.0, f64::max);
    let mut e = RowEchelon::new(size * size, tol * scale);
    for m in mats {
        e.insert(m.as_slice());
    }
    MatrixSubspace::from_echelon(Ambient::General(size), e)
}

/// Result of `h ↦ h + [generators, h]` iterated to a fixed point.
#[derive(Debug, Clone)]
pub struct Closure {
    pub algebra: MatrixSubspace,
    /// Dimension of the seed span.
    pub seed_dim: usize,
    /// Dimension after each round, starting with the seed span.
    pub round_dims: Vec<usize>,
    pub closure_residual: f64,
}

impl Closure {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Seeds spanned, then repeatedly bracketed with every generator. Only the
/// directions added in the previous round are bracketed again, which spans
/// the same space as bracketing all of `h_k`.
pub fn bracket_closure(
    ambient: Ambient,
    seeds: &[Matrix],
    generators: &[Matrix],
    tol: f64,
) -> Result<Closure> {
    let size = ambient.size();
    let scale = seeds
        .iter()
        .chain(generators)
        .map(Matrix::max_abs)
        .fold(0.0, f64::max);
    let mut echelon = RowEchelon::new(size * size, tol * scale);
    let mut frontier: Vec<Matrix> = Vec::new();
    for s in seeds {
        if let Some(row) = echelon.insert(s.as_slice()) {
            frontier.push(Matrix::from_vec(size, size, row.to_vec())?);
        }
    }
    let seed_dim = echelon.rank();
    let mut round_dims = alloc::vec![seed_dim];
    let max_rounds = ambient.algebra_dim();
    let mut round = 0;
    while !frontier.is_empty() {
        round += 1;
        if round > max_rounds + 1 {
            return Err(Error::NoConvergence {
                iterations: max_rounds,
                dim: echelon.rank(),
            });
        }
        let mut next = Vec::new();
        for g in generators {
            for f in &frontier {
                let c = g.commutator(f);
                if let Some(row) = echelon.insert(c.as_slice()) {
                    next.push(Matrix::from_vec(size, size, row.to_vec())?);
                }
            }
        }
        round_dims.push(echelon.rank());
        frontier = next;
    }
    let algebra = MatrixSubspace::from_echelon(ambient, echelon);
    let closure_residual = algebra.bracket_closure_residual();
    Ok(Closure {
        algebra,
        seed_dim,
        round_dims,
        closure_residual,
    })
}

/// `hol = q + [Λ, q] + [Λ, [Λ, q]] + ⋯` inside `so(1, n+1)`, with `q` the
/// span of curvature values and `Λ` the lifts `e_i + γ(e_i)`.
pub fn conformal_holonomy(
    gamma: &ConnectionForm,
    kappa: &CurvatureFunction,
    tol: f64,
) -> Result<Closure> {
    crate::error::check_len(gamma.n(), kappa.n())?;
    let seeds: Vec<Matrix> = kappa.values().iter().map(|k| k.matrix().clone()).collect();
    let gens: Vec<Matrix> = gamma
        .generators()
        .into_iter()
        .map(|g| g.into_matrix())
        .collect();
    bracket_closure(Ambient::Mobius(gamma.n()), &seeds, &gens, tol)
}

/// `hol(g) = 𝔯 + [LC, 𝔯] + ⋯` inside `so(n)`, with `LC = {½ρ(e_i, ·)}`.
pub fn riemannian_holonomy(
    rho: &TransferredBracket,
    riemann: &CurvatureOperator,
    tol: f64,
) -> Result<Closure> {
    let n = rho.dim();
    crate::error::check_len(n, riemann.n())?;
    let gens: Vec<Matrix> = (0..n).map(|i| rho.ad(i).scaled(0.5)).collect();
    bracket_closure(Ambient::Orthogonal(n), riemann.values(), &gens, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalType {
    Timelike,
    Spacelike,
    Null,
}

impl CausalType {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalType::Timelike => "timelike",
            CausalType::Spacelike => "spacelike",
            CausalType::Null => "null",
        }
    }
}

/// Vectors of `R^{1,n+1}` annihilated by every element of the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizedTractors {
    pub basis: Vec<Vec<f64>>,
    pub types: Vec<CausalType>,
}

/// Classifies by the sign of `⟨v,v⟩ = 2v_0v_{n+1} + Σv_i²` against
/// `tol · max|v|²`.
pub fn causal_type(v: &[f64], tol: f64) -> CausalType {
    let q = lorentz_product(v, v);
    let m = max_abs(v);
    let t = tol * m * m;
    if q < -t {
        CausalType::Timelike
    } else if q > t {
        CausalType::Spacelike
    } else {
        CausalType::Null
    }
}

pub fn stabilized_tractors(hol: &MatrixSubspace, tol: f64) -> StabilizedTractors {
    let size = hol.ambient().size();
    let scale = hol.basis().iter().map(Matrix::max_abs).fold(0.0, f64::max);
    let mut e = RowEchelon::new(size, tol * scale);
    for b in hol.basis() {
        for r in 0..size {
            e.insert(b.row(r));
        }
    }
    let basis = e.nullspace();
    let types = basis.iter().map(|v| causal_type(v, tol)).collect();
    StabilizedTractors { basis, types }
}

/// Inertia `(positive, negative, zero)` of `tr(XY)` restricted to the span.
pub fn trace_form_signature(hol: &MatrixSubspace, tol: f64) -> (usize, usize, usize) {
    let d = hol.dim();
    let mut g = Matrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let t = hol.basis()[a].mul(&hol.basis()[b]).trace();
            g[(a, b)] = t;
            g[(b, a)] = t;
        }
    }
    let ev = symmetric_eigenvalues(&g);
    let cut = tol * max_abs(&ev);
    ev.iter().fold((0, 0, 0), |(p, q, z), &x| {
        if x > cut {
            (p + 1, q, z)
        } else if x < -cut {
            (p, q + 1, z)
        } else {
            (p, q, z + 1)
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyReport {
    pub algebra_dim: usize,
    pub closed_under_bracket: bool,
    pub stabilized_tractor_dim: usize,
    pub tractor_causal_types: Vec<CausalType>,
    pub killing_signature: (usize, usize, usize),
    pub candidate_name: Option<String>,
}

/// Fills a [`HolonomyReport`] for a subalgebra of `so(1, n+1)`.
///
/// Names: `trivial` for dimension 0; `so(n+1)` for a negative definite
/// algebra of that dimension fixing exactly one timelike line; `so(1,n+1)`
/// for the full algebra.
pub fn classify(hol: &MatrixSubspace, tol: f64) -> Result<HolonomyReport> {
    let n = match hol.ambient() {
        Ambient::Mobius(n) => n,
        other => {
            return Err(Error::Contract(format!(
                "classify needs a Möbius subalgebra, got {other:?}"
            )))
        }
    };
    let closure = hol.bracket_closure_residual();
    if !(closure <= tol) {
        return Err(Error::Contract(format!(
            "holonomy span is not closed under brackets (residual {closure:e})"
        )));
    }
    let tractors = stabilized_tractors(hol, tol);
    let signature = trace_form_signature(hol, tol);
    let dim = hol.dim();
    let candidate_name = if dim == 0 {
        Some(String::from("trivial"))
    } else if dim == (n + 1) * n / 2
        && tractors.types == [CausalType::Timelike]
        && signature == (0, dim, 0)
    {
        Some(format!("so({})", n + 1))
    } else if dim == (n + 2) * (n + 1) / 2 {
        Some(format!("so(1,{})", n + 1))
    } else {
        None
    };
    Ok(HolonomyReport {
        algebra_dim: dim,
        closed_under_bracket: true,
        stabilized_tractor_dim: tractors.basis.len(),
        tractor_causal_types: tractors.types,
        killing_signature: signature,
        candidate_name,
    })
}
