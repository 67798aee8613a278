//! Metric side of a bi-invariant metric, in the orthonormal frame where the
//! metric is the identity: Levi-Civita connection, Riemann operator,
//! sectional, Ricci and scalar curvature, Schouten, Weyl and Cotton-York.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::connection::CurvatureFunction;
use crate::error::{check_len, Error, Result};
use crate::lie_algebra::TransferredBracket;
use crate::linalg::{dot, max_abs, unit_vector, Matrix};

/// `∇_x y = ½ρ(x, y)` for left-invariant fields.
pub fn levi_civita(rho: &TransferredBracket, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    check_len(rho.dim(), x.len())?;
    check_len(rho.dim(), y.len())?;
    Ok(rho.bracket(x, y).into_iter().map(|v| 0.5 * v).collect())
}

/// Pair-antisymmetric family of endomorphisms `z ↦ T(e_i, e_j) z`, stored for `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureOperator {
    n: usize,
    ops: Vec<Matrix>,
}

impl CurvatureOperator {
    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Matrix) -> Self {
        let mut ops = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                ops.push(f(i, j));
            }
        }
        Self { n, ops }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Operators for `i < j`, lexicographic.
    pub fn values(&self) -> &[Matrix] {
        &self.ops
    }

    pub fn get(&self, i: usize, j: usize) -> Matrix {
        let n = self.n;
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self.ops[i * (2 * n - i - 1) / 2 + (j - i - 1)].clone(),
            core::cmp::Ordering::Greater => self.get(j, i).scaled(-1.0),
            core::cmp::Ordering::Equal => Matrix::zeros(n, n),
        }
    }

    /// `T(x, y) = Σ x_i y_j T(e_i, e_j)`.
    pub fn at(&self, x: &[f64], y: &[f64]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let w = x[i] * y[j] - x[j] * y[i];
                if w != 0.0 {
                    m.add_scaled(w, &self.get(i, j));
                }
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.ops.iter().map(Matrix::max_abs).fold(0.0, f64::max)
    }

    /// Largest `|T(e_i,e_j) + T(e_i,e_j)ᵀ|`.
    pub fn metric_antisymmetry_residual(&self) -> f64 {
        self.ops
            .iter()
            .map(Matrix::antisymmetry_residual)
            .fold(0.0, f64::max)
    }

    /// Largest `|T(e_i,e_j)e_k + T(e_j,e_k)e_i + T(e_k,e_i)e_j|`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.n;
        let mut r = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.get(i, j).column(k);
                    let b = self.get(j, k).column(i);
                    let c = self.get(k, i).column(j);
                    for t in 0..n {
                        r = r.max((a[t] + b[t] + c[t]).abs());
                    }
                }
            }
        }
        r
    }

    /// `Ric(a, b) = Σ_i ⟨T(e_i, e_a) e_b, e_i⟩`.
    pub fn ricci_contraction(&self) -> Matrix {
        let n = self.n;
        let mut ric = Matrix::zeros(n, n);
        for a in 0..n {
            for i in 0..n {
                if i == a {
                    continue;
                }
                let t = self.get(i, a);
                for b in 0..n {
                    ric[(a, b)] += t[(i, b)];
                }
            }
        }
        ric
    }
}

/// `R(e_i, e_j) = z ↦ -¼ρ(ρ(e_i,e_j), z)`.
pub fn riemann(rho: &TransferredBracket) -> CurvatureOperator {
    let n = rho.dim();
    let ads: Vec<Matrix> = (0..n).map(|k| rho.ad(k)).collect();
    CurvatureOperator::from_fn(n, |i, j| {
        let w = rho.basis_bracket(i, j);
        let mut m = Matrix::zeros(n, n);
        for (k, wk) in w.iter().enumerate() {
            if *wk != 0.0 {
                m.add_scaled(-0.25 * wk, &ads[k]);
            }
        }
        m
    })
}

/// `¼|ρ(x, y)|²` for an orthonormal pair.
pub fn sectional(rho: &TransferredBracket, x: &[f64], y: &[f64]) -> Result<f64> {
    check_len(rho.dim(), x.len())?;
    check_len(rho.dim(), y.len())?;
    let defect = (dot(x, x) - 1.0)
        .abs()
        .max((dot(y, y) - 1.0).abs())
        .max(dot(x, y).abs());
    if !(defect <= 1e-10) {
        return Err(Error::InvalidInput(format!(
            "sectional curvature needs an orthonormal pair (defect {defect:e})"
        )));
    }
    let w = rho.bracket(x, y);
    Ok(0.25 * dot(&w, &w))
}

/// `(g∗L)(x,y)z = ⟨y,z⟩Lx - ⟨x,z⟩Ly + L(y,z)x - L(x,z)y` for symmetric `L`.
pub fn kulkarni_nomizu(l: &Matrix) -> CurvatureOperator {
    let n = l.rows();
    CurvatureOperator::from_fn(n, |i, j| {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            m[(r, j)] += l[(r, i)];
            m[(r, i)] -= l[(r, j)];
        }
        for c in 0..n {
            m[(i, c)] += l[(j, c)];
            m[(j, c)] -= l[(i, c)];
        }
        m
    })
}

/// Metric tensors of the bi-invariant metric, all in the orthonormal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensors {
    pub ric: Matrix,
    pub scal: f64,
    /// `L = (scal/(2(n-1)) - Ric)/(n-2)`.
    pub schouten: Matrix,
    pub kulkarni_nomizu: CurvatureOperator,
    pub weyl: CurvatureOperator,
    /// `C(e_i, e_j)` components, indexed `[(i * n + j) * n + k]`.
    pub cotton_york: Vec<f64>,
}

impl MetricTensors {
    pub fn n(&self) -> usize {
        self.ric.rows()
    }

    /// `max |Ric - (scal/n) I|`.
    pub fn einstein_residual(&self) -> f64 {
        let n = self.n();
        self.ric
            .max_abs_diff(&Matrix::identity(n).scaled(self.scal / n as f64))
    }

    pub fn cotton_york_max(&self) -> f64 {
        max_abs(&self.cotton_york)
    }

    /// Largest `|Σ_i ⟨W(e_i,a)b, e_i⟩|`.
    pub fn weyl_trace_residual(&self) -> f64 {
        self.weyl.ricci_contraction().max_abs()
    }
}

pub fn metric_tensors(
    rho: &TransferredBracket,
    riemann: &CurvatureOperator,
) -> Result<MetricTensors> {
    let n = rho.dim();
    check_len(n, riemann.n())?;
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "Schouten tensor needs n ≥ 3, got {n}"
        )));
    }
    let nf = n as f64;
    let ric = riemann.ricci_contraction();
    let scal = ric.trace();
    let mut schouten = Matrix::identity(n).scaled(scal / (2.0 * (nf - 1.0)));
    schouten.sub_assign(&ric);
    let schouten = schouten.scaled(1.0 / (nf - 2.0));

    let kn = kulkarni_nomizu(&schouten);
    // Schouten here is minus the usual one, so the trace-free part is R + g∗L.
    let weyl = CurvatureOperator::from_fn(n, |i, j| {
        let mut w = riemann.get(i, j);
        w.add_assign(&kn.get(i, j));
        w
    });

    // C(x,y) = (∇_x L)y - (∇_y L)x with (∇_x L)y = ∇_x(Ly) - L(∇_x y)
    let nabla_l = |x: usize, y: usize| -> Vec<f64> {
        let ex = unit_vector(n, x);
        let ly = schouten.column(y);
        let a = levi_civita(rho, &ex, &ly).expect("dimensions agree");
        let b =
            schouten.mul_vec(&levi_civita(rho, &ex, &unit_vector(n, y)).expect("dimensions agree"));
        a.iter().zip(&b).map(|(p, q)| p - q).collect()
    };
    let mut cotton_york = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let a = nabla_l(i, j);
            let b = nabla_l(j, i);
            for k in 0..n {
                cotton_york[(i * n + j) * n + k] = a[k] - b[k];
            }
        }
    }

    Ok(MetricTensors {
        ric,
        scal,
        schouten,
        kulkarni_nomizu: kn,
        weyl,
        cotton_york,
    })
}

/// Largest mismatch between `κ_0(e_i,e_j)` (rotation and scale) and `W(e_i,e_j)`.
pub fn weyl_cross_check(kappa: &CurvatureFunction, weyl: &CurvatureOperator) -> Result<f64> {
    let n = kappa.n();
    check_len(n, weyl.n())?;
    let mut r = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let p = kappa.parts(i, j);
            r = r
                .max(p.rotation.max_abs_diff(&weyl.get(i, j)))
                .max(p.scale.abs());
        }
    }
    Ok(r)
}

/// Smallest and largest sectional curvature over coordinate planes.
pub fn sectional_range(rho: &TransferredBracket) -> (f64, f64) {
    let n = rho.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let w = rho.basis_bracket(i, j);
            let s = 0.25 * dot(&w, &w);
            lo = lo.min(s);
            hi = hi.max(s);
        }
    }
    (lo, hi)
}
