//! Connection forms `γ = γ_0 + γ_1 : m_{-1} → p`, their curvature function
//! and the residuals of the normalization conditions.
//!
//! Brackets between graded pieces are always evaluated as matrix commutators
//! of the block embeddings in [`crate::mobius`].

use alloc::format;
use alloc::vec::Vec;

use crate::error::{check_len, Error, Result};
use crate::lie_algebra::TransferredBracket;
use crate::linalg::{max_abs, unit_vector, Matrix};
use crate::mobius::{GradedParts, MobiusElement};

/// `γ_1` coefficient of the normal connection: `-1/(8(n-1))`.
pub fn normal_lambda(n: usize) -> f64 {
    -1.0 / (8.0 * (n as f64 - 1.0))
}

/// Linear map `m_{-1} → p` stored on the basis `e_i`.
///
/// `γ_0(e_i)` lies in `so(n)` (no scale part), `γ_1(e_i)` in `m_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionForm {
    n: usize,
    gamma0: Vec<Matrix>,
    gamma1: Vec<Vec<f64>>,
}

impl ConnectionForm {
    pub fn new(gamma0: Vec<Matrix>, gamma1: Vec<Vec<f64>>) -> Result<Self> {
        let n = gamma0.len();
        check_len(n, gamma1.len())?;
        for (i, g) in gamma0.iter().enumerate() {
            check_len(n, g.rows())?;
            check_len(n, g.cols())?;
            let r = g.antisymmetry_residual();
            if !(r <= 1e-12 * g.max_abs().max(1.0)) {
                return Err(Error::InvalidInput(format!(
                    "gamma0[{i}] is not antisymmetric (residual {r:e})"
                )));
            }
        }
        for l in &gamma1 {
            check_len(n, l.len())?;
        }
        Ok(Self { n, gamma0, gamma1 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma0(&self) -> &[Matrix] {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &[Vec<f64>] {
        &self.gamma1
    }

    /// `γ_0(a) = Σ a_i γ_0(e_i)`.
    pub fn gamma0_of(&self, a: &[f64]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (ai, g) in a.iter().zip(&self.gamma0) {
            if *ai != 0.0 {
                m.add_scaled(*ai, g);
            }
        }
        m
    }

    pub fn gamma1_of(&self, a: &[f64]) -> Vec<f64> {
        let mut l = alloc::vec![0.0; self.n];
        for (ai, g) in a.iter().zip(&self.gamma1) {
            for (x, y) in l.iter_mut().zip(g) {
                *x += ai * y;
            }
        }
        l
    }

    /// `(id + γ)(a)` as an element of `so(1, n+1)`.
    pub fn lift(&self, a: &[f64]) -> MobiusElement {
        GradedParts {
            m_minus1: a.to_vec(),
            rotation: self.gamma0_of(a),
            scale: 0.0,
            m_1: self.gamma1_of(a),
        }
        .to_element()
    }

    /// The generators `e_i + γ_0(e_i) + γ_1(e_i)` spanning `Λ(m_{-1})`.
    pub fn generators(&self) -> Vec<MobiusElement> {
        (0..self.n)
            .map(|i| self.lift(&unit_vector(self.n, i)))
            .collect()
    }
}

/// `γ_nor(a) = ½ρ(a,·) + λ a*` with `λ = -1/(8(n-1))`.
pub fn normal_connection(rho: &TransferredBracket) -> Result<ConnectionForm> {
    let n = rho.dim();
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "conformal setting needs dimension n ≥ 3, got {n}"
        )));
    }
    let lambda = normal_lambda(n);
    let gamma0 = (0..n).map(|i| rho.ad(i).scaled(0.5)).collect();
    let gamma1 = (0..n)
        .map(|i| unit_vector(n, i).iter().map(|x| lambda * x).collect())
        .collect();
    Ok(ConnectionForm { n, gamma0, gamma1 })
}

fn pair_offset(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Antisymmetric `κ : m_{-1} × m_{-1} → so(1, n+1)` stored for `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureFunction {
    n: usize,
    values: Vec<MobiusElement>,
}

impl CurvatureFunction {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `κ(e_i, e_j)` for all `i < j`, in lexicographic order.
    pub fn values(&self) -> &[MobiusElement] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> MobiusElement {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self.values[pair_offset(self.n, i, j)].clone(),
            core::cmp::Ordering::Greater => {
                let v = &self.values[pair_offset(self.n, j, i)];
                MobiusElement::from_matrix_unchecked(v.matrix().scaled(-1.0))
            }
            core::cmp::Ordering::Equal => MobiusElement::zero(self.n),
        }
    }

    pub fn parts(&self, i: usize, j: usize) -> GradedParts {
        self.get(i, j).grade_project()
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .map(MobiusElement::max_abs)
            .fold(0.0, f64::max)
    }

    /// Largest entry of `κ_{-1}`.
    pub fn max_abs_minus1(&self) -> f64 {
        self.fold_parts(|p| max_abs(&p.m_minus1))
    }

    /// Largest entry of `κ_0` (rotation and scale).
    pub fn max_abs_0(&self) -> f64 {
        self.fold_parts(|p| p.rotation.max_abs().max(p.scale.abs()))
    }

    /// Largest entry of `κ_1`.
    pub fn max_abs_1(&self) -> f64 {
        self.fold_parts(|p| max_abs(&p.m_1))
    }

    fn fold_parts(&self, f: impl Fn(&GradedParts) -> f64) -> f64 {
        self.values
            .iter()
            .map(|v| f(&v.grade_project()))
            .fold(0.0, f64::max)
    }
}

/// `κ(a,b) = -(id+γ)ρ(a,b) + [(id+γ)a, (id+γ)b]` on basis pairs.
pub fn connection_curvature(
    gamma: &ConnectionForm,
    rho: &TransferredBracket,
) -> Result<CurvatureFunction> {
    let n = gamma.n;
    check_len(n, rho.dim())?;
    let lifts = gamma.generators();
    let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut k = lifts[i].matrix().commutator(lifts[j].matrix());
            k.sub_assign(gamma.lift(&rho.basis_bracket(i, j)).matrix());
            values.push(MobiusElement::from_matrix_unchecked(k));
        }
    }
    Ok(CurvatureFunction { n, values })
}

/// `max_{i<j} |ρ(e_i,e_j) + γ_0(e_j)e_i - γ_0(e_i)e_j|`.
pub fn torsion_residual(gamma: &ConnectionForm, rho: &TransferredBracket) -> f64 {
    let n = gamma.n;
    let mut r = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let rij = rho.basis_bracket(i, j);
            let gji = gamma.gamma0[j].column(i);
            let gij = gamma.gamma0[i].column(j);
            for k in 0..n {
                r = r.max((rij[k] + gji[k] - gij[k]).abs());
            }
        }
    }
    r
}

/// `max_{a,b} |Σ_i ⟨κ_0(e_i,a)·b, e_i⟩|` with `κ_0` acting through `A + a·id`.
pub fn trace_free_residual(kappa: &CurvatureFunction) -> f64 {
    let n = kappa.n;
    let mut r = 0.0f64;
    for a in 0..n {
        let parts: Vec<GradedParts> = (0..n).map(|i| kappa.parts(i, a)).collect();
        for b in 0..n {
            let t: f64 = parts
                .iter()
                .enumerate()
                .map(|(i, p)| p.rotation[(i, b)] + if i == b { p.scale } else { 0.0 })
                .sum();
            r = r.max(t.abs());
        }
    }
    r
}

/// `[γ_0(e_i), e_j] + [e_i, γ_0(e_j)] = γ_0(e_i)e_j - γ_0(e_j)e_i`.
fn gamma0_bracket(gamma0: &[Matrix], i: usize, j: usize) -> Vec<f64> {
    let a = gamma0[i].column(j);
    let b = gamma0[j].column(i);
    a.iter().zip(&b).map(|(x, y)| x - y).collect()
}

fn gamma0_combination(gamma0: &[Matrix], a: &[f64]) -> Matrix {
    let n = gamma0.len();
    let mut m = Matrix::zeros(n, n);
    for (ai, g) in a.iter().zip(gamma0) {
        if *ai != 0.0 {
            m.add_scaled(*ai, g);
        }
    }
    m
}

/// Cyclic sum `Σ [γ_0[e_i,γ_0(e_j)] + γ_0[γ_0(e_i),e_j] - [γ_0(e_i),γ_0(e_j)], e_k]`,
/// maximised over basis triples. Zero exactly when `γ_0` defines a Lie bracket.
pub fn jacobi_gamma0_residual(gamma0: &[Matrix]) -> f64 {
    let n = gamma0.len();
    if n < 3 {
        return 0.0;
    }
    let mut defect = alloc::vec![None; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let mut x = gamma0_combination(gamma0, &gamma0_bracket(gamma0, i, j));
            x.sub_assign(&gamma0[i].commutator(&gamma0[j]));
            defect[i * n + j] = Some(x);
        }
    }
    let col = |i: usize, j: usize, k: usize| -> Vec<f64> {
        if i < j {
            defect[i * n + j].as_ref().expect("filled").column(k)
        } else {
            defect[j * n + i]
                .as_ref()
                .expect("filled")
                .column(k)
                .iter()
                .map(|x| -x)
                .collect()
        }
    };
    let mut r = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (col(i, j, k), col(j, k, i), col(k, i, j));
                for t in 0..n {
                    r = r.max((a[t] + b[t] + c[t]).abs());
                }
            }
        }
    }
    r
}

/// The three traces entering the normal-extension condition, as `n × n`
/// matrices indexed by `(a, b)`:
/// `Σ_i ([e_i,γ_1(a)] + [γ_1(e_i),a])(b)(e_i*)`,
/// `Σ_i γ_0([e_i,γ_0(a)] + [γ_0(e_i),a])(b)(e_i*)` and
/// `Σ_i [γ_0(e_i),γ_0(a)](b)(e_i*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalExtensionTraces {
    pub gamma1_trace: Matrix,
    pub gamma0_rho_trace: Matrix,
    pub gamma0_commutator_trace: Matrix,
}

impl NormalExtensionTraces {
    /// `|LHS - RHS|` entrywise maximum.
    pub fn residual(&self) -> f64 {
        let mut rhs = self.gamma0_rho_trace.clone();
        rhs.sub_assign(&self.gamma0_commutator_trace);
        self.gamma1_trace.max_abs_diff(&rhs)
    }
}

pub fn normal_extension_traces(gamma: &ConnectionForm) -> NormalExtensionTraces {
    let n = gamma.n;
    let e = |i: usize| MobiusElement::embed_m_minus1(&unit_vector(n, i));
    let g1 = |i: usize| MobiusElement::embed_m1(&gamma.gamma1[i]);
    let mut t1 = Matrix::zeros(n, n);
    let mut t2 = Matrix::zeros(n, n);
    let mut t3 = Matrix::zeros(n, n);
    for a in 0..n {
        for i in 0..n {
            let mut p = e(i).matrix().commutator(g1(a).matrix());
            p.add_assign(&g1(i).matrix().commutator(e(a).matrix()));
            let p0 = MobiusElement::from_matrix_unchecked(p).grade_project();

            let rho_ia = gamma0_bracket(&gamma.gamma0, i, a);
            let g_rho = gamma0_combination(&gamma.gamma0, &rho_ia);
            let comm = gamma.gamma0[i].commutator(&gamma.gamma0[a]);

            for b in 0..n {
                t1[(a, b)] += p0.p0_apply(&unit_vector(n, b))[i];
                t2[(a, b)] += g_rho[(i, b)];
                t3[(a, b)] += comm[(i, b)];
            }
        }
    }
    NormalExtensionTraces {
        gamma1_trace: t1,
        gamma0_rho_trace: t2,
        gamma0_commutator_trace: t3,
    }
}

/// Largest mismatch between both sides of the normal-extension condition.
pub fn normal_extension_residual(gamma: &ConnectionForm) -> f64 {
    normal_extension_traces(gamma).residual()
}

/// `max |γ_0(x)ρ(a,b) - ρ(γ_0(x)a, b) - ρ(a, γ_0(x)b)|` over basis triples.
pub fn derivation_residual(gamma: &ConnectionForm, rho: &TransferredBracket) -> f64 {
    let n = gamma.n;
    let mut r = 0.0f64;
    for x in 0..n {
        let d = &gamma.gamma0[x];
        for a in 0..n {
            for b in a + 1..n {
                let lhs = d.mul_vec(&rho.basis_bracket(a, b));
                let r1 = rho.bracket(&d.column(a), &unit_vector(n, b));
                let r2 = rho.bracket(&unit_vector(n, a), &d.column(b));
                for k in 0..n {
                    r = r.max((lhs[k] - r1[k] - r2[k]).abs());
                }
            }
        }
    }
    r
}
