//! Real Lie algebras given by structure constants, their Killing form, the
//! orthonormal frame of `-B`, and the bracket transported onto `m_{-1}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_len, Error, Result};
use crate::linalg::{cholesky, dot, max_abs, unit_vector, Matrix};

/// Antisymmetric rank-3 tensor `c[i][j][k]` with `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
///
/// Only pairs `i < j` are stored; the lower half is mirrored with a sign on
/// access, so antisymmetry holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor {
    dim: usize,
    data: Vec<f64>,
}

impl StructureTensor {
    pub fn zeros(dim: usize) -> Self {
        let pairs = dim * dim.saturating_sub(1) / 2;
        Self {
            dim,
            data: vec![0.0; pairs * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        (i * (2 * self.dim - i - 1) / 2 + (j - i - 1)) * self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self.data[self.offset(i, j) + k],
            core::cmp::Ordering::Greater => -self.data[self.offset(j, i) + k],
            core::cmp::Ordering::Equal => 0.0,
        }
    }

    /// Sets `c[i][j][k] = v` (and hence `c[j][i][k] = -v`). `i == j` is ignored.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => {
                let o = self.offset(i, j);
                self.data[o + k] = v;
            }
            core::cmp::Ordering::Greater => {
                let o = self.offset(j, i);
                self.data[o + k] = -v;
            }
            core::cmp::Ordering::Equal => {}
        }
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<f64> {
        (0..self.dim).map(|k| self.get(i, j, k)).collect()
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w == 0.0 || i == j {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ [b_i, y]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] = self.get(i, j, k);
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    /// Worst cyclic Jacobi sum over basis triples, with the triple.
    pub fn jacobi_defect(&self) -> (f64, [usize; 3]) {
        let n = self.dim;
        let brackets: Vec<Vec<f64>> = (0..n * n)
            .map(|p| self.basis_bracket(p / n, p % n))
            .collect();
        let mut worst = (0.0, [0, 0, 0]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = 0.0f64;
                    for out in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += brackets[i * n + j][m] * self.get(m, k, out)
                                + brackets[j * n + k][m] * self.get(m, i, out)
                                + brackets[k * n + i][m] * self.get(m, j, out);
                        }
                        r = r.max(s.abs());
                    }
                    if r > worst.0 {
                        worst = (r, [i, j, k]);
                    }
                }
            }
        }
        worst
    }
}

/// `(i, j, [(k, c)])`: `[b_i, b_j] = Σ c b_k`.
pub type SparseBracket = (usize, usize, Vec<(usize, f64)>);

/// A finite-dimensional real Lie algebra on an ordered abstract basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraSpec {
    name: String,
    structure: StructureTensor,
}

impl LieAlgebraSpec {
    pub fn new(name: impl Into<String>, structure: StructureTensor) -> Result<Self> {
        if structure.dim() == 0 {
            return Err(Error::InvalidInput(
                "algebra dimension must be positive".into(),
            ));
        }
        Ok(Self {
            name: name.into(),
            structure,
        })
    }

    /// Builds an algebra from sparse bracket entries `(i, j, [(k, c)])`.
    ///
    /// Indices are 0-based, only `i < j` is allowed, each pair may appear
    /// once, and missing pairs are zero brackets.
    pub fn from_brackets(
        name: impl Into<String>,
        dim: usize,
        brackets: &[SparseBracket],
    ) -> Result<Self> {
        let mut structure = StructureTensor::zeros(dim);
        let mut seen = vec![false; dim * dim];
        for (entry, (i, j, terms)) in brackets.iter().enumerate() {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::InvalidInput(format!(
                    "brackets[{entry}]: index ({i}, {j}) out of range for dim {dim}"
                )));
            }
            if i >= j {
                return Err(Error::InvalidInput(format!(
                    "brackets[{entry}]: requires i < j, got ({i}, {j})"
                )));
            }
            if core::mem::replace(&mut seen[i * dim + j], true) {
                return Err(Error::InvalidInput(format!(
                    "brackets[{entry}]: duplicate pair ({i}, {j})"
                )));
            }
            for (t, &(k, c)) in terms.iter().enumerate() {
                if k >= dim {
                    return Err(Error::InvalidInput(format!(
                        "brackets[{entry}].terms[{t}]: k = {k} out of range for dim {dim}"
                    )));
                }
                if !c.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "brackets[{entry}].terms[{t}]: coefficient is not finite"
                    )));
                }
                let prev = structure.get(i, j, k);
                structure.set(i, j, k, prev + c);
            }
        }
        Self::new(name, structure)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn structure(&self) -> &StructureTensor {
        &self.structure
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim(), x.len())?;
        check_len(self.dim(), y.len())?;
        Ok(self.structure.bracket(x, y))
    }
}

/// `max |[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]|` over basis triples.
pub fn jacobi_residual(alg: &LieAlgebraSpec) -> f64 {
    alg.structure.jacobi_defect().0
}

/// Killing form `B_ij = tr(ad_i ad_j)` in the algebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct KillingForm {
    matrix: Matrix,
}

impl KillingForm {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        dot(x, &self.matrix.mul_vec(y))
    }

    /// `max |B([b_i,b_j],b_k) - B(b_i,[b_j,b_k])|` over basis triples.
    pub fn ad_invariance_residual(&self, alg: &LieAlgebraSpec) -> f64 {
        let n = alg.dim();
        let mut r = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let ij = alg.structure.basis_bracket(i, j);
                for k in 0..n {
                    let jk = alg.structure.basis_bracket(j, k);
                    let lhs = self.eval(&ij, &unit_vector(n, k));
                    let rhs = self.eval(&unit_vector(n, i), &jk);
                    r = r.max((lhs - rhs).abs());
                }
            }
        }
        r
    }
}

pub fn killing_form(alg: &LieAlgebraSpec) -> KillingForm {
    let n = alg.dim();
    let c = &alg.structure;
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for a in 0..n {
                for bb in 0..n {
                    s += c.get(i, a, bb) * c.get(j, bb, a);
                }
            }
            b[(i, j)] = s;
            b[(j, i)] = s;
        }
    }
    KillingForm { matrix: b }
}

/// Validates the Jacobi identity and negative definiteness of the Killing form.
///
/// Jacobi is checked against `tol · max(1, max|c|²)`, Killing pivots against
/// `tol · max|B|`.
pub fn assert_compact_semisimple(alg: &LieAlgebraSpec, tol: f64) -> Result<KillingForm> {
    let scale = alg.structure.max_abs().max(1.0);
    let (residual, [i, j, k]) = alg.structure.jacobi_defect();
    if !(residual <= tol * scale * scale) {
        return Err(Error::InvalidAlgebra { residual, i, j, k });
    }
    let b = killing_form(alg);
    let threshold = tol * b.matrix.max_abs();
    cholesky(&b.matrix.scaled(-1.0), threshold).map_err(|(index, pivot)| Error::NotSemisimple {
        index,
        pivot,
        threshold,
    })?;
    Ok(b)
}

/// Isometry `θ: (n, -B) → (m_{-1}, ⟨,⟩)` and its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame {
    theta: Matrix,
    theta_inv: Matrix,
}

impl OrthonormalFrame {
    /// Wraps an arbitrary frame after checking `θ⁻ᵀ(-B)θ⁻¹ = I`.
    pub fn from_theta(theta: Matrix, killing: &KillingForm) -> Result<Self> {
        check_len(killing.matrix.rows(), theta.rows())?;
        let theta_inv = theta.inverse()?;
        let frame = Self { theta, theta_inv };
        let r = frame.isometry_residual(killing);
        if !(r <= 1e-10) {
            return Err(Error::InvalidInput(format!(
                "frame is not an isometry of -B (residual {r:e})"
            )));
        }
        Ok(frame)
    }

    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    pub fn theta_inv(&self) -> &Matrix {
        &self.theta_inv
    }

    pub fn dim(&self) -> usize {
        self.theta.rows()
    }

    /// `max |θ⁻ᵀ(-B)θ⁻¹ - I|`.
    pub fn isometry_residual(&self, killing: &KillingForm) -> f64 {
        let g = self
            .theta_inv
            .transpose()
            .mul(&killing.matrix.scaled(-1.0))
            .mul(&self.theta_inv);
        g.max_abs_diff(&Matrix::identity(self.dim()))
    }

    /// The frame `Qθ` for an orthogonal `Q`.
    pub fn rotated(&self, q: &Matrix, killing: &KillingForm) -> Result<Self> {
        check_len(self.dim(), q.rows())?;
        Self::from_theta(q.mul(&self.theta), killing)
    }
}

/// `θ = Lᵀ` where `-B = L Lᵀ` is the Cholesky factorization in basis order.
pub fn orthonormal_frame(killing: &KillingForm) -> Result<OrthonormalFrame> {
    let neg = killing.matrix.scaled(-1.0);
    let l = cholesky(&neg, 0.0).map_err(|(index, pivot)| Error::NotSemisimple {
        index,
        pivot,
        threshold: 0.0,
    })?;
    let theta = l.transpose();
    let theta_inv = theta.inverse()?;
    Ok(OrthonormalFrame { theta, theta_inv })
}

/// The bracket of `n` carried to `m_{-1}`: `ρ(a,b) = θ[θ⁻¹a, θ⁻¹b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferredBracket {
    tensor: StructureTensor,
}

impl TransferredBracket {
    pub fn from_tensor(tensor: StructureTensor) -> Self {
        Self { tensor }
    }

    /// The zero bracket on `R^n`.
    pub fn abelian(n: usize) -> Self {
        Self {
            tensor: StructureTensor::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.tensor.get(i, j, k)
    }

    pub fn bracket(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        self.tensor.bracket(a, b)
    }

    /// `ρ(e_i, e_j)`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<f64> {
        self.tensor.basis_bracket(i, j)
    }

    /// Matrix of `b ↦ ρ(e_i, b)`.
    pub fn ad(&self, i: usize) -> Matrix {
        self.tensor.ad(i)
    }

    pub fn jacobi_residual(&self) -> f64 {
        self.tensor.jacobi_defect().0
    }

    /// `max |⟨ρ(e_i,e_j),e_k⟩ + ⟨e_j,ρ(e_i,e_k)⟩|`.
    pub fn skewness_residual(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| self.ad(i).antisymmetry_residual())
            .fold(0.0, f64::max)
    }
}

pub fn transferred_bracket(
    alg: &LieAlgebraSpec,
    frame: &OrthonormalFrame,
) -> Result<TransferredBracket> {
    let n = alg.dim();
    check_len(n, frame.dim())?;
    let preimages: Vec<Vec<f64>> = (0..n).map(|i| frame.theta_inv.column(i)).collect();
    let mut tensor = StructureTensor::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let br = alg.structure.bracket(&preimages[i], &preimages[j]);
            let image = frame.theta.mul_vec(&br);
            for (k, v) in image.into_iter().enumerate() {
                tensor.set(i, j, k, v);
            }
        }
    }
    Ok(TransferredBracket { tensor })
}

/// Block direct sum; brackets across the two summands vanish.
pub fn direct_sum(a: &LieAlgebraSpec, b: &LieAlgebraSpec) -> LieAlgebraSpec {
    let (na, nb) = (a.dim(), b.dim());
    let mut t = StructureTensor::zeros(na + nb);
    for i in 0..na {
        for j in i + 1..na {
            for k in 0..na {
                t.set(i, j, k, a.structure.get(i, j, k));
            }
        }
    }
    for i in 0..nb {
        for j in i + 1..nb {
            for k in 0..nb {
                t.set(na + i, na + j, na + k, b.structure.get(i, j, k));
            }
        }
    }
    LieAlgebraSpec {
        name: format!("{}+{}", a.name, b.name),
        structure: t,
    }
}
