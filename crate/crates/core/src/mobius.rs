//! The Möbius algebra `so(1, n+1)` with its grading `m_{-1} ⊕ co(n) ⊕ m_1`.
//!
//! Matrices are `(n+2) × (n+2)` with slots ordered `x_0, x_1..x_n, x_{n+1}`
//! and preserve `⟨x,x⟩ = 2 x_0 x_{n+1} + Σ x_i²`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{check_len, Error, Result};
use crate::linalg::{max_abs, Matrix};

/// Gram matrix `J` of the Lorentzian product.
pub fn lorentz_gram(n: usize) -> Matrix {
    let mut j = Matrix::zeros(n + 2, n + 2);
    j[(0, n + 1)] = 1.0;
    j[(n + 1, 0)] = 1.0;
    for i in 1..=n {
        j[(i, i)] = 1.0;
    }
    j
}

pub fn lorentz_product(u: &[f64], v: &[f64]) -> f64 {
    let last = u.len() - 1;
    u[0] * v[last] + u[last] * v[0] + (1..last).map(|i| u[i] * v[i]).sum::<f64>()
}

/// `max |XᵀJ + JX|`.
pub fn membership_residual(x: &Matrix) -> f64 {
    let n = x.rows() - 2;
    let j = lorentz_gram(n);
    let mut r = x.transpose().mul(&j);
    r.add_assign(&j.mul(x));
    r.max_abs()
}

/// An element of `so(1, n+1)`; the matrix is authoritative.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusElement {
    n: usize,
    matrix: Matrix,
}

/// Block read-off of a [`MobiusElement`].
#[derive(Debug, Clone, PartialEq)]
pub struct GradedParts {
    pub m_minus1: Vec<f64>,
    pub rotation: Matrix,
    pub scale: f64,
    pub m_1: Vec<f64>,
}

impl MobiusElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            matrix: Matrix::zeros(n + 2, n + 2),
        }
    }

    /// Accepts a raw matrix whose membership residual is at most `tol · max(1, max|X|)`.
    pub fn from_matrix(matrix: Matrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() < 2 {
            return Err(Error::InvalidInput(
                "Möbius element must be a square matrix of size ≥ 2".into(),
            ));
        }
        let r = membership_residual(&matrix);
        if !(r <= tol * matrix.max_abs().max(1.0)) {
            return Err(Error::InvalidInput(format!(
                "matrix is not in so(1,n+1) (residual {r:e})"
            )));
        }
        Ok(Self {
            n: matrix.rows() - 2,
            matrix,
        })
    }

    pub(crate) fn from_matrix_unchecked(matrix: Matrix) -> Self {
        Self {
            n: matrix.rows() - 2,
            matrix,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `m` in the first column, `-mᵀ` in the last row.
    pub fn embed_m_minus1(m: &[f64]) -> Self {
        let n = m.len();
        let mut x = Matrix::zeros(n + 2, n + 2);
        for (i, &v) in m.iter().enumerate() {
            x[(i + 1, 0)] = v;
            x[(n + 1, i + 1)] = -v;
        }
        Self { n, matrix: x }
    }

    /// `diag(-a, A, a)`; `A` must be antisymmetric.
    pub fn embed_p0(rotation: &Matrix, scale: f64) -> Result<Self> {
        if !rotation.is_square() {
            return Err(Error::InvalidInput("rotation block must be square".into()));
        }
        let r = rotation.antisymmetry_residual();
        if r != 0.0 && !(r <= 1e-12 * rotation.max_abs()) {
            return Err(Error::InvalidInput(format!(
                "rotation block is not antisymmetric (residual {r:e})"
            )));
        }
        Ok(Self::embed_p0_unchecked(rotation, scale))
    }

    pub(crate) fn embed_p0_unchecked(rotation: &Matrix, scale: f64) -> Self {
        let n = rotation.rows();
        let mut x = Matrix::zeros(n + 2, n + 2);
        x[(0, 0)] = -scale;
        x[(n + 1, n + 1)] = scale;
        for i in 0..n {
            for j in 0..n {
                x[(i + 1, j + 1)] = rotation[(i, j)];
            }
        }
        Self { n, matrix: x }
    }

    /// `l` in the first row, `-lᵀ` in the last column.
    pub fn embed_m1(l: &[f64]) -> Self {
        let n = l.len();
        let mut x = Matrix::zeros(n + 2, n + 2);
        for (i, &v) in l.iter().enumerate() {
            x[(0, i + 1)] = v;
            x[(i + 1, n + 1)] = -v;
        }
        Self { n, matrix: x }
    }

    pub fn grade_project(&self) -> GradedParts {
        let n = self.n;
        let mut rotation = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                rotation[(i, j)] = self.matrix[(i + 1, j + 1)];
            }
        }
        GradedParts {
            m_minus1: (1..=n).map(|i| self.matrix[(i, 0)]).collect(),
            rotation,
            scale: self.matrix[(n + 1, n + 1)],
            m_1: (1..=n).map(|i| self.matrix[(0, i)]).collect(),
        }
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        check_len(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            matrix: self.matrix.commutator(&other.matrix),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_len(self.n, other.n)?;
        let mut m = self.matrix.clone();
        m.add_assign(&other.matrix);
        Ok(Self {
            n: self.n,
            matrix: m,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_len(self.n, other.n)?;
        let mut m = self.matrix.clone();
        m.sub_assign(&other.matrix);
        Ok(Self {
            n: self.n,
            matrix: m,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.max_abs()
    }

    pub fn membership_residual(&self) -> f64 {
        membership_residual(&self.matrix)
    }
}

impl GradedParts {
    pub fn n(&self) -> usize {
        self.m_minus1.len()
    }

    pub fn to_element(&self) -> MobiusElement {
        let n = self.n();
        let mut x = MobiusElement::embed_p0_unchecked(&self.rotation, self.scale).matrix;
        for i in 0..n {
            x[(i + 1, 0)] = self.m_minus1[i];
            x[(n + 1, i + 1)] = -self.m_minus1[i];
            x[(0, i + 1)] = self.m_1[i];
            x[(i + 1, n + 1)] = -self.m_1[i];
        }
        MobiusElement { n, matrix: x }
    }

    /// Largest entry over all four parts.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.m_minus1)
            .max(self.rotation.max_abs())
            .max(self.scale.abs())
            .max(max_abs(&self.m_1))
    }

    /// Action of the `p_0` part on `m_{-1}`: `b ↦ A b + a b`.
    pub fn p0_apply(&self, b: &[f64]) -> Vec<f64> {
        let mut v = self.rotation.mul_vec(b);
        for (x, y) in v.iter_mut().zip(b) {
            *x += self.scale * y;
        }
        v
    }
}

/// `(Σ a_i e_i)* = Σ a_i e_i*`.
pub fn dual_star(a: &[f64]) -> Vec<f64> {
    a.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn antisym(n: usize, v: &[f64]) -> Matrix {
        let mut a = Matrix::zeros(n, n);
        let mut t = 0;
        for i in 0..n {
            for j in i + 1..n {
                a[(i, j)] = v[t];
                a[(j, i)] = -v[t];
                t += 1;
            }
        }
        a
    }

    fn outer_antisym(m: &[f64], l: &[f64]) -> Matrix {
        let n = m.len();
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = m[i] * l[j] - m[j] * l[i];
            }
        }
        a
    }

    #[test]
    fn block_layouts() {
        let x = MobiusElement::embed_m_minus1(&[1.0, 0.0, 0.0]);
        let mut expected = Matrix::zeros(5, 5);
        expected[(1, 0)] = 1.0;
        expected[(4, 1)] = -1.0;
        assert_eq!(x.matrix(), &expected);

        let l = MobiusElement::embed_m1(&[1.0, 0.0, 0.0]);
        let mut expected = Matrix::zeros(5, 5);
        expected[(0, 1)] = 1.0;
        expected[(1, 4)] = -1.0;
        assert_eq!(l.matrix(), &expected);

        let p = MobiusElement::embed_p0(&Matrix::zeros(3, 3), 1.0).unwrap();
        let mut expected = Matrix::zeros(5, 5);
        expected[(0, 0)] = -1.0;
        expected[(4, 4)] = 1.0;
        assert_eq!(p.matrix(), &expected);

        assert_eq!(
            MobiusElement::embed_m_minus1(&[0.0; 3]),
            MobiusElement::zero(3)
        );
        assert_eq!(MobiusElement::embed_m1(&[0.0; 3]), MobiusElement::zero(3));
        assert_eq!(
            MobiusElement::embed_p0(&Matrix::zeros(3, 3), 0.0).unwrap(),
            MobiusElement::zero(3)
        );
    }

    #[test]
    fn embed_p0_rejects_symmetric_block() {
        let a = Matrix::identity(3);
        assert!(MobiusElement::embed_p0(&a, 0.0).is_err());
    }

    #[test]
    fn from_matrix_rejects_non_members() {
        assert!(MobiusElement::from_matrix(Matrix::identity(5), 1e-12).is_err());
        let x = MobiusElement::embed_m1(&[0.5, 1.0, -2.0]).into_matrix();
        assert!(MobiusElement::from_matrix(x, 1e-12).is_ok());
    }

    #[test]
    fn dual_star_is_coordinate_identity() {
        assert_eq!(dual_star(&[1.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0]);
        assert_eq!(dual_star(&[0.0; 4]), vec![0.0; 4]);
        let (a, b) = ([0.1, 0.2, 0.3], [1.0, -2.0, 0.5]);
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let star_sum: Vec<f64> = dual_star(&a)
            .iter()
            .zip(dual_star(&b))
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(dual_star(&sum), star_sum);
    }

    const N: usize = 4;

    fn vec_n() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-2.0f64..2.0, N)
    }

    fn so_n() -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-2.0f64..2.0, N * (N - 1) / 2).prop_map(|v| antisym(N, &v))
    }

    proptest! {
        #[test]
        fn embeddings_lie_in_so_1_n1(m in vec_n(), l in vec_n(), a in so_n(), s in -2.0f64..2.0) {
            prop_assert_eq!(MobiusElement::embed_m_minus1(&m).membership_residual(), 0.0);
            prop_assert_eq!(MobiusElement::embed_m1(&l).membership_residual(), 0.0);
            prop_assert_eq!(MobiusElement::embed_p0(&a, s).unwrap().membership_residual(), 0.0);
        }

        #[test]
        fn grading_round_trips_exactly(m in vec_n(), l in vec_n(), a in so_n(), s in -2.0f64..2.0) {
            let x = MobiusElement::embed_m_minus1(&m)
                .add(&MobiusElement::embed_p0(&a, s).unwrap()).unwrap()
                .add(&MobiusElement::embed_m1(&l)).unwrap();
            let parts = x.grade_project();
            prop_assert_eq!(&parts.m_minus1, &m);
            prop_assert_eq!(&parts.m_1, &l);
            prop_assert_eq!(&parts.rotation, &a);
            prop_assert_eq!(parts.scale, s);
            prop_assert_eq!(parts.to_element(), x);
            let pure = MobiusElement::embed_m_minus1(&m).grade_project();
            prop_assert_eq!(pure.rotation.max_abs() + pure.scale.abs() + max_abs(&pure.m_1), 0.0);
        }

        #[test]
        fn commutator_table(m in vec_n(), l in vec_n(), a in so_n(), a2 in so_n(), s in -2.0f64..2.0, s2 in -2.0f64..2.0) {
            let p = MobiusElement::embed_p0(&a, s).unwrap();
            let p2 = MobiusElement::embed_p0(&a2, s2).unwrap();
            let em = MobiusElement::embed_m_minus1(&m);
            let el = MobiusElement::embed_m1(&l);

            // [(A,a),(A',a')] = (AA' - A'A, 0)
            let lhs = p.bracket(&p2).unwrap();
            let rhs = MobiusElement::embed_p0(&a.commutator(&a2), 0.0).unwrap();
            prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-12);

            // [(A,a), m] = Am + am
            let am: Vec<f64> = a.mul_vec(&m).iter().zip(&m).map(|(x, y)| x + s * y).collect();
            let lhs = p.bracket(&em).unwrap();
            prop_assert!(lhs.matrix().max_abs_diff(MobiusElement::embed_m_minus1(&am).matrix()) < 1e-12);

            // [l, (A,a)] = lA + al
            let la: Vec<f64> = a.vec_mul(&l).iter().zip(&l).map(|(x, y)| x + s * y).collect();
            let lhs = el.bracket(&p).unwrap();
            prop_assert!(lhs.matrix().max_abs_diff(MobiusElement::embed_m1(&la).matrix()) < 1e-12);

            // [m, l] = (m l - (m l)ᵀ, l m)
            let lm: f64 = l.iter().zip(&m).map(|(x, y)| x * y).sum();
            let rhs = MobiusElement::embed_p0(&outer_antisym(&m, &l), lm).unwrap();
            let lhs = em.bracket(&el).unwrap();
            prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-12);
        }

        #[test]
        fn grading_is_respected(m in vec_n(), m2 in vec_n(), l in vec_n(), l2 in vec_n()) {
            let mm = MobiusElement::embed_m_minus1(&m).bracket(&MobiusElement::embed_m_minus1(&m2)).unwrap();
            prop_assert_eq!(mm.max_abs(), 0.0);
            let ll = MobiusElement::embed_m1(&l).bracket(&MobiusElement::embed_m1(&l2)).unwrap();
            prop_assert_eq!(ll.max_abs(), 0.0);
            let ml = MobiusElement::embed_m_minus1(&m).bracket(&MobiusElement::embed_m1(&l)).unwrap().grade_project();
            prop_assert_eq!(max_abs(&ml.m_minus1) + max_abs(&ml.m_1), 0.0);
        }

        #[test]
        fn bracket_is_antisymmetric_and_satisfies_jacobi(
            m in vec_n(), l in vec_n(), a in so_n(),
            m2 in vec_n(), l2 in vec_n(), a2 in so_n(),
            m3 in vec_n(), l3 in vec_n(), a3 in so_n(),
        ) {
            let mk = |m: &[f64], a: &Matrix, l: &[f64]| {
                GradedParts { m_minus1: m.to_vec(), rotation: a.clone(), scale: 0.3, m_1: l.to_vec() }.to_element()
            };
            let (x, y, z) = (mk(&m, &a, &l), mk(&m2, &a2, &l2), mk(&m3, &a3, &l3));
            prop_assert_eq!(x.bracket(&x).unwrap().max_abs(), 0.0);
            let j = x.bracket(&y.bracket(&z).unwrap()).unwrap()
                .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
                .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
            prop_assert!(j.max_abs() < 1e-12 * x.max_abs().max(1.0).powi(3) * 10.0);
        }
    }
}
