#![allow(dead_code)]

use confhol::lie_algebra::StructureTensor;
use confhol::{LieAlgebraSpec, Matrix};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIVE: [&str; 5] = ["so(3)", "so(4)", "so(5)", "su(3)", "so(3)+so(3)+so(3)"];

pub fn to_na(m: &Matrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn from_na(m: &DMatrix<f64>) -> Matrix {
    let rows: Vec<Vec<f64>> = (0..m.nrows())
        .map(|i| m.row(i).iter().copied().collect())
        .collect();
    Matrix::from_rows(&rows).unwrap()
}

/// Haar-ish orthogonal matrix from the QR factor of a Gaussian-like matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    from_na(&g.qr().q())
}

/// Relabels the basis: new index `perm[i]` carries old index `i`.
pub fn permuted(alg: &LieAlgebraSpec, perm: &[usize]) -> LieAlgebraSpec {
    let n = alg.dim();
    let c = alg.structure();
    let mut t = StructureTensor::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                t.set(perm[i], perm[j], perm[k], c.get(i, j, k));
            }
        }
    }
    LieAlgebraSpec::new(alg.name(), t).unwrap()
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}

/// Numerical rank from singular values.
pub fn svd_rank(rows: &[Vec<f64>], rel: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > rel * top.max(1e-300)).count()
}

/// Closure by adding all pairwise brackets of the current span until the
/// rank stops growing. Returns the final spanning list.
pub fn brute_force_closure(seeds: &[Matrix], rel: f64) -> Vec<Matrix> {
    let flat = |ms: &[Matrix]| ms.iter().map(|m| m.as_slice().to_vec()).collect::<Vec<_>>();
    let mut basis: Vec<Matrix> = Vec::new();
    for s in seeds {
        let mut cand = basis.clone();
        cand.push(s.clone());
        if svd_rank(&flat(&cand), rel) > basis.len() {
            basis = cand;
        }
    }
    loop {
        let before = basis.len();
        let snapshot = basis.clone();
        for a in &snapshot {
            for b in &snapshot {
                let mut cand = basis.clone();
                cand.push(a.commutator(b));
                if svd_rank(&flat(&cand), rel) > basis.len() {
                    basis = cand;
                }
            }
        }
        if basis.len() == before {
            return basis;
        }
    }
}
