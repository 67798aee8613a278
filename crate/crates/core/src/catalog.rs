//! Built-in compact algebras: `so(m)`, `su(m)` and `+`-separated sums of them.
//!
//! Structure constants come from matrix commutators of a fixed basis and are
//! then stored abstractly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lie_algebra::{direct_sum, LieAlgebraSpec, StructureTensor};
use crate::linalg::Matrix;

/// Names listed by the CLI; every family member `so(m≥3)`, `su(m≥2)` is accepted.
pub const LISTED: &[&str] = &[
    "so(3)",
    "so(4)",
    "so(5)",
    "so(6)",
    "su(2)",
    "su(3)",
    "so(3)+so(3)",
    "so(3)+so(3)+so(3)",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    So,
    Su,
}

fn parse_simple(name: &str) -> Option<(Family, usize)> {
    let s = name.trim();
    let (family, rest) = match s.strip_prefix("so") {
        Some(r) => (Family::So, r),
        None => (Family::Su, s.strip_prefix("su")?),
    };
    let m: usize = rest
        .trim()
        .strip_prefix('(')?
        .strip_suffix(')')?
        .trim()
        .parse()
        .ok()?;
    let min = match family {
        Family::So => 3,
        Family::Su => 2,
    };
    (m >= min).then_some((family, m))
}

/// Looks up a catalog algebra, e.g. `so(4)`, `su(3)` or `so(3)+so(3)`.
pub fn catalog(name: &str) -> Result<LieAlgebraSpec> {
    let mut acc: Option<LieAlgebraSpec> = None;
    for part in name.split('+') {
        let (family, m) =
            parse_simple(part).ok_or_else(|| Error::UnknownAlgebra(String::from(name.trim())))?;
        let alg = match family {
            Family::So => so(m),
            Family::Su => su(m),
        };
        acc = Some(match acc {
            None => alg,
            Some(prev) => direct_sum(&prev, &alg),
        });
    }
    acc.ok_or_else(|| Error::UnknownAlgebra(String::from(name)))
}

/// `E_ij = e_i e_jᵀ - e_j e_iᵀ` in `m × m` matrices.
pub fn so_generator(m: usize, i: usize, j: usize) -> Matrix {
    let mut e = Matrix::zeros(m, m);
    e[(i, j)] = 1.0;
    e[(j, i)] = -1.0;
    e
}

/// `so(m)` on the basis `E_ij`, `i < j`, in lexicographic order.
fn so(m: usize) -> LieAlgebraSpec {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let basis: Vec<Matrix> = pairs.iter().map(|&(i, j)| so_generator(m, i, j)).collect();
    let n = basis.len();
    let mut t = StructureTensor::zeros(n);
    for a in 0..n {
        for b in a + 1..n {
            let c = basis[a].commutator(&basis[b]);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                t.set(a, b, k, c[(i, j)]);
            }
        }
    }
    LieAlgebraSpec::new(format!("so({m})"), t).expect("so(m) has positive dimension")
}

/// Complex matrix as a (real, imaginary) pair.
#[derive(Clone)]
struct Complex {
    re: Matrix,
    im: Matrix,
}

impl Complex {
    fn commutator(&self, o: &Self) -> Self {
        let mul = |a: &Self, b: &Self| {
            let mut re = a.re.mul(&b.re);
            re.sub_assign(&a.im.mul(&b.im));
            let mut im = a.re.mul(&b.im);
            im.add_assign(&a.im.mul(&b.re));
            Self { re, im }
        };
        let mut p = mul(self, o);
        let q = mul(o, self);
        p.re.sub_assign(&q.re);
        p.im.sub_assign(&q.im);
        p
    }
}

/// `su(m)` on the generalized Gell-Mann style basis: for each `j < k` the pair
/// `E_jk - E_kj`, `i(E_jk + E_kj)`, followed by `i(E_ll - E_{l+1,l+1})`.
fn su(m: usize) -> LieAlgebraSpec {
    let mut basis = Vec::new();
    for j in 0..m {
        for k in j + 1..m {
            basis.push(Complex {
                re: so_generator(m, j, k),
                im: Matrix::zeros(m, m),
            });
            let mut im = Matrix::zeros(m, m);
            im[(j, k)] = 1.0;
            im[(k, j)] = 1.0;
            basis.push(Complex {
                re: Matrix::zeros(m, m),
                im,
            });
        }
    }
    for l in 0..m - 1 {
        let mut im = Matrix::zeros(m, m);
        im[(l, l)] = 1.0;
        im[(l + 1, l + 1)] = -1.0;
        basis.push(Complex {
            re: Matrix::zeros(m, m),
            im,
        });
    }
    let n = basis.len();
    let mut t = StructureTensor::zeros(n);
    for a in 0..n {
        for b in a + 1..n {
            let z = basis[a].commutator(&basis[b]);
            let coords = su_coordinates(m, &z);
            for (k, v) in coords.into_iter().enumerate() {
                t.set(a, b, k, v);
            }
        }
    }
    LieAlgebraSpec::new(format!("su({m})"), t).expect("su(m) has positive dimension")
}

fn su_coordinates(m: usize, z: &Complex) -> Vec<f64> {
    let mut out = Vec::with_capacity(m * m - 1);
    for j in 0..m {
        for k in j + 1..m {
            out.push(z.re[(j, k)]);
            out.push(z.im[(j, k)]);
        }
    }
    let mut h = 0.0;
    for l in 0..m - 1 {
        h += z.im[(l, l)];
        out.push(h);
    }
    out
}
