//! Ordinary inverse, Moore-Penrose inverse, sampled {1}-inverses and the
//! group inverse.

use crate::error::{Error, Result};
use crate::factor::full_rank_factorization_with_rank;
use crate::matrix::{Matrix, C64};
use crate::rank::{index_of, rank, RankReport};
use crate::svd::{svd, Svd};
use crate::tolerance::Tolerance;

/// Inverse of a square matrix, refused when numerically singular.
pub fn inverse(a: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { op: "inverse", rows: a.rows(), cols: a.cols() });
    }
    let d = svd(a)?;
    let report = RankReport::from_singular_values(d.s.clone(), a.rows(), a.cols(), tol);
    let n = a.rows();
    if report.rank < n {
        let cond = match d.s[n - 1] {
            s if s > 0.0 => d.s[0] / s,
            _ => f64::INFINITY,
        };
        return Err(Error::Singular { rank: report.rank, order: n, cond });
    }
    Ok(pinv_from_svd(&d, n))
}

/// `V_r diag(1/s) U_r*` using the leading `r` singular triplets.
fn pinv_from_svd(d: &Svd, r: usize) -> Matrix {
    let (m, n) = (d.u.rows(), d.v.rows());
    let mut out = Matrix::zeros(n, m);
    for k in 0..r {
        let inv = 1.0 / d.s[k];
        for i in 0..n {
            let vik = d.v[(i, k)] * inv;
            for j in 0..m {
                out[(i, j)] += vik * d.u[(j, k)].conj();
            }
        }
    }
    out
}

/// Moore-Penrose inverse with the numerical rank taken from `tol`.
pub fn moore_penrose(a: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let d = svd(a)?;
    let r = RankReport::from_singular_values(d.s.clone(), a.rows(), a.cols(), tol).rank;
    Ok(pinv_from_svd(&d, r))
}

/// Moore-Penrose inverse of the best rank-`r` approximation of `a`.
///
/// Used where the rank is known from theory, so rounding noise in a product
/// cannot be mistaken for rank.
pub fn moore_penrose_with_rank(a: &Matrix, r: usize) -> Result<Matrix> {
    let d = svd(a)?;
    let r = r.min(d.s.len());
    if r > 0 && d.s[r - 1] == 0.0 {
        return Err(Error::RankMismatch(format!("requested rank {r} exceeds exact rank")));
    }
    Ok(pinv_from_svd(&d, r))
}

/// A member of `A{1}`: `A+ + W - A+ A W A A+`. `W` must be `n x m`.
pub fn one_inverse_sample(a: &Matrix, w: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let p = moore_penrose(a, tol)?;
    one_inverse_from_pinv(a, &p, w)
}

pub(crate) fn one_inverse_from_pinv(a: &Matrix, pinv: &Matrix, w: &Matrix) -> Result<Matrix> {
    if w.shape() != pinv.shape() {
        return Err(Error::ShapeMismatch {
            op: "one_inverse_sample",
            detail: format!("W is {}x{}, expected {}x{}", w.rows(), w.cols(), pinv.rows(), pinv.cols()),
        });
    }
    let correction = &(&(&(pinv * a) * w) * a) * pinv;
    Ok(&(pinv + w) - &correction)
}

/// Group inverse `M# = F (GF)^-2 G` from a full-rank factorization `M = FG`.
pub fn group_inverse(m: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { op: "group_inverse", rows: m.rows(), cols: m.cols() });
    }
    let index = index_of(m, tol)?;
    if index > 1 {
        return Err(Error::IndexNotOne { index });
    }
    let r = rank(m, tol)?;
    group_inverse_with_rank(m, r, tol)
}

/// Group inverse when `rank(M)` is already known.
pub fn group_inverse_with_rank(m: &Matrix, r: usize, tol: &Tolerance) -> Result<Matrix> {
    if r == 0 {
        return Ok(Matrix::zeros(m.rows(), m.cols()));
    }
    let frf = full_rank_factorization_with_rank(m, r)?;
    let gf = &frf.c * &frf.b;
    let gf_inv = match inverse(&gf, tol) {
        Ok(x) => x,
        Err(Error::Singular { .. }) => return Err(Error::IndexNotOne { index: index_of(m, tol)? }),
        Err(e) => return Err(e),
    };
    Ok(&(&frf.b * &(&gf_inv * &gf_inv)) * &frf.c)
}

/// Returns `(I - AB)^-1` computed directly and through
/// `I + A (I - BA)^-1 B`.
pub fn inv_shift_identity(a: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<(Matrix, Matrix)> {
    let (m, n) = a.shape();
    if b.shape() != (n, m) {
        return Err(Error::ShapeMismatch {
            op: "inv_shift_identity",
            detail: format!("A is {m}x{n}, B is {}x{}", b.rows(), b.cols()),
        });
    }
    let inner = inverse(&(&Matrix::identity(n) - &(b * a)), tol)?;
    let via = &Matrix::identity(m) + &(&(a * &inner) * b);
    let direct = inverse(&(&Matrix::identity(m) - &(a * b)), tol)?;
    Ok((direct, via))
}

/// Frobenius residuals of the four Penrose equations for a candidate `x`.
pub fn penrose_residuals(a: &Matrix, x: &Matrix) -> [f64; 4] {
    let ax = a * x;
    let xa = x * a;
    [(&ax * a).dist(a), (&xa * x).dist(x), ax.conj_t().dist(&ax), xa.conj_t().dist(&xa)]
}

pub(crate) fn scalar(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{random_matrix, random_rank};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn inverse_refuses_singular() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(inverse(&a, &tol()), Err(Error::Singular { rank: 1, order: 2, .. })));
        let b = random_matrix(4, 4, 1, 1.0);
        let bi = inverse(&b, &tol()).unwrap();
        assert!((&b * &bi).dist(&Matrix::identity(4)) < 1e-12);
    }

    #[test]
    fn pseudoinverse_examples() {
        assert_eq!(moore_penrose(&Matrix::identity(3), &tol()).unwrap(), Matrix::identity(3));
        let d = Matrix::from_rows(&[[2.0, 0.0], [0.0, 0.0]]);
        assert_eq!(moore_penrose(&d, &tol()).unwrap(), Matrix::from_rows(&[[0.5, 0.0], [0.0, 0.0]]));
    }

    #[test]
    fn pseudoinverse_satisfies_penrose_equations() {
        let a = random_rank(6, 4, 3, 5);
        let x = moore_penrose(&a, &tol()).unwrap();
        let scale = a.norm_fro() * x.norm_fro();
        for r in penrose_residuals(&a, &x) {
            assert!(r < 1e-12 * scale, "residual {r:e}");
        }
    }

    #[test]
    fn one_inverse_family() {
        let t = tol();
        let a = random_rank(5, 4, 2, 6);
        let w0 = Matrix::zeros(4, 5);
        assert_eq!(one_inverse_sample(&a, &w0, &t).unwrap(), moore_penrose(&a, &t).unwrap());
        let w = random_matrix(4, 5, 7, 1.0);
        let g = one_inverse_sample(&a, &w, &t).unwrap();
        assert!((&(&a * &g) * &a).dist(&a) < 1e-12 * a.norm_fro() * g.norm_fro());
        assert!(g.dist(&moore_penrose(&a, &t).unwrap()) > 1e-3);
        let i = Matrix::identity(3);
        let gi = one_inverse_sample(&i, &random_matrix(3, 3, 8, 1.0), &t).unwrap();
        assert!(gi.dist(&i) < 1e-14);
        assert!(one_inverse_sample(&a, &Matrix::zeros(5, 4), &t).is_err());
    }

    #[test]
    fn group_inverse_examples() {
        let t = tol();
        let m = random_matrix(4, 4, 9, 1.0);
        let g = group_inverse(&m, &t).unwrap();
        assert!(g.dist(&inverse(&m, &t).unwrap()) < 1e-10);
        let d = Matrix::from_rows(&[[2.0, 0.0], [0.0, 0.0]]);
        assert!(group_inverse(&d, &t).unwrap().dist(&Matrix::from_rows(&[[0.5, 0.0], [0.0, 0.0]])) < 1e-15);
        let nil = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(group_inverse(&nil, &t), Err(Error::IndexNotOne { index: 2 })));
        assert_eq!(group_inverse(&Matrix::zeros(2, 2), &t).unwrap(), Matrix::zeros(2, 2));
    }

    #[test]
    fn group_inverse_equations_on_index_one() {
        // M = P D P^-1 with D = diag(d1, d2, 0, 0) has index one
        let t = tol();
        let p = random_matrix(4, 4, 10, 1.0);
        let pinv = inverse(&p, &t).unwrap();
        let d = Matrix::from_diag(4, 4, &[2.0, -0.5, 0.0, 0.0]);
        let m = &(&p * &d) * &pinv;
        let x = group_inverse(&m, &t).unwrap();
        let s = m.norm_fro() * x.norm_fro();
        assert!((&(&m * &x) * &m).dist(&m) < 1e-10 * s);
        assert!((&(&x * &m) * &x).dist(&x) < 1e-10 * s);
        assert!((&m * &x).dist(&(&x * &m)) < 1e-10 * s);
    }

    #[test]
    fn shift_identity_examples() {
        let t = tol();
        let a0 = Matrix::zeros(4, 3);
        let b = random_matrix(3, 4, 11, 1.0);
        let (d, v) = inv_shift_identity(&a0, &b, &t).unwrap();
        assert_eq!(d, Matrix::identity(4));
        assert_eq!(v, Matrix::identity(4));
        let a = random_matrix(4, 3, 12, 1.0);
        let (d, v) = inv_shift_identity(&a, &Matrix::zeros(3, 4), &t).unwrap();
        assert_eq!((d, v), (Matrix::identity(4), Matrix::identity(4)));
        let b = b.scale(scalar(0.1 / (a.norm_fro() * b.norm_fro())));
        let (d, v) = inv_shift_identity(&a, &b, &t).unwrap();
        assert!(d.rel_dist(&v, 1.0) < 1e-10);
        // I - BA singular: B A = I_1 in the 1x1 case
        let a1 = Matrix::from_rows(&[[1.0], [0.0]]);
        let b1 = Matrix::from_rows(&[[1.0, 0.0]]);
        assert!(matches!(inv_shift_identity(&a1, &b1, &t), Err(Error::Singular { .. })));
    }
}
