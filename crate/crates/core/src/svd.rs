//! One-sided (Hestenes) Jacobi SVD for dense complex matrices.
//!
//! Column pairs of the working matrix are rotated until every pair is
//! orthogonal to machine precision relative to the column norms. The column
//! norms are then the singular values, which are computed to high relative
//! accuracy. Wide inputs are handled through the conjugate transpose.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, C64, ONE, ZERO};

const MAX_SWEEPS: usize = 80;

type Columns = Vec<Vec<C64>>;

/// Full singular value decomposition `A = U diag(s) V*`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `m x m` unitary.
    pub u: Matrix,
    /// `min(m, n)` values, nonincreasing.
    pub s: Vec<f64>,
    /// `n x n` unitary.
    pub v: Matrix,
}

impl Svd {
    /// `U diag(s) V*` with the rectangular diagonal.
    pub fn reconstruct(&self) -> Matrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let sigma = Matrix::from_diag(m, n, &self.s);
        &(&self.u * &sigma) * &self.v.conj_t()
    }
}

pub fn svd(a: &Matrix) -> Result<Svd> {
    if a.rows() >= a.cols() {
        jacobi_tall(a, true)
    } else {
        let t = jacobi_tall(&a.conj_t(), true)?;
        Ok(Svd { u: t.v, s: t.s, v: t.u })
    }
}

/// Singular values only, nonincreasing.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    let tall = if a.rows() >= a.cols() { a.clone() } else { a.conj_t() };
    let (cols, _) = rotate_columns(&tall, false)?;
    let mut s: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    Ok(s)
}

fn norm(v: &[C64]) -> f64 {
    let amax = v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if amax == 0.0 {
        return 0.0;
    }
    amax * v.iter().map(|z| (z / amax).norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Runs Jacobi sweeps on the columns of a tall matrix. Returns the rotated
/// columns and, if requested, the accumulated right rotations (as columns).
fn rotate_columns(a: &Matrix, want_v: bool) -> Result<(Columns, Columns)> {
    let (m, n) = a.shape();
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<C64>> = if want_v {
        (0..n).map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect()).collect()
    } else {
        Vec::new()
    };
    let thresh = f64::EPSILON * (m as f64).sqrt().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        // Columns at rounding level relative to the largest one carry no
        // information; rotating them only recirculates noise.
        let big = w.iter().map(|c| norm(c)).fold(0.0f64, f64::max);
        let negligible = (f64::EPSILON * f64::EPSILON * big) * big;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&w[p], &w[p]).re;
                let beta = dot(&w[q], &w[q]).re;
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= thresh * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta.abs() > 1e150 {
                    0.5 / zeta
                } else {
                    let sgn = if zeta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let ph = phase.conj();
                rotate_pair(&mut w, p, q, c, s, ph);
                if want_v {
                    rotate_pair(&mut v, p, q, c, s, ph);
                }
            }
        }
        if !rotated {
            return Ok((w, v));
        }
    }
    Err(Error::SvdNotConverged { sweeps: MAX_SWEEPS })
}

fn rotate_pair(cols: &mut [Vec<C64>], p: usize, q: usize, c: f64, s: f64, ph: C64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let yq = *y * ph;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

fn jacobi_tall(a: &Matrix, want_vectors: bool) -> Result<Svd> {
    let (m, n) = a.shape();
    let (w, v) = rotate_columns(a, want_vectors)?;
    let norms: Vec<f64> = w.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s: Vec<f64> = order.iter().map(|&j| norms[j]).collect();

    // Columns at rounding level were never rotated and are not orthogonal
    // to the rest; their directions come from the basis completion instead.
    let floor = (f64::EPSILON * s.first().copied().unwrap_or(0.0)).max(f64::MIN_POSITIVE * 1e20);
    let mut ucols: Vec<Vec<C64>> = Vec::with_capacity(m);
    for &j in &order {
        let sj = norms[j];
        if sj > floor {
            ucols.push(w[j].iter().map(|z| z / sj).collect());
        } else {
            break;
        }
    }
    complete_basis(&mut ucols, m);

    let mut u = Matrix::zeros(m, m);
    for (j, c) in ucols.iter().enumerate() {
        u.set_col(j, c);
    }
    let mut vm = Matrix::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        vm.set_col(k, &v[j]);
    }
    Ok(Svd { u, s, v: vm })
}

/// Extends orthonormal columns to a basis of C^m by greedily projecting the
/// standard basis vector with the largest residual.
pub(crate) fn complete_basis(cols: &mut Vec<Vec<C64>>, m: usize) {
    while cols.len() < m {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for k in 0..m {
            let mut e = vec![ZERO; m];
            e[k] = ONE;
            for _ in 0..2 {
                for c in cols.iter() {
                    let h = dot(c, &e);
                    for (x, y) in e.iter_mut().zip(c) {
                        *x -= h * y;
                    }
                }
            }
            let nr = norm(&e);
            if best.as_ref().is_none_or(|(b, _)| nr > *b) {
                best = Some((nr, e));
            }
        }
        let (nr, e) = best.expect("m > 0");
        cols.push(e.into_iter().map(|z| z / nr).collect());
    }
}
