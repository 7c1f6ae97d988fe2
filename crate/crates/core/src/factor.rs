//! Full-rank and Hartwig-Spindelböck factorizations.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rank::RankReport;
use crate::svd::svd;
use crate::tolerance::Tolerance;

/// `A = B C` with `B` of full column rank and `C` of full row rank.
#[derive(Debug, Clone)]
pub struct FullRankFactorization {
    /// `m x r`.
    pub b: Matrix,
    /// `r x n`.
    pub c: Matrix,
    pub rank: usize,
}

impl FullRankFactorization {
    pub fn reconstruct(&self) -> Matrix {
        &self.b * &self.c
    }
}

/// Compact-SVD factorization `B = U_r S_r`, `C = V_r*`.
pub fn full_rank_factorization(a: &Matrix, tol: &Tolerance) -> Result<FullRankFactorization> {
    let d = svd(a)?;
    let r = RankReport::from_singular_values(d.s.clone(), a.rows(), a.cols(), tol).rank;
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(frf_from_svd(&d.u, &d.s, &d.v, r))
}

/// Factorization at a prescribed rank (truncating the SVD).
pub fn full_rank_factorization_with_rank(a: &Matrix, r: usize) -> Result<FullRankFactorization> {
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    let d = svd(a)?;
    if r > d.s.len() || d.s[r - 1] == 0.0 {
        return Err(Error::RankMismatch(format!("requested rank {r} exceeds exact rank of {}x{}", a.rows(), a.cols())));
    }
    Ok(frf_from_svd(&d.u, &d.s, &d.v, r))
}

fn frf_from_svd(u: &Matrix, s: &[f64], v: &Matrix, r: usize) -> FullRankFactorization {
    let b = Matrix::from_fn(u.rows(), r, |i, k| u[(i, k)] * s[k]);
    let c = Matrix::from_fn(r, v.rows(), |k, j| v[(j, k)].conj());
    FullRankFactorization { b, c, rank: r }
}

/// `A = U [[S K, S L], [0, 0]] U*` with `U` unitary and `KK* + LL* = I_r`.
#[derive(Debug, Clone)]
pub struct HsDecomposition {
    /// `n x n` unitary.
    pub u: Matrix,
    /// Leading `r` singular values, nonincreasing and positive.
    pub sigma: Vec<f64>,
    /// `r x r`.
    pub k: Matrix,
    /// `r x (n - r)`.
    pub l: Matrix,
    pub rank: usize,
}

impl HsDecomposition {
    pub fn order(&self) -> usize {
        self.u.rows()
    }

    pub fn sigma_matrix(&self) -> Matrix {
        Matrix::from_diag(self.rank, self.rank, &self.sigma)
    }

    /// `[K L]`, an `r x n` matrix with orthonormal rows.
    pub fn kl(&self) -> Matrix {
        Matrix::hstack(&[&self.k, &self.l]).expect("K and L share rows")
    }

    pub fn reconstruct(&self) -> Matrix {
        let n = self.order();
        let top = &self.sigma_matrix() * &self.kl();
        let mut inner = Matrix::zeros(n, n);
        inner.set_block(0, 0, &top);
        &(&self.u * &inner) * &self.u.conj_t()
    }

    /// `||KK* + LL* - I_r||_F`.
    pub fn kl_residual(&self) -> f64 {
        let kl = self.kl();
        (&kl * &kl.conj_t()).dist(&Matrix::identity(self.rank))
    }
}

/// Hartwig-Spindelböck decomposition built from a full SVD `A = W S V*`:
/// `U = W` and `[K L]` is the top `r` rows of `V* W`.
pub fn hs_decomposition(a: &Matrix, tol: &Tolerance) -> Result<HsDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare { op: "hs_decomposition", rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let d = svd(a)?;
    let r = RankReport::from_singular_values(d.s.clone(), n, n, tol).rank;
    if r == 0 {
        return Err(Error::ZeroMatrix);
    }
    let vw = &d.v.conj_t() * &d.u;
    let k = vw.block(0, 0, r, r);
    let l = vw.block(0, r, r, n - r);
    Ok(HsDecomposition { u: d.u, sigma: d.s[..r].to_vec(), k, l, rank: r })
}
