use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ginv::scalar;
use crate::matrix::{Matrix, C64};
use crate::metric::mink_adjoint;
use crate::minkowski::diagnose_existence;
use crate::rank::numerical_rank;
use crate::svd::singular_values;
use crate::tolerance::Tolerance;

const MAX_DRAWS: usize = 100;

/// Smallest accepted `sigma_min(B~B) / sigma_min(B)^2` for the factors a
/// generator draws. Keeps every instance comfortably inside the equation tolerances.
const MIN_FACTOR_RATIO: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    /// `A = BC` with `B~B` and `CC~` well-conditioned: the inverse exists.
    Existent,
    /// Range spanned by a light-cone vector and vectors orthogonal to it in
    /// the Minkowski form: the inverse does not exist.
    NonExistentIsotropic,
    /// Leading `r x r` block nonsingular, `A4 = A3 A1^-1 A2`, inverse exists.
    BlockExistent,
    /// Unconstrained Gaussian.
    Arbitrary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kind: GenKind,
    pub seed: u64,
    pub scale: f64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.rows == 0 || self.cols == 0 {
            return bad(format!("shape {}x{} must be positive", self.rows, self.cols));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return bad(format!("scale {} must be positive and finite", self.scale));
        }
        let max_rank = self.rows.min(self.cols);
        match self.kind {
            GenKind::Existent | GenKind::BlockExistent if self.rank == 0 || self.rank > max_rank => {
                bad(format!("rank {} outside 1..={max_rank}", self.rank))
            }
            GenKind::NonExistentIsotropic if self.rows < 2 => bad("isotropic kind needs at least 2 rows".into()),
            GenKind::NonExistentIsotropic if self.rank == 0 || self.rank > max_rank.min(self.rows - 1) => {
                bad(format!("isotropic rank {} outside 1..={}", self.rank, max_rank.min(self.rows - 1)))
            }
            GenKind::Arbitrary if self.rank > max_rank => bad(format!("rank {} exceeds {max_rank}", self.rank)),
            _ => Ok(()),
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize, scale: f64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    })
}

/// Dense complex Gaussian matrix, entries scaled by `scale`.
pub fn random_matrix(rows: usize, cols: usize, seed: u64, scale: f64) -> Matrix {
    gaussian(&mut ChaCha8Rng::seed_from_u64(seed), rows, cols, scale)
}

/// Product of Gaussian `rows x rank` and `rank x cols` factors.
pub fn random_rank(rows: usize, cols: usize, rank: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = gaussian(&mut rng, rows, rank, 1.0);
    let c = gaussian(&mut rng, rank, cols, 1.0);
    &b * &c
}

fn well_conditioned(m: &Matrix) -> Result<bool> {
    let s = singular_values(m)?;
    Ok(s.last().copied().unwrap_or(0.0) >= MIN_FACTOR_RATIO * s[0])
}

/// The Minkowski Gram matrix `gram` of `factor` (`B~B` or `CC~`) is far from
/// singular relative to `sigma_min(factor)^2`, which keeps inverses bounded.
fn gram_ok(gram: &Matrix, factor: &Matrix) -> Result<bool> {
    let g = singular_values(gram)?;
    let f = singular_values(factor)?;
    let fmin = f.last().copied().unwrap_or(0.0);
    Ok(g.last().copied().unwrap_or(0.0) >= MIN_FACTOR_RATIO * fmin * fmin)
}

/// Draws a matrix for `spec`. Deterministic in `spec`.
pub fn generate(spec: &GenSpec) -> Result<Matrix> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let tol = Tolerance::default();
    let (m, n, r) = (spec.rows, spec.cols, spec.rank);
    for _ in 0..MAX_DRAWS {
        let candidate = match spec.kind {
            GenKind::Arbitrary => {
                if r == m.min(n) {
                    Some(gaussian(&mut rng, m, n, 1.0))
                } else if r == 0 {
                    Some(Matrix::zeros(m, n))
                } else {
                    let b = gaussian(&mut rng, m, r, 1.0);
                    let c = gaussian(&mut rng, r, n, 1.0);
                    Some(&b * &c)
                }
            }
            GenKind::Existent => {
                let b = gaussian(&mut rng, m, r, 1.0);
                let c = gaussian(&mut rng, r, n, 1.0);
                let ok = gram_ok(&(&mink_adjoint(&b) * &b), &b)?
                    && gram_ok(&(&c * &mink_adjoint(&c)), &c)?
                    && well_conditioned(&b)?
                    && well_conditioned(&c)?;
                ok.then(|| &b * &c)
            }
            GenKind::NonExistentIsotropic => {
                // x = e1 + e2 is light-like; each other column b has
                // b[1] = b[0], making it Minkowski-orthogonal to x. The
                // range then meets N(A~) in span{x}.
                let mut basis = Matrix::zeros(m, r);
                basis[(0, 0)] = scalar(1.0);
                basis[(1, 0)] = scalar(1.0);
                let extra = gaussian(&mut rng, m, r, 1.0);
                for j in 1..r {
                    basis[(0, j)] = extra[(0, j)];
                    basis[(1, j)] = extra[(0, j)];
                    for i in 2..m {
                        basis[(i, j)] = extra[(i, j)];
                    }
                }
                let c = gaussian(&mut rng, r, n, 1.0);
                let ok = numerical_rank(&basis, &tol)?.rank == r && well_conditioned(&c)?;
                ok.then(|| &basis * &c)
            }
            GenKind::BlockExistent => {
                let a1 = gaussian(&mut rng, r, r, 1.0);
                let a2 = gaussian(&mut rng, r, n - r, 1.0);
                let a3 = gaussian(&mut rng, m - r, r, 1.0);
                if !well_conditioned(&a1)? {
                    None
                } else {
                    let a1_inv = crate::ginv::inverse(&a1, &tol)?;
                    let a4 = &(&a3 * &a1_inv) * &a2;
                    let a = Matrix::block2x2(&a1, &a2, &a3, &a4)?;
                    let top = a.block(0, 0, r, n);
                    let left = a.block(0, 0, m, r);
                    let ok = gram_ok(&(&top * &mink_adjoint(&top)), &top)?
                        && gram_ok(&(&mink_adjoint(&left) * &left), &left)?
                        && diagnose_existence(&a, &tol)?.exists;
                    ok.then_some(a)
                }
            }
        };
        if let Some(a) = candidate {
            let scaled = a.scale(scalar(spec.scale));
            let wanted = match spec.kind {
                GenKind::Existent | GenKind::BlockExistent => Some(true),
                GenKind::NonExistentIsotropic => Some(false),
                GenKind::Arbitrary => None,
            };
            match wanted {
                Some(w) if diagnose_existence(&scaled, &tol)?.exists != w => continue,
                _ => return Ok(scaled),
            }
        }
    }
    Err(Error::RetryExhausted { attempts: MAX_DRAWS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::rank;

    fn spec(kind: GenKind, rows: usize, cols: usize, rank: usize, seed: u64) -> GenSpec {
        GenSpec { rows, cols, rank, kind, seed, scale: 1.0 }
    }

    #[test]
    fn existent_draw_passes_diagnosis() {
        let a = generate(&spec(GenKind::Existent, 5, 4, 2, 1)).unwrap();
        let d = diagnose_existence(&a, &Tolerance::default()).unwrap();
        assert!(d.exists);
        assert_eq!(d.rank_a, 2);
    }

    #[test]
    fn isotropic_draw_fails_diagnosis() {
        let a = generate(&spec(GenKind::NonExistentIsotropic, 4, 3, 1, 2)).unwrap();
        let d = diagnose_existence(&a, &Tolerance::default()).unwrap();
        assert!(!d.exists);
        assert_eq!((d.rank_a, d.rank_asa), (1, 0));
    }

    #[test]
    fn block_draw_has_nonsingular_leading_block() {
        let a = generate(&spec(GenKind::BlockExistent, 6, 5, 3, 3)).unwrap();
        assert_eq!(rank(&a.block(0, 0, 3, 3), &Tolerance::default()).unwrap(), 3);
        assert_eq!(rank(&a, &Tolerance::default()).unwrap(), 3);
        assert!(diagnose_existence(&a, &Tolerance::default()).unwrap().exists);
    }

    #[test]
    fn generation_is_deterministic() {
        let s = spec(GenKind::Existent, 7, 5, 3, 99);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(matches!(generate(&spec(GenKind::Existent, 3, 3, 0, 1)), Err(Error::InvalidSpec(_))));
        assert!(matches!(generate(&spec(GenKind::BlockExistent, 3, 3, 4, 1)), Err(Error::InvalidSpec(_))));
        let mut s = spec(GenKind::Arbitrary, 3, 3, 3, 1);
        s.scale = -1.0;
        assert!(matches!(generate(&s), Err(Error::InvalidSpec(_))));
    }
}
