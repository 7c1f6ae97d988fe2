use super::existence::diagnose_existence;
use super::mink_residuals;
use crate::error::{Error, Result};
use crate::factor::full_rank_factorization_with_rank;
use crate::ginv::{inverse, moore_penrose_with_rank};
use crate::matrix::Matrix;
use crate::metric::mink_adjoint;
use crate::rank::{rank, rank_with_scale};
use crate::svd::singular_values;
use crate::tolerance::Tolerance;

/// `||A||_2^2`, the rounding scale of `AA~` and `A~A`.
fn gram_scale(a: &Matrix) -> Result<f64> {
    let s1 = singular_values(a)?.first().copied().unwrap_or(0.0);
    Ok(s1 * s1)
}

/// A member of `A{1,3m}`: `X0 + (I - X0 A) Y` with the base
/// `X0 = C+ (B~B)^-1 B~` from a full-rank factorization `A = BC`.
/// `Y` is `n x m`.
pub fn one_three_m(a: &Matrix, y: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let (m, n) = a.shape();
    check_param(y, n, m, "Y")?;
    let a_s = mink_adjoint(a);
    let r = rank(a, tol)?;
    let r_asa = rank_with_scale(&(&a_s * a), gram_scale(a)?, tol)?;
    if r_asa != r {
        return Err(Error::NotExistent13m { rank_a: r, rank_asa: r_asa });
    }
    let base = if r == 0 {
        Matrix::zeros(n, m)
    } else {
        let f = full_rank_factorization_with_rank(a, r)?;
        let bs = mink_adjoint(&f.b);
        let bb = inverse(&(&bs * &f.b), tol).map_err(|_| Error::NotExistent13m { rank_a: r, rank_asa: r_asa })?;
        &(&moore_penrose_with_rank(&f.c, r)? * &bb) * &bs
    };
    let free = &(&Matrix::identity(n) - &(&base * a)) * y;
    Ok(&base + &free)
}

/// A member of `A{1,4m}`: `X0 + Z (I - A X0)` with the base
/// `X0 = C~ (CC~)^-1 B+`. `Z` is `n x m`.
pub fn one_four_m(a: &Matrix, z: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let (m, n) = a.shape();
    check_param(z, n, m, "Z")?;
    let a_s = mink_adjoint(a);
    let r = rank(a, tol)?;
    let r_aas = rank_with_scale(&(a * &a_s), gram_scale(a)?, tol)?;
    if r_aas != r {
        return Err(Error::NotExistent14m { rank_a: r, rank_aas: r_aas });
    }
    let base = if r == 0 {
        Matrix::zeros(n, m)
    } else {
        let f = full_rank_factorization_with_rank(a, r)?;
        let cs = mink_adjoint(&f.c);
        let cc = inverse(&(&f.c * &cs), tol).map_err(|_| Error::NotExistent14m { rank_a: r, rank_aas: r_aas })?;
        &(&cs * &cc) * &moore_penrose_with_rank(&f.b, r)?
    };
    let free = z * &(&Matrix::identity(m) - &(a * &base));
    Ok(&base + &free)
}

/// `X14 A X13`, after checking that `X13` satisfies equations (1), (3m) and
/// `X14` satisfies (1), (4m).
pub fn compose_13m_14m(a: &Matrix, x13: &Matrix, x14: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    let (m, n) = a.shape();
    check_param(x13, n, m, "X13")?;
    check_param(x14, n, m, "X14")?;
    let d = diagnose_existence(a, tol)?;
    if !d.exists {
        return Err(Error::NotExistent { rank_a: d.rank_a, rank_aas: d.rank_aas, rank_asa: d.rank_asa });
    }
    let r13 = mink_residuals(a, x13);
    let r14 = mink_residuals(a, x14);
    for (which, res) in
        [("X13 eq (1)", r13[0]), ("X13 eq (3m)", r13[2]), ("X14 eq (1)", r14[0]), ("X14 eq (4m)", r14[3])]
    {
        if !tol.accepts(res, 1.0) {
            return Err(Error::InvalidWitness { which, residual: res });
        }
    }
    Ok(compose_unchecked(a, x13, x14))
}

pub(crate) fn compose_unchecked(a: &Matrix, x13: &Matrix, x14: &Matrix) -> Matrix {
    &(x14 * a) * x13
}

fn check_param(p: &Matrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if p.shape() != (rows, cols) {
        return Err(Error::ShapeMismatch {
            op: "family parameter",
            detail: format!("{what} is {}x{}, expected {rows}x{cols}", p.rows(), p.cols()),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::metric::MinkowskiMetric;
    use crate::verify::random_matrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn identity_members_with_zero_parameters() {
        let i = Matrix::identity(3);
        assert!(one_three_m(&i, &Matrix::zeros(3, 3), &tol()).unwrap().dist(&i) < 1e-14);
        assert!(one_four_m(&i, &Matrix::zeros(3, 3), &tol()).unwrap().dist(&i) < 1e-14);
        let g = MinkowskiMetric::new(3).to_dense();
        assert!(one_four_m(&g, &Matrix::zeros(3, 3), &tol()).unwrap().dist(&g) < 1e-14);
    }

    #[test]
    fn one_three_m_projects_like_the_inverse() {
        let a = fixtures::sample_5x5();
        let minv = fixtures::sample_5x5_minv();
        for seed in [0, 1, 2] {
            let y = if seed == 0 { Matrix::zeros(5, 5) } else { random_matrix(5, 5, seed, 1.0) };
            let x = one_three_m(&a, &y, &tol()).unwrap();
            assert!((&a * &x).dist(&(&a * &minv)) < 1e-10);
            let res = mink_residuals(&a, &x);
            assert!(res[0] < 1e-12 && res[2] < 1e-12);
            assert!((&(&mink_adjoint(&a) * &a) * &x).dist(&mink_adjoint(&a)) < 1e-10);
        }
    }

    #[test]
    fn one_four_m_projects_like_the_inverse() {
        let a = fixtures::sample_5x5();
        let minv = fixtures::sample_5x5_minv();
        let x = one_four_m(&a, &random_matrix(5, 5, 3, 1.0), &tol()).unwrap();
        assert!((&x * &a).dist(&(&minv * &a)) < 1e-10);
        assert!((&(&x * &a) * &mink_adjoint(&a)).dist(&mink_adjoint(&a)) < 1e-10);
    }

    #[test]
    fn compose_recovers_inverse_and_validates() {
        let a = fixtures::sample_5x5();
        let x13 = one_three_m(&a, &random_matrix(5, 5, 4, 1.0), &tol()).unwrap();
        let x14 = one_four_m(&a, &random_matrix(5, 5, 5, 1.0), &tol()).unwrap();
        let x = compose_13m_14m(&a, &x13, &x14, &tol()).unwrap();
        assert!(x.dist(&fixtures::sample_5x5_minv()) < 1e-9);
        let err = compose_13m_14m(&a, &x14, &x13, &tol());
        assert!(matches!(err, Err(Error::InvalidWitness { .. })));
    }

    #[test]
    fn light_cone_column_has_no_one_three_m() {
        let a = Matrix::from_rows(&[[1.0], [1.0]]);
        assert!(matches!(one_three_m(&a, &Matrix::zeros(1, 2), &tol()), Err(Error::NotExistent13m { .. })));
    }
}
