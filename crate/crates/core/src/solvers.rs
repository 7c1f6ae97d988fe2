//! Linear and rank-constrained matrix equations: `AXB = D`, `XAY = B`, the
//! bordered rank equation and its Minkowski-inverse instances.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::hs_decomposition;
use crate::ginv::{inverse, moore_penrose_with_rank, one_inverse_sample, scalar};
use crate::matrix::Matrix;
use crate::metric::{mink_adjoint, MinkowskiMetric};
use crate::minkowski::{diagnose_existence, mink_inverse_frf};
use crate::rank::{rank, rank_with_scale};
use crate::svd::svd;
use crate::tolerance::Tolerance;

fn shape_err(op: &'static str, detail: String) -> Error {
    Error::ShapeMismatch { op, detail }
}

fn expect_shape(m: &Matrix, rows: usize, cols: usize, op: &'static str, what: &str) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(shape_err(op, format!("{what} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    Ok(())
}

/// General solution of a consistent `AXB = D`.
#[derive(Debug, Clone)]
pub struct GeneralSolution {
    /// `A(1) D B(1)`.
    pub particular: Matrix,
    a: Matrix,
    b: Matrix,
    a1: Matrix,
    b1: Matrix,
}

impl GeneralSolution {
    /// Shape `(n, p)` of the solutions and of both free parameters.
    pub fn shape(&self) -> (usize, usize) {
        self.particular.shape()
    }

    /// `particular + (I - A(1)A) Y + Z (I - B B(1))`.
    pub fn produce(&self, y: &Matrix, z: &Matrix) -> Result<Matrix> {
        let (n, p) = self.shape();
        expect_shape(y, n, p, "GeneralSolution::produce", "Y")?;
        expect_shape(z, n, p, "GeneralSolution::produce", "Z")?;
        let left = &Matrix::identity(n) - &(&self.a1 * &self.a);
        let right = &Matrix::identity(p) - &(&self.b * &self.b1);
        Ok(&(&self.particular + &(&left * y)) + &(z * &right))
    }

    /// `||AXB - D||_F` for a candidate `X`, against the `D` used to solve.
    pub fn residual(&self, x: &Matrix, d: &Matrix) -> f64 {
        (&(&self.a * x) * &self.b).dist(d)
    }
}

/// Solves `AXB = D` with `A(1)`, `B(1)` sampled from `WA` (`n x m`) and `WB`
/// (`q x p`); `A` is `m x n`, `B` is `p x q`, `D` is `m x q`.
pub fn solve_axb_d(
    a: &Matrix,
    b: &Matrix,
    d: &Matrix,
    wa: &Matrix,
    wb: &Matrix,
    tol: &Tolerance,
) -> Result<GeneralSolution> {
    let (m, n) = a.shape();
    let (p, q) = b.shape();
    expect_shape(d, m, q, "solve_axb_d", "D")?;
    expect_shape(wa, n, m, "solve_axb_d", "WA")?;
    expect_shape(wb, q, p, "solve_axb_d", "WB")?;
    let a1 = one_inverse_sample(a, wa, tol)?;
    let b1 = one_inverse_sample(b, wb, tol)?;
    let particular = &(&a1 * d) * &b1;
    let residual = (&(a * &particular) * b).dist(d);
    let scale = d.norm_fro() + a.norm_fro() * particular.norm_fro() * b.norm_fro();
    if !tol.accepts(residual, scale) {
        return Err(Error::Inconsistent { residual });
    }
    Ok(GeneralSolution { particular, a: a.clone(), b: b.clone(), a1, b1 })
}

/// Free blocks of the `XAY = B` solution, for `A` of size `m x n`, `B` of
/// size `l x h` and common rank `r`.
#[derive(Debug, Clone)]
pub struct XayFree {
    /// `r x (m - r)`.
    pub x2: Matrix,
    /// `(l - r) x (m - r)`.
    pub x4: Matrix,
    /// `(n - r) x r`.
    pub y3: Matrix,
    /// `(n - r) x (h - r)`.
    pub y4: Matrix,
}

impl XayFree {
    pub fn zeros(a_shape: (usize, usize), b_shape: (usize, usize), r: usize) -> Self {
        let ((m, n), (l, h)) = (a_shape, b_shape);
        Self {
            x2: Matrix::zeros(r, m - r),
            x4: Matrix::zeros(l - r, m - r),
            y3: Matrix::zeros(n - r, r),
            y4: Matrix::zeros(n - r, h - r),
        }
    }
}

/// `M = P [[I_r, 0], [0, 0]] Q` from the SVD: `P = U diag(s_1..s_r, 1..)`,
/// `Q = V*`. Returns `(P^-1, Q^-1)` for the left factor use and `(P, Q)`.
struct Equivalence {
    p: Matrix,
    p_inv: Matrix,
    q: Matrix,
    q_inv: Matrix,
}

fn equivalence(m: &Matrix, r: usize) -> Result<Equivalence> {
    let d = svd(m)?;
    let rows = m.rows();
    let mut stretch = vec![1.0; rows];
    stretch[..r].copy_from_slice(&d.s[..r]);
    let p = Matrix::from_fn(rows, rows, |i, j| d.u[(i, j)] * scalar(stretch[j]));
    let p_inv = Matrix::from_fn(rows, rows, |i, j| d.u[(j, i)].conj() * scalar(1.0 / stretch[i]));
    Ok(Equivalence { p, p_inv, q: d.v.conj_t(), q_inv: d.v })
}

/// One solution `(X, Y)` of `XAY = B` for `rank(A) = rank(B) = r`:
/// `X = P1 [[X1, X2], [0, X4]] P^-1`, `Y = Q^-1 [[X1^-1, 0], [Y3, Y4]] Q1`.
pub fn solve_xay_b(a: &Matrix, b: &Matrix, x1: &Matrix, free: &XayFree, tol: &Tolerance) -> Result<(Matrix, Matrix)> {
    let (m, n) = a.shape();
    let (l, h) = b.shape();
    let r = rank(a, tol)?;
    let rb = rank(b, tol)?;
    if r != rb {
        return Err(Error::RankMismatch(format!("rank(A) = {r}, rank(B) = {rb}")));
    }
    expect_shape(x1, r, r, "solve_xay_b", "X1")?;
    expect_shape(&free.x2, r, m - r, "solve_xay_b", "X2")?;
    expect_shape(&free.x4, l - r, m - r, "solve_xay_b", "X4")?;
    expect_shape(&free.y3, n - r, r, "solve_xay_b", "Y3")?;
    expect_shape(&free.y4, n - r, h - r, "solve_xay_b", "Y4")?;
    let x1_inv = match inverse(x1, tol) {
        Ok(v) => v,
        Err(Error::Singular { .. }) => return Err(Error::SingularParam),
        Err(e) => return Err(e),
    };
    let ea = equivalence(a, r)?;
    let eb = equivalence(b, r)?;
    let xm = Matrix::block2x2(x1, &free.x2, &Matrix::zeros(l - r, r), &free.x4)?;
    let ym = Matrix::block2x2(&x1_inv, &Matrix::zeros(r, h - r), &free.y3, &free.y4)?;
    let x = &(&eb.p * &xm) * &ea.p_inv;
    let y = &(&ea.q_inv * &ym) * &eb.q;
    debug_assert_eq!(ea.p.shape(), (m, m));
    debug_assert_eq!(ea.q.shape(), (n, n));
    Ok((x, y))
}

/// Bordered rank equation `rank([[A, B], [C, X]]) = rank(A)` with `A`
/// `m x n`, `B` `m x m`, `C` `n x n`.
#[derive(Debug, Clone)]
pub struct RankEquationInstance {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

impl RankEquationInstance {
    pub fn new(a: Matrix, b: Matrix, c: Matrix) -> Result<Self> {
        let (m, n) = a.shape();
        expect_shape(&b, m, m, "RankEquationInstance", "B")?;
        expect_shape(&c, n, n, "RankEquationInstance", "C")?;
        Ok(Self { a, b, c })
    }

    /// `[[A, B], [C, X]]`.
    pub fn bordered(&self, x: &Matrix) -> Result<Matrix> {
        expect_shape(x, self.a.cols(), self.a.rows(), "bordered", "X")?;
        Matrix::block2x2(&self.a, &self.b, &self.c, x)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RankEquationSolution {
    #[serde(skip)]
    pub x: Matrix,
    pub rank_a: usize,
    pub bordered_rank: usize,
}

/// `X = C A+ B` when `R(B) ⊆ R(A)` and `R(C*) ⊆ R(A*)`; `Infeasible`
/// otherwise. Ranks use the computed-input tolerance since `B` and `C` are
/// typically assembled from rounded results.
pub fn rank_equation_solve(inst: &RankEquationInstance, tol: &Tolerance) -> Result<RankEquationSolution> {
    let loose = tol.for_computed();
    let a = &inst.a;
    let rank_a = rank(a, &loose)?;
    let rb = rank(&Matrix::hstack(&[a, &inst.b])?, &loose)?;
    if rb != rank_a {
        return Err(Error::Infeasible(format!("R(B) not contained in R(A): rank {rb} vs {rank_a}")));
    }
    let rc = rank(&Matrix::hstack(&[&a.conj_t(), &inst.c.conj_t()])?, &loose)?;
    if rc != rank_a {
        return Err(Error::Infeasible(format!("R(C*) not contained in R(A*): rank {rc} vs {rank_a}")));
    }
    let pinv = if rank_a == 0 { Matrix::zeros(a.cols(), a.rows()) } else { moore_penrose_with_rank(a, rank_a)? };
    let x = &(&inst.c * &pinv) * &inst.b;
    let bordered_rank = rank(&inst.bordered(&x)?, &loose)?;
    if bordered_rank != rank_a {
        return Err(Error::Internal(format!("bordered rank {bordered_rank} differs from rank(A) = {rank_a}")));
    }
    Ok(RankEquationSolution { x, rank_a, bordered_rank })
}

/// `X = I - A^m A`, `Y = I - A A^m`, `Z = A^m`, with the checks that make the
/// triple unique.
#[derive(Debug, Clone)]
pub struct RankCharacterization {
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
    pub rank_a: usize,
    pub bordered_rank: usize,
    /// Relative residuals of `AX = 0`, `X~ = X`, `X^2 = X`.
    pub x_residuals: [f64; 3],
    /// Relative residuals of `YA = 0`, `Y~ = Y`, `Y^2 = Y`.
    pub y_residuals: [f64; 3],
    pub rank_x: usize,
    pub rank_y: usize,
}

impl RankCharacterization {
    pub fn instance(&self, a: &Matrix) -> RankEquationInstance {
        let (m, n) = a.shape();
        RankEquationInstance { a: a.clone(), b: &Matrix::identity(m) - &self.y, c: &Matrix::identity(n) - &self.x }
    }

    pub fn holds(&self, tol: &Tolerance) -> bool {
        let (n, m) = self.z.shape();
        self.x_residuals.iter().chain(&self.y_residuals).all(|&r| tol.accepts(r, 1.0))
            && self.rank_x == n - self.rank_a
            && self.rank_y == m - self.rank_a
            && self.bordered_rank == self.rank_a
    }
}

pub fn mink_rank_characterization(a: &Matrix, tol: &Tolerance) -> Result<RankCharacterization> {
    let (m, n) = a.shape();
    let z = mink_inverse_frf(a, tol)?.result;
    let x = &Matrix::identity(n) - &(&z * a);
    let y = &Matrix::identity(m) - &(a * &z);
    let an = a.norm_fro().max(f64::MIN_POSITIVE);
    let scale = |p: &Matrix| 1.0 + p.norm_fro();
    let x_residuals =
        [(a * &x).norm_fro() / (an * scale(&x)), mink_adjoint(&x).dist(&x) / scale(&x), (&x * &x).dist(&x) / scale(&x)];
    let y_residuals =
        [(&y * a).norm_fro() / (an * scale(&y)), mink_adjoint(&y).dist(&y) / scale(&y), (&y * &y).dist(&y) / scale(&y)];
    let loose = tol.for_computed();
    let rank_a = rank(a, tol)?;
    let bordered = Matrix::block2x2(a, &(&Matrix::identity(m) - &y), &(&Matrix::identity(n) - &x), &z)?;
    Ok(RankCharacterization {
        bordered_rank: rank(&bordered, &loose)?,
        // I - ZA and I - AZ cancel to rounding level when A has full rank.
        rank_x: rank_with_scale(&x, 1.0 + z.norm_fro() * an, &loose)?,
        rank_y: rank_with_scale(&y, 1.0 + z.norm_fro() * an, &loose)?,
        x,
        y,
        z,
        rank_a,
        x_residuals,
        y_residuals,
    })
}

/// `(B, C)` for which `A^m` is the unique solution of the bordered rank
/// equation, built on the Hartwig-Spindelböck decomposition with
/// `J1 = K*`, `J3 = L*` and `T(1) = T+`. `Y1` is `n x r`, `Y2` is
/// `n x (n - r)`.
pub fn bc_parameterization(a: &Matrix, y1: &Matrix, y2: &Matrix, tol: &Tolerance) -> Result<(Matrix, Matrix)> {
    if !a.is_square() {
        return Err(Error::NotSquare { op: "bc_parameterization", rows: a.rows(), cols: a.cols() });
    }
    let d = diagnose_existence(a, tol)?;
    if !d.exists {
        return Err(Error::NotExistent { rank_a: d.rank_a, rank_aas: d.rank_aas, rank_asa: d.rank_asa });
    }
    let n = a.rows();
    let r = d.rank_a;
    expect_shape(y1, n, r, "bc_parameterization", "Y1")?;
    expect_shape(y2, n, n - r, "bc_parameterization", "Y2")?;
    if r == 0 {
        return Ok((Matrix::zeros(n, n), Matrix::zeros(n, n)));
    }
    let dec = hs_decomposition(a, tol)?;
    let g = MinkowskiMetric::new(n);
    let u = &dec.u;
    let ghat = &u.conj_t() * &g.apply_left(u);
    let g1 = ghat.block(0, 0, r, r);
    let kl = dec.kl();
    let delta = &(&kl * &ghat) * &kl.conj_t();
    let sigma = dec.sigma_matrix();
    let z = inverse(&(&(&g1 * &sigma) * &delta), tol)
        .map_err(|e| Error::Internal(format!("G1 S Delta singular after a passing diagnosis: {e}")))?;

    let j = kl.conj_t();
    let skl = &sigma * &kl;
    let t = &j * &skl;
    let t1 = moore_penrose_with_rank(&t, r)?;
    let free = &Matrix::identity(n) - &(&t1 * &t);
    let target = &j * &z;
    let b1 = &skl * &(&(&t1 * &target) + &(&free * y1));
    let b2 = &skl * &(&free * y2);
    let mut inner = Matrix::zeros(n, n);
    inner.set_block(0, 0, &b1);
    inner.set_block(0, r, &b2);
    let b = g.apply_right(&(&(u * &inner) * &u.conj_t()));
    let c = g.apply_left(&(&(u * &t) * &u.conj_t()));
    Ok((b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::verify::{random_matrix, random_rank};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn axb_identity_is_unique() {
        let d = random_matrix(3, 3, 1, 1.0);
        let i = Matrix::identity(3);
        let z = Matrix::zeros(3, 3);
        let sol = solve_axb_d(&i, &i, &d, &z, &z, &tol()).unwrap();
        assert!(sol.particular.dist(&d) < 1e-14);
        let other = sol.produce(&random_matrix(3, 3, 2, 1.0), &random_matrix(3, 3, 3, 1.0)).unwrap();
        assert!(other.dist(&d) < 1e-13);
    }

    #[test]
    fn axb_detects_inconsistency() {
        let a = random_rank(4, 3, 2, 5);
        let b = random_matrix(2, 2, 6, 1.0);
        let d = random_matrix(4, 2, 7, 1.0);
        let r = solve_axb_d(&a, &b, &d, &Matrix::zeros(3, 4), &Matrix::zeros(2, 2), &tol());
        assert!(matches!(r, Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn xay_with_b_equal_a() {
        let a = random_rank(4, 5, 2, 8);
        let free = XayFree::zeros((4, 5), (4, 5), 2);
        let (x, y) = solve_xay_b(&a, &a, &Matrix::identity(2), &free, &tol()).unwrap();
        assert!((&(&x * &a) * &y).dist(&a) < 1e-10 * a.norm_fro());
    }

    #[test]
    fn xay_rejects_singular_parameter_and_rank_mismatch() {
        let a = random_rank(3, 3, 2, 9);
        let free = XayFree::zeros((3, 3), (3, 3), 2);
        let r = solve_xay_b(&a, &a, &Matrix::zeros(2, 2), &free, &tol());
        assert!(matches!(r, Err(Error::SingularParam)));
        let r = solve_xay_b(&a, &Matrix::identity(3), &Matrix::identity(2), &free, &tol());
        assert!(matches!(r, Err(Error::RankMismatch(_))));
    }

    #[test]
    fn rank_equation_trivial_and_infeasible() {
        let a = random_rank(4, 4, 2, 10);
        let inst = RankEquationInstance::new(a.clone(), a.clone(), a.clone()).unwrap();
        let sol = rank_equation_solve(&inst, &tol()).unwrap();
        assert!(sol.x.dist(&a) < 1e-10 * a.norm_fro());
        let outside = RankEquationInstance::new(a.clone(), Matrix::identity(4), a.clone()).unwrap();
        assert!(matches!(rank_equation_solve(&outside, &tol()), Err(Error::Infeasible(_))));
    }

    #[test]
    fn characterization_of_sample() {
        let a = fixtures::sample_5x5();
        let c = mink_rank_characterization(&a, &tol()).unwrap();
        assert!(c.holds(&tol()));
        assert_eq!(c.bordered_rank, 3);
        assert!(c.z.dist(&fixtures::sample_5x5_minv()) < 1e-10);
        let sol = rank_equation_solve(&c.instance(&a), &tol()).unwrap();
        assert!(sol.x.dist(&fixtures::sample_5x5_minv()) < 1e-9);
    }

    #[test]
    fn characterization_of_metric() {
        let g = MinkowskiMetric::new(3).to_dense();
        let c = mink_rank_characterization(&g, &tol()).unwrap();
        assert!(c.x.norm_fro() < 1e-14 && c.y.norm_fro() < 1e-14);
        assert!(c.z.dist(&g) < 1e-14);
    }

    #[test]
    fn bc_parameterization_recovers_inverse() {
        let a = fixtures::sample_5x5();
        let (b, c) = bc_parameterization(&a, &Matrix::zeros(5, 3), &Matrix::zeros(5, 2), &tol()).unwrap();
        let sol = rank_equation_solve(&RankEquationInstance::new(a.clone(), b, c).unwrap(), &tol()).unwrap();
        assert!(sol.x.dist(&fixtures::sample_5x5_minv()) < 1e-9);
        let (b, c) =
            bc_parameterization(&a, &random_matrix(5, 3, 1, 1.0), &random_matrix(5, 2, 2, 1.0), &tol()).unwrap();
        let sol = rank_equation_solve(&RankEquationInstance::new(a, b, c).unwrap(), &tol()).unwrap();
        assert!(sol.x.dist(&fixtures::sample_5x5_minv()) < 1e-9);
    }
}
