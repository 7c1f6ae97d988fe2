use super::existence::{diagnose_existence, ExistenceDiagnosis};
use super::families::{compose_unchecked, one_four_m, one_three_m};
use super::{Algorithm, InverseComputation};
use crate::error::{Error, Result};
use crate::factor::{full_rank_factorization_with_rank, hs_decomposition};
use crate::ginv::{
    group_inverse_with_rank, inverse, moore_penrose, moore_penrose_with_rank, one_inverse_from_pinv, scalar,
};
use crate::matrix::Matrix;
use crate::metric::{mink_adjoint, MinkowskiMetric};
use crate::rank::{numerical_rank, rank};
use crate::svd::svd;
use crate::tolerance::Tolerance;
use crate::verify::random_matrix;

/// Free parameters for [`compute`]: the `{1}`-inverse samples (Zlobec,
/// resolvent) and family members (compose) are drawn from `seed`, or set to
/// zero when it is `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AlgoParams {
    pub seed: Option<u64>,
}

impl AlgoParams {
    fn draw(&self, rows: usize, cols: usize, salt: u64) -> Matrix {
        match self.seed {
            Some(s) => random_matrix(rows, cols, s.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt, 1.0),
            None => Matrix::zeros(rows, cols),
        }
    }
}

/// Runs `alg` on `a`. With `force`, a failed existence diagnosis does not stop
/// the formula; singular factors are then replaced by Moore-Penrose inverses.
pub fn compute(
    a: &Matrix,
    alg: Algorithm,
    params: &AlgoParams,
    tol: &Tolerance,
    force: bool,
) -> Result<InverseComputation> {
    let (m, n) = a.shape();
    match alg {
        Algorithm::Frf => frf(a, tol, force),
        Algorithm::Hs => hs(a, tol, force),
        Algorithm::Zlobec { k, l } => zlobec(a, k, l, &params.draw(m, n, 1), tol, force),
        Algorithm::Zlobec2 { k, l } => zlobec2(a, k, l, &params.draw(m, m, 2), &params.draw(n, n, 3), tol, force),
        Algorithm::Group => group(a, tol, force),
        Algorithm::Resolvent => resolvent(a, &params.draw(n, m, 4), tol, force),
        Algorithm::Block { r } => block(a, r, tol, force),
        Algorithm::Compose13m14m => {
            let d = gate(a, tol, force)?;
            let x13 = one_three_m(a, &params.draw(n, m, 5), tol)?;
            let x14 = one_four_m(a, &params.draw(n, m, 6), tol)?;
            let x = compose_unchecked(a, &x13, &x14);
            Ok(InverseComputation::new(alg, a, x, None, !d.exists))
        }
    }
}

pub fn mink_inverse_frf(a: &Matrix, tol: &Tolerance) -> Result<InverseComputation> {
    frf(a, tol, false)
}

pub fn mink_inverse_hs(a: &Matrix, tol: &Tolerance) -> Result<InverseComputation> {
    hs(a, tol, false)
}

/// `W` is the `m x n` parameter of the inner `{1}`-inverse.
pub fn mink_inverse_zlobec(a: &Matrix, k: u32, l: u32, w: &Matrix, tol: &Tolerance) -> Result<InverseComputation> {
    zlobec(a, k, l, w, tol, false)
}

/// `W1` is `m x m`, `W2` is `n x n`.
pub fn mink_inverse_zlobec2(
    a: &Matrix,
    k: u32,
    l: u32,
    w1: &Matrix,
    w2: &Matrix,
    tol: &Tolerance,
) -> Result<InverseComputation> {
    zlobec2(a, k, l, w1, w2, tol, false)
}

pub fn mink_inverse_group(a: &Matrix, tol: &Tolerance) -> Result<InverseComputation> {
    group(a, tol, false)
}

/// `W` is the `n x m` parameter of the `{1}`-inverse of `A`.
pub fn mink_inverse_resolvent(a: &Matrix, w: &Matrix, tol: &Tolerance) -> Result<InverseComputation> {
    resolvent(a, w, tol, false)
}

pub fn mink_inverse_block(a: &Matrix, r: usize, tol: &Tolerance) -> Result<InverseComputation> {
    block(a, r, tol, false)
}

fn gate(a: &Matrix, tol: &Tolerance, force: bool) -> Result<ExistenceDiagnosis> {
    let d = diagnose_existence(a, tol)?;
    if !d.exists && !force {
        return Err(Error::NotExistent { rank_a: d.rank_a, rank_aas: d.rank_aas, rank_asa: d.rank_asa });
    }
    Ok(d)
}

/// Rank of an intermediate product: the theoretical value when the inverse
/// exists, otherwise whatever the product numerically has.
fn product_rank(d: &ExistenceDiagnosis, p: &Matrix, tol: &Tolerance) -> Result<usize> {
    if d.exists {
        Ok(d.rank_a)
    } else {
        rank(p, &tol.for_computed())
    }
}

/// Inverse of a factor that theory says is nonsingular.
fn invert(m: &Matrix, tol: &Tolerance, force: bool, err: impl FnOnce(usize, f64) -> Error) -> Result<Matrix> {
    let rep = numerical_rank(m, tol)?;
    if rep.rank == m.rows() {
        return inverse(m, tol);
    }
    if force {
        moore_penrose(m, tol)
    } else {
        Err(err(rep.rank, rep.condition()))
    }
}

fn singular(op: &'static str) -> impl FnOnce(usize, f64) -> Error {
    move |_, cond| Error::SingularFactor { factor: op, cond }
}

fn check_shape(w: &Matrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if w.shape() != (rows, cols) {
        return Err(Error::ShapeMismatch {
            op: "parameter",
            detail: format!("{what} is {}x{}, expected {rows}x{cols}", w.rows(), w.cols()),
        });
    }
    Ok(())
}

pub(crate) fn rel_gap(x: &Matrix, y: &Matrix, tol: &Tolerance) -> f64 {
    x.rel_dist(y, tol.eq_atol.max(f64::MIN_POSITIVE))
}

fn frf(a: &Matrix, tol: &Tolerance, force: bool) -> Result<InverseComputation> {
    let d = gate(a, tol, force)?;
    let x = frf_formula(a, d.rank_a, tol, force)?;
    Ok(InverseComputation::new(Algorithm::Frf, a, x, None, !d.exists))
}

/// `C~ (CC~)^-1 (B~B)^-1 B~` from a rank-`r` factorization `A = BC`.
pub(crate) fn frf_formula(a: &Matrix, r: usize, tol: &Tolerance, force: bool) -> Result<Matrix> {
    if r == 0 {
        return Ok(Matrix::zeros(a.cols(), a.rows()));
    }
    let f = full_rank_factorization_with_rank(a, r)?;
    let (bs, cs) = (mink_adjoint(&f.b), mink_adjoint(&f.c));
    let cc = invert(&(&f.c * &cs), tol, force, singular("CC~"))?;
    let bb = invert(&(&bs * &f.b), tol, force, singular("B~B"))?;
    Ok(&(&(&cs * &cc) * &bb) * &bs)
}

fn hs(a: &Matrix, tol: &Tolerance, force: bool) -> Result<InverseComputation> {
    if !a.is_square() {
        return Err(Error::NotSquare { op: "mink_inverse_hs", rows: a.rows(), cols: a.cols() });
    }
    let d = gate(a, tol, force)?;
    let n = a.rows();
    if d.rank_a == 0 {
        return Ok(InverseComputation::new(Algorithm::Hs, a, Matrix::zeros(n, n), Some(0.0), !d.exists));
    }
    let dec = hs_decomposition(a, tol)?;
    let r = dec.rank;
    let g = MinkowskiMetric::new(n);
    let u = &dec.u;
    let ghat = &u.conj_t() * &g.apply_left(u);
    let (g1, g2) = (ghat.block(0, 0, r, r), ghat.block(0, r, r, n - r));
    let (g3, g4) = (ghat.block(r, 0, n - r, r), ghat.block(r, r, n - r, n - r));
    let kl = dec.kl();
    let delta = &(&kl * &ghat) * &kl.conj_t();
    let sigma = dec.sigma_matrix();

    if rank(&g1, tol)? < r && !force {
        return Err(Error::SingularG1 { rank: rank(&g1, tol)?, order: r });
    }
    let sd = &sigma * &delta;
    let sd_inv = invert(&sd, tol, force, |rank, _| Error::SingularDelta { rank, order: r })?;
    let z = invert(&(&g1 * &sd), tol, force, |rank, _| Error::SingularG1 { rank, order: r })?;

    let (ks, ls) = (dec.k.conj_t(), dec.l.conj_t());
    let mut inner = Matrix::zeros(n, n);
    inner.set_block(0, 0, &(&ks * &z));
    inner.set_block(r, 0, &(&ls * &z));
    let x = g.apply_right(&g.apply_left(&(&(u * &inner) * &u.conj_t())));

    // Expanded form, with the metric absorbed into the blocks of U*GU.
    let top = &(&g1 * &ks) + &(&g2 * &ls);
    let bottom = &(&g3 * &ks) + &(&g4 * &ls);
    let zg2 = &z * &g2;
    let expanded = Matrix::block2x2(&(&top * &sd_inv), &(&top * &zg2), &(&bottom * &sd_inv), &(&bottom * &zg2))?;
    let x2 = &(u * &expanded) * &u.conj_t();
    let gap = rel_gap(&x2, &x, tol);
    Ok(InverseComputation::new(Algorithm::Hs, a, x, Some(gap), !d.exists))
}

/// Orthogonal projectors onto `R(A)` and `R(A*)` from the SVD of `A`, with
/// their metric images, which are the projectors onto `R(A~*)` and `R(A~)`.
struct Ranges {
    a: Matrix,
    a_star: Matrix,
    as_star: Matrix,
    as_range: Matrix,
}

fn ranges(a: &Matrix, r: usize) -> Result<Ranges> {
    let (m, n) = a.shape();
    let d = svd(a)?;
    let ur = d.u.block(0, 0, m, r);
    let vr = d.v.block(0, 0, n, r);
    let pa = &ur * &ur.conj_t();
    let pas = &vr * &vr.conj_t();
    let (gm, gn) = (MinkowskiMetric::new(m), MinkowskiMetric::new(n));
    Ok(Ranges {
        as_star: gm.apply_right(&gm.apply_left(&pa)),
        as_range: gn.apply_right(&gn.apply_left(&pas)),
        a: pa,
        a_star: pas,
    })
}

/// `M+ + W - P W Q` where `P = M+M` and `Q = MM+`. When the projectors are
/// known from theory they are passed in; otherwise they come from `M+`.
fn sampled_one_inverse(mat: &Matrix, r: usize, w: &Matrix, proj: Option<(&Matrix, &Matrix)>) -> Result<Matrix> {
    let pinv = moore_penrose_with_rank(mat, r)?;
    match proj {
        Some((p, q)) => Ok(&(&pinv + w) - &(&(p * w) * q)),
        None => one_inverse_from_pinv(mat, &pinv, w),
    }
}

/// Scales `A` to unit Frobenius norm: powers of `A~A` then stay bounded, and
/// the inverse of the scaled matrix is rescaled by the same factor.
fn normalized(a: &Matrix) -> (Matrix, f64) {
    let s = a.norm_fro();
    (a.scale(scalar(1.0 / s)), 1.0 / s)
}

fn zlobec(a: &Matrix, k: u32, l: u32, w: &Matrix, tol: &Tolerance, force: bool) -> Result<InverseComputation> {
    let (m, n) = a.shape();
    check_shape(w, m, n, "W")?;
    let d = gate(a, tol, force)?;
    let alg = Algorithm::Zlobec { k, l };
    if d.rank_a == 0 {
        return Ok(InverseComputation::new(alg, a, Matrix::zeros(n, m), None, !d.exists));
    }
    let (an, c) = normalized(a);
    let a_s = mink_adjoint(&an);
    let s = &a_s * &an;
    let inner = &s.pow(k + l + 1)? * &a_s;
    let r = product_rank(&d, &inner, tol)?;
    // N(inner) = N(A~) and R(inner) = R(A~) when the inverse exists.
    let sp = if d.exists { Some(ranges(&an, r)?) } else { None };
    let inner1 = sampled_one_inverse(&inner, r, w, sp.as_ref().map(|p| (&p.as_star, &p.as_range)))?;
    let left = &s.pow(k)? * &a_s;
    let right = &s.pow(l)? * &a_s;
    let x = (&(&left * &inner1) * &right).scale(scalar(c));
    Ok(InverseComputation::new(alg, a, x, None, !d.exists))
}

fn zlobec2(
    a: &Matrix,
    k: u32,
    l: u32,
    w1: &Matrix,
    w2: &Matrix,
    tol: &Tolerance,
    force: bool,
) -> Result<InverseComputation> {
    let (m, n) = a.shape();
    check_shape(w1, m, m, "W1")?;
    check_shape(w2, n, n, "W2")?;
    let d = gate(a, tol, force)?;
    let alg = Algorithm::Zlobec2 { k, l };
    if d.rank_a == 0 {
        return Ok(InverseComputation::new(alg, a, Matrix::zeros(n, m), None, !d.exists));
    }
    let (an, c) = normalized(a);
    let a_s = mink_adjoint(&an);
    let s = &a_s * &an;
    let t = &an * &a_s;
    let tk = t.pow(k + 1)?;
    let sl = s.pow(l + 1)?;
    let (rt, rs) = (product_rank(&d, &tk, tol)?, product_rank(&d, &sl, tol)?);
    // (AA~)^j has null space N(A~) and range R(A); (A~A)^j has null space
    // N(A) and range R(A~).
    let sp = if d.exists { Some(ranges(&an, d.rank_a)?) } else { None };
    let tk1 = sampled_one_inverse(&tk, rt, w1, sp.as_ref().map(|p| (&p.as_star, &p.a)))?;
    let sl1 = sampled_one_inverse(&sl, rs, w2, sp.as_ref().map(|p| (&p.a_star, &p.as_range)))?;
    let left = &s.pow(k)? * &a_s;
    let right = &s.pow(l)? * &a_s;
    let x = (&(&(&(&left * &tk1) * &an) * &sl1) * &right).scale(scalar(c));
    Ok(InverseComputation::new(alg, a, x, None, !d.exists))
}

fn group(a: &Matrix, tol: &Tolerance, force: bool) -> Result<InverseComputation> {
    let d = gate(a, tol, force)?;
    let a_s = mink_adjoint(a);
    let s = &a_s * a;
    let t = a * &a_s;
    let (rs, rt) = if d.exists { (d.rank_a, d.rank_a) } else { (d.rank_asa, d.rank_aas) };
    let internal = |e: Error| match e {
        Error::IndexNotOne { index } if d.exists => {
            Error::Internal(format!("index {index} after a passing existence diagnosis"))
        }
        e => e,
    };
    let x = &group_inverse_with_rank(&s, rs, tol).map_err(internal)? * &a_s;
    let x2 = &a_s * &group_inverse_with_rank(&t, rt, tol).map_err(internal)?;
    let gap = rel_gap(&x2, &x, tol);
    Ok(InverseComputation::new(Algorithm::Group, a, x, Some(gap), !d.exists))
}

fn resolvent(a: &Matrix, w: &Matrix, tol: &Tolerance, force: bool) -> Result<InverseComputation> {
    let (m, n) = a.shape();
    check_shape(w, n, m, "W")?;
    let d = gate(a, tol, force)?;
    let a_s = mink_adjoint(a);
    let a1 = one_inverse_from_pinv(a, &moore_penrose_with_rank(a, d.rank_a)?, w)?;
    let shifted = &(&(&a_s * a) + &Matrix::identity(n)) - &(&a1 * a);
    let dual = &(&(a * &a_s) + &Matrix::identity(m)) - &(a * &a1);
    let resolvent_err = |rank, cond| Error::Singular { rank, order: n, cond };
    let x = mink_adjoint(&(a * &invert(&shifted, tol, force, resolvent_err)?));
    let dual_err = |rank, cond| Error::Singular { rank, order: m, cond };
    let x2 = mink_adjoint(&(&invert(&dual, tol, force, dual_err)? * a));
    let gap = rel_gap(&x2, &x, tol);
    Ok(InverseComputation::new(Algorithm::Resolvent, a, x, Some(gap), !d.exists))
}

fn block(a: &Matrix, r: usize, tol: &Tolerance, force: bool) -> Result<InverseComputation> {
    let (m, n) = a.shape();
    if r == 0 || r > m.min(n) {
        return Err(Error::InvalidSpec(format!("block size {r} outside 1..={}", m.min(n))));
    }
    let a1 = a.block(0, 0, r, r);
    if rank(&a1, tol)? < r {
        return Err(Error::BlockSingular { order: r });
    }
    let ra = rank(a, tol)?;
    if ra != r {
        return Err(Error::RankMismatch(format!("rank(A) = {ra}, block size {r}")));
    }
    let d = gate(a, tol, force)?;
    let row = mink_adjoint(&a.block(0, 0, r, n));
    let col = mink_adjoint(&a.block(0, 0, m, r));
    let mid = &(&col * a) * &row;
    let mid_inv = invert(&mid, tol, force, |rank, cond| Error::Singular { rank, order: r, cond })?;
    let x = &(&row * &mid_inv) * &col;
    Ok(InverseComputation::new(Algorithm::Block { r }, a, x, None, !d.exists))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::verify::{generate, GenKind, GenSpec};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn existent(rows: usize, cols: usize, rank: usize, seed: u64) -> Matrix {
        generate(&GenSpec { rows, cols, rank, kind: GenKind::Existent, seed, scale: 1.0 }).unwrap()
    }

    #[test]
    fn frf_reproduces_sample() {
        let x = mink_inverse_frf(&fixtures::sample_5x5(), &tol()).unwrap();
        assert!(x.result.dist(&fixtures::sample_5x5_minv()) < 1e-10);
        assert!(x.passes(&tol()));
    }

    #[test]
    fn metric_is_its_own_inverse() {
        let g = MinkowskiMetric::new(4).to_dense();
        for alg in
            [Algorithm::Frf, Algorithm::Hs, Algorithm::Group, Algorithm::Resolvent, Algorithm::Zlobec2 { k: 2, l: 1 }]
        {
            let x = compute(&g, alg, &AlgoParams::default(), &tol(), false).unwrap();
            assert!(x.result.dist(&g) < 1e-12, "{alg:?}");
        }
    }

    #[test]
    fn hs_forms_agree_and_match_frf() {
        let a = existent(6, 6, 3, 2);
        let h = mink_inverse_hs(&a, &tol()).unwrap();
        let f = mink_inverse_frf(&a, &tol()).unwrap();
        assert!(h.internal_gap.unwrap() < 1e-10);
        assert!(rel_gap(&h.result, &f.result, &tol()) < 1e-9);
    }

    #[test]
    fn hs_rejects_rectangular() {
        assert!(matches!(mink_inverse_hs(&Matrix::zeros(2, 3), &tol()), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn zlobec_is_parameter_invariant() {
        let a = existent(6, 5, 3, 2);
        let base = mink_inverse_zlobec(&a, 0, 0, &Matrix::zeros(6, 5), &tol()).unwrap();
        let w0 = mink_inverse_zlobec(&a, 2, 1, &Matrix::zeros(6, 5), &tol()).unwrap();
        let w = mink_inverse_zlobec(&a, 2, 1, &random_matrix(6, 5, 77, 1.0), &tol()).unwrap();
        // W drops out to rounding; (k, l) only through the conditioning of
        // the powers of A~A.
        assert!(rel_gap(&w.result, &w0.result, &tol()) < 1e-12);
        assert!(rel_gap(&w.result, &base.result, &tol()) < 1e-8);
    }

    #[test]
    fn zlobec2_matches_frf() {
        let a = existent(5, 6, 3, 3);
        let f = mink_inverse_frf(&a, &tol()).unwrap();
        let z =
            mink_inverse_zlobec2(&a, 1, 2, &random_matrix(5, 5, 1, 1.0), &random_matrix(6, 6, 2, 1.0), &tol()).unwrap();
        assert!(rel_gap(&z.result, &f.result, &tol()) < 1e-8);
    }

    #[test]
    fn group_of_real_diagonal() {
        let a = Matrix::from_rows(&[[2.0, 0.0], [0.0, 3.0]]);
        let x = mink_inverse_group(&a, &tol()).unwrap();
        assert!(x.result.dist(&Matrix::from_rows(&[[0.5, 0.0], [0.0, 1.0 / 3.0]])) < 1e-15);
    }

    #[test]
    fn block_on_nonsingular_is_inverse() {
        let a = random_matrix(4, 4, 11, 1.0);
        let x = mink_inverse_block(&a, 4, &tol()).unwrap();
        assert!((&x.result * &a).dist(&Matrix::identity(4)) < 1e-10);
    }

    #[test]
    fn block_rejects_singular_leading_block() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        assert!(matches!(mink_inverse_block(&a, 1, &tol()), Err(Error::BlockSingular { order: 1 })));
    }

    #[test]
    fn refuses_without_existence_unless_forced() {
        let a = fixtures::no_inverse_5x4();
        assert!(matches!(mink_inverse_frf(&a, &tol()), Err(Error::NotExistent { rank_a: 2, .. })));
        let forced = compute(&a, Algorithm::Frf, &AlgoParams::default(), &tol(), true).unwrap();
        assert!(forced.forced && !forced.passes(&tol()));
    }

    #[test]
    fn zero_matrix_inverse_is_zero() {
        let x = mink_inverse_frf(&Matrix::zeros(3, 2), &tol()).unwrap();
        assert_eq!(x.result, Matrix::zeros(2, 3));
    }

    #[test]
    fn parameter_shapes_are_checked() {
        let a = fixtures::sample_5x5();
        let w = Matrix::zeros(2, 2);
        assert!(matches!(mink_inverse_resolvent(&a, &w, &tol()), Err(Error::ShapeMismatch { .. })));
    }
}
