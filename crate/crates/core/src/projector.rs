use crate::error::{Error, Result};
use crate::ginv::moore_penrose_with_rank;
use crate::matrix::Matrix;
use crate::rank::{rank, rank_with_scale};
use crate::svd::singular_values;
use crate::tolerance::Tolerance;

/// Oblique projector onto `R(A)` along `N(B)`, computed as `A (BA)+ B`.
///
/// Requires `rank(BA) = rank(A) = rank(B)`, which makes `R(A)` and `N(B)`
/// complementary.
pub fn projector_onto_along(a: &Matrix, b: &Matrix, tol: &Tolerance) -> Result<Matrix> {
    if b.cols() != a.rows() {
        return Err(Error::ShapeMismatch {
            op: "projector_onto_along",
            detail: format!("A is {}x{}, B is {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        });
    }
    let ba = b * a;
    // BA may cancel far below ||B|| ||A||, which sets its rounding level.
    let norm = |m: &Matrix| singular_values(m).map(|s| s.first().copied().unwrap_or(0.0));
    let scale = norm(a)? * norm(b)?;
    let (ra, rb, rba) = (rank(a, tol)?, rank(b, tol)?, rank_with_scale(&ba, scale, tol)?);
    if ra != rb || ra != rba {
        return Err(Error::RankMismatch(format!("rank A = {ra}, rank B = {rb}, rank BA = {rba}")));
    }
    Ok(&(a * &moore_penrose_with_rank(&ba, ra)?) * b)
}
