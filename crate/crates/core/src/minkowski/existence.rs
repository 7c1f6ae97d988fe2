use serde::Serialize;

use crate::error::Result;
use crate::ginv::moore_penrose;
use crate::matrix::Matrix;
use crate::metric::mink_adjoint;
use crate::rank::{index_with_scale, rank, rank_with_scale};
use crate::svd::{singular_values, svd};
use crate::tolerance::Tolerance;

/// Verdicts of the independent existence criteria. Each one is equivalent to
/// existence of the Minkowski inverse in exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Criteria {
    /// `rank(AA~) = rank(A~A) = rank(A)`.
    pub rank_equality: bool,
    /// `rank(A~AA~) = rank(A)`.
    pub triple_rank: bool,
    /// `A R(A~) (+) N(A~)` is all of `C^m`.
    pub direct_sum: bool,
    /// `Ind(A~A) <= 1` and `N(A~A) ⊆ N(A)`.
    pub left_index: bool,
    /// `Ind(AA~) <= 1` and `R(A) ⊆ R(AA~)`.
    pub right_index: bool,
    /// `A~A + I - A+A` is nonsingular.
    pub resolvent: bool,
}

impl Criteria {
    pub fn all(&self) -> [bool; 6] {
        [self.rank_equality, self.triple_rank, self.direct_sum, self.left_index, self.right_index, self.resolvent]
    }

    pub fn agree(&self) -> bool {
        let v = self.all();
        v.iter().all(|&b| b == v[0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceDiagnosis {
    pub exists: bool,
    pub rank_a: usize,
    pub rank_aas: usize,
    pub rank_asa: usize,
    pub rank_asaas: usize,
    pub ind_aas: usize,
    pub ind_asa: usize,
    pub resolvent_nonsingular: bool,
    pub criteria: Criteria,
    pub criteria_agree: bool,
}

/// Evaluates every existence criterion with the same rank machinery.
pub fn diagnose_existence(a: &Matrix, tol: &Tolerance) -> Result<ExistenceDiagnosis> {
    let (m, n) = a.shape();
    let a_s = mink_adjoint(a);
    let aas = a * &a_s;
    let asa = &a_s * a;
    let asaas = &asa * &a_s;

    // Products are judged against the norms of their factors: when AA~
    // cancels (isotropic directions) its own norm understates the noise.
    let s1 = singular_values(a)?.first().copied().unwrap_or(0.0);
    let s2 = s1 * s1;
    let rank_a = rank(a, tol)?;
    let rank_aas = rank_with_scale(&aas, s2, tol)?;
    let rank_asa = rank_with_scale(&asa, s2, tol)?;
    let rank_asaas = rank_with_scale(&asaas, s2 * s1, tol)?;
    let ind_aas = index_with_scale(&aas, s2, tol)?;
    let ind_asa = index_with_scale(&asa, s2, tol)?;

    let rank_equality = rank_aas == rank_a && rank_asa == rank_a;
    let triple_rank = rank_asaas == rank_a;

    // R(AA~) and N(A~) are complementary iff their orthonormal bases,
    // side by side, form a nonsingular m x m matrix.
    let direct_sum = {
        let null_dim = m - rank(&a_s, tol)?;
        if rank_aas + null_dim != m {
            false
        } else {
            let range = svd(&aas)?.u.block(0, 0, m, rank_aas);
            let null = svd(&a_s)?.v.block(0, m - null_dim, m, null_dim);
            rank(&Matrix::hstack(&[&range, &null])?, tol)? == m
        }
    };

    let left_index = ind_asa <= 1 && rank_asa == rank_a;
    let right_index = ind_aas <= 1 && rank_with_scale(&Matrix::hstack(&[&aas, a])?, s2 + s1, tol)? == rank_aas;

    let pinv = moore_penrose(a, tol)?;
    let shifted = &(&asa + &Matrix::identity(n)) - &(&pinv * a);
    let resolvent_nonsingular = rank_with_scale(&shifted, s2 + 1.0, tol)? == n;

    let criteria =
        Criteria { rank_equality, triple_rank, direct_sum, left_index, right_index, resolvent: resolvent_nonsingular };
    Ok(ExistenceDiagnosis {
        exists: rank_equality,
        rank_a,
        rank_aas,
        rank_asa,
        rank_asaas,
        ind_aas,
        ind_asa,
        resolvent_nonsingular,
        criteria,
        criteria_agree: criteria.agree(),
    })
}
