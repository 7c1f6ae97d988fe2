use serde::Serialize;

use super::check::{check_candidate, CheckReport};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::minkowski::{compute, diagnose_existence, AlgoParams, Algorithm, ExistenceDiagnosis};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Serialize)]
pub struct AlgorithmOutcome {
    pub algorithm: String,
    /// `ok`, `refused` (not existent) or `error`.
    pub status: &'static str,
    pub check: Option<CheckReport>,
    pub internal_gap: Option<f64>,
    /// Check of the formula evaluated in force mode, for non-existent input.
    /// `None` with `status = refused` means the forced formula broke down.
    pub forced_check: Option<CheckReport>,
    pub error: Option<String>,
    #[serde(skip)]
    pub result: Option<Matrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub diagnosis: ExistenceDiagnosis,
    pub outcomes: Vec<AlgorithmOutcome>,
    /// Largest relative Frobenius gap between two algorithm results.
    pub max_pairwise_gap: Option<f64>,
    /// Gap allowed between algorithms: `10 * eq_rtol`.
    pub agreement_tolerance: f64,
    /// Existent: every algorithm ran, passed its check and agreed.
    /// Non-existent: every algorithm refused and no forced output passed.
    pub consistent: bool,
}

fn applicable(a: &Matrix, rank_a: usize) -> Vec<Algorithm> {
    let mut algs = vec![Algorithm::Frf];
    if a.is_square() {
        algs.push(Algorithm::Hs);
    }
    // Higher Zlobec powers square the conditioning per step, so only the
    // lowest powers are held to the common agreement tolerance.
    algs.extend([
        Algorithm::Zlobec { k: 0, l: 0 },
        Algorithm::Zlobec2 { k: 0, l: 0 },
        Algorithm::Group,
        Algorithm::Resolvent,
        Algorithm::Compose13m14m,
    ]);
    if rank_a > 0 {
        algs.push(Algorithm::Block { r: rank_a });
    }
    algs
}

fn not_applicable(e: &Error) -> bool {
    matches!(e, Error::BlockSingular { .. } | Error::RankMismatch(_) | Error::InvalidSpec(_) | Error::NotSquare { .. })
}

/// Runs every applicable algorithm on `a` and compares them.
pub fn cross_check(a: &Matrix, tol: &Tolerance) -> Result<CrossCheckReport> {
    let diagnosis = diagnose_existence(a, tol)?;
    let params = AlgoParams { seed: Some(0) };
    let mut outcomes = Vec::new();
    for alg in applicable(a, diagnosis.rank_a) {
        let run = compute(a, alg, &params, tol, false);
        let mut out = AlgorithmOutcome {
            algorithm: alg.label(),
            status: "ok",
            check: None,
            internal_gap: None,
            forced_check: None,
            error: None,
            result: None,
        };
        match run {
            Ok(c) => {
                out.check = Some(check_candidate(a, &c.result, tol)?);
                out.internal_gap = c.internal_gap;
                out.result = Some(c.result);
            }
            Err(e) if not_applicable(&e) => continue,
            Err(Error::NotExistent { .. }) => {
                out.status = "refused";
                if let Ok(c) = compute(a, alg, &params, tol, true) {
                    out.forced_check = Some(check_candidate(a, &c.result, tol)?);
                }
            }
            Err(e) => {
                out.status = "error";
                out.error = Some(e.to_string());
            }
        }
        outcomes.push(out);
    }

    let agreement_tolerance = 10.0 * tol.eq_rtol;
    let results: Vec<&Matrix> = outcomes.iter().filter_map(|o| o.result.as_ref()).collect();
    let mut max_gap: Option<f64> = None;
    for (i, x) in results.iter().enumerate() {
        for y in &results[i + 1..] {
            let floor = tol.eq_atol.max(f64::MIN_POSITIVE);
            let g = x.dist(y) / x.norm_fro().max(y.norm_fro()).max(floor);
            max_gap = Some(max_gap.map_or(g, |m| m.max(g)));
        }
    }

    let consistent = if diagnosis.exists {
        outcomes.iter().all(|o| o.status == "ok" && o.check.is_some_and(|c| c.verdict))
            && max_gap.is_none_or(|g| g <= agreement_tolerance)
    } else {
        outcomes.iter().all(|o| o.status == "refused" && !o.forced_check.is_some_and(|c| c.verdict))
    };
    Ok(CrossCheckReport { diagnosis, outcomes, max_pairwise_gap: max_gap, agreement_tolerance, consistent })
}
