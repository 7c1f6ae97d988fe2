//! Human and JSON renderings of command results. The JSON form always has
//! the top-level keys `verdict`, `residuals` and `ranks`; commands may add
//! further keys next to them.

use mink_core::minkowski::MooreCheck;
use mink_core::{CheckReport, CrossCheckReport, ExistenceDiagnosis, InverseComputation};
use serde_json::{json, Map, Value};

pub struct Report {
    lines: Vec<String>,
    json: Value,
}

fn residual_map(r: [f64; 4]) -> Value {
    json!({ "eq1": r[0], "eq2": r[1], "eq3m": r[2], "eq4m": r[3] })
}

fn residual_line(r: [f64; 4]) -> String {
    format!("residuals: eq1={:.3e} eq2={:.3e} eq3m={:.3e} eq4m={:.3e}", r[0], r[1], r[2], r[3])
}

fn diagnosis_ranks(d: &ExistenceDiagnosis) -> Value {
    json!({
        "rank_a": d.rank_a,
        "rank_aas": d.rank_aas,
        "rank_asa": d.rank_asa,
        "rank_asaas": d.rank_asaas,
        "ind_aas": d.ind_aas,
        "ind_asa": d.ind_asa,
    })
}

fn diagnosis_lines(d: &ExistenceDiagnosis) -> Vec<String> {
    let c = &d.criteria;
    vec![
        format!("exists: {}", d.exists),
        format!(
            "rank A = {}, rank AA~ = {}, rank A~A = {}, rank A~AA~ = {}",
            d.rank_a, d.rank_aas, d.rank_asa, d.rank_asaas
        ),
        format!("Ind(AA~) = {}, Ind(A~A) = {}", d.ind_aas, d.ind_asa),
        format!(
            "criteria: rank_equality={} triple_rank={} direct_sum={} left_index={} right_index={} resolvent={}",
            c.rank_equality, c.triple_rank, c.direct_sum, c.left_index, c.right_index, c.resolvent
        ),
    ]
}

impl Report {
    pub fn existence(d: &ExistenceDiagnosis) -> Self {
        let json = json!({
            "verdict": d.exists,
            "residuals": {},
            "ranks": diagnosis_ranks(d),
            "criteria": d.criteria,
            "criteria_agree": d.criteria_agree,
        });
        Report { lines: diagnosis_lines(d), json }
    }

    pub fn inverse(c: &InverseComputation, check: &CheckReport, rank_a: usize, rank_x: usize) -> Self {
        let mut lines = vec![format!("algorithm: {}", c.algorithm.label())];
        if c.forced {
            lines.push("forced: inverse does not exist, formula evaluated anyway".into());
        }
        lines.push(residual_line(c.residuals));
        if let Some(g) = c.internal_gap {
            lines.push(format!("internal gap: {g:.3e}"));
        }
        lines.push(format!("range_ok={} null_ok={}", check.range_ok, check.null_ok));
        lines.push(format!("verdict: {}", check.verdict));
        let json = json!({
            "verdict": check.verdict,
            "residuals": residual_map(c.residuals),
            "ranks": { "rank_a": rank_a, "rank_x": rank_x },
            "algorithm": c.algorithm.label(),
            "forced": c.forced,
            "internal_gap": c.internal_gap,
        });
        Report { lines, json }
    }

    pub fn check(check: &CheckReport, moore: &MooreCheck, verdict: bool, ranks: [usize; 2]) -> Self {
        let lines = vec![
            residual_line(check.residuals()),
            format!("range R(X) = R(A~): {}", check.range_ok),
            format!("null N(X) = N(A~): {}", check.null_ok),
            format!(
                "range/null characterization: holds={} reproduces_range={} annihilates_null={} range_contained={}",
                moore.holds, moore.reproduces_range, moore.annihilates_null, moore.range_contained
            ),
            format!("verdict: {verdict}"),
        ];
        let json = json!({
            "verdict": verdict,
            "residuals": residual_map(check.residuals()),
            "ranks": { "rank_a": ranks[0], "rank_x": ranks[1] },
            "range_ok": check.range_ok,
            "null_ok": check.null_ok,
            "characterization": moore,
        });
        Report { lines, json }
    }

    pub fn cross_check(rep: &CrossCheckReport) -> Self {
        let mut lines = diagnosis_lines(&rep.diagnosis);
        let mut residuals = Map::new();
        for o in &rep.outcomes {
            let mut line = format!("{:<18} {}", o.algorithm, o.status);
            if let Some(c) = o.check.as_ref().or(o.forced_check.as_ref()) {
                line += &format!(
                    "  max residual {:.3e}  verdict {}",
                    c.residuals().iter().fold(0.0f64, |m, &r| m.max(r)),
                    c.verdict
                );
                residuals.insert(o.algorithm.clone(), residual_map(c.residuals()));
            }
            if let Some(e) = &o.error {
                line += &format!("  ({e})");
            }
            lines.push(line);
        }
        if let Some(g) = rep.max_pairwise_gap {
            lines.push(format!("max pairwise gap: {g:.3e} (tolerance {:.1e})", rep.agreement_tolerance));
        }
        lines.push(format!("consistent: {}", rep.consistent));
        let json = json!({
            "verdict": rep.consistent,
            "residuals": residuals,
            "ranks": diagnosis_ranks(&rep.diagnosis),
            "max_pairwise_gap": rep.max_pairwise_gap,
            "report": rep,
        });
        Report { lines, json }
    }

    pub fn emit(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(&self.json).expect("report serializes"));
        } else {
            for l in &self.lines {
                println!("{l}");
            }
        }
    }
}
