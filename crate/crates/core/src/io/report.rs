//! Solve reports as JSON, and their verification.

use crate::error::{Error, Result};
use crate::io::instance::Problem;
use crate::lattice::SolveReport;

pub fn report_to_json(report: &SolveReport) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize")
}

pub fn report_from_json(text: &str) -> Result<SolveReport> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

/// Recomputes the objective of `report.z` and compares it with the claimed value.
pub fn verify_report(problem: &Problem, report: &SolveReport) -> Result<()> {
    if report.p != problem.p() {
        return Err(Error::invalid(format!("report is for p = {}, instance has p = {}", report.p, problem.p())));
    }
    if matches!(problem, Problem::Svp(_)) && !report.z.iter().any(|&b| b) {
        return Err(Error::invalid("SVP report has the zero coefficient vector"));
    }
    let actual = problem.objective(&report.z)?;
    if actual != report.dist_pow {
        return Err(Error::invalid(format!(
            "report claims dist_pow {}, but z gives {actual}",
            report.dist_pow
        )));
    }
    Ok(())
}

/// Two optimal reports must agree on the optimum (their minimizers may differ).
pub fn cross_check(a: &SolveReport, b: &SolveReport) -> Result<()> {
    if a.p != b.p || a.dist_pow != b.dist_pow {
        return Err(Error::invalid(format!(
            "reports disagree: {} gives {} (p = {}), {} gives {} (p = {})",
            a.method, a.dist_pow, a.p, b.method, b.dist_pow, b.p
        )));
    }
    Ok(())
}
