//! Named benchmark suites with CSV output.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use super::generate::{generate_instance, GenParams};
use super::instance::{GenMode, Problem};
use crate::enumerate::vertex_count;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::pipeline::{solve_cvp, CliqueMethod, CvpMethod};

pub const SUITES: &[&str] = &["smoke", "scaling"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub k: usize,
    pub method: String,
    pub wall_time_s: f64,
    pub distance: String,
    pub vertices: u64,
    pub seed: u64,
}

struct Case {
    n: usize,
    k: usize,
    method: CvpMethod,
}

fn suite_cases(name: &str) -> Result<(Vec<Case>, usize, u64)> {
    let triangle = |n| Case { n, k: 3, method: CvpMethod::Clique { k: 3, method: CliqueMethod::NaiveTriangle } };
    match name {
        "scaling" => Ok(([18, 21, 24].into_iter().map(triangle).collect(), 8, 16)),
        "smoke" => {
            let mut cases = Vec::new();
            for n in [6, 9, 12] {
                cases.push(Case { n, k: n, method: CvpMethod::Brute });
                cases.push(triangle(n));
                cases.push(Case { n, k: 3, method: CvpMethod::Clique { k: 3, method: CliqueMethod::EncodedTriangle } });
            }
            Ok((cases, 6, 8))
        }
        other => Err(Error::invalid(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    }
}

/// Runs every case of a suite on a planted instance seeded by `seed + n`.
pub fn run_suite(name: &str, seed: u64, limits: &Limits) -> Result<Vec<BenchRow>> {
    let (cases, m, coord_bound) = suite_cases(name)?;
    let mut rows = Vec::with_capacity(cases.len());
    for case in cases {
        let case_seed = seed.wrapping_add(case.n as u64);
        let file = generate_instance(&GenParams {
            n: case.n,
            m,
            p: 2,
            coord_bound,
            mode: GenMode::PlantedZero,
            seed: case_seed,
        })?;
        let Problem::Cvp(inst) = &file.problem else { unreachable!("generator emits CVP") };
        let vertices = match case.method {
            CvpMethod::Clique { k, .. } => vertex_count(case.n, k)?,
            _ => 0,
        };
        let start = Instant::now();
        let report = solve_cvp(inst, case.method, limits)?;
        let wall_time_s = start.elapsed().as_secs_f64();
        rows.push(BenchRow {
            n: case.n,
            k: case.k,
            method: case.method.to_string(),
            wall_time_s,
            distance: report.dist_pow.to_string(),
            vertices,
            seed: case_seed,
        });
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}
