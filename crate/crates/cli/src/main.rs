use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use cvp01::io::{
    bench, cross_check, generate_instance, generate_svp_instance, parse_instance, report_from_json,
    report_to_json, verify_report, write_graph, write_hypergraph, write_instance, GenMode, GenParams, Problem,
};
use cvp01::maxsat::{brute_force_maxsat_with_limit, parse_wcnf, reduce_cvp_to_wcnf, reduce_svp_to_wcnf, write_wcnf};
use cvp01::pipeline::{
    brute_force_cvp_with_limits, brute_force_svp_with_limits, solve_cvp, solve_svp_via_cvp_with_limits,
    solve_svp_via_maxsat,
};
use cvp01::{clique, hyperclique, CliqueMethod, CvpMethod, Error, Limits, SolveReport};

#[derive(Parser)]
#[command(name = "cvp01", version, about = "Exact (0,1)-CVP/SVP solving and reductions")]
struct Cli {
    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Coordinates are drawn from [-B, B].
        #[arg(long, default_value_t = 16)]
        coord_bound: u64,
        /// uniform, planted-zero, planted-near or planted-near:<noise>.
        #[arg(long, default_value = "uniform")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit an SVP instance instead of CVP.
        #[arg(long)]
        svp: bool,
        /// Override the threshold `d^p`.
        #[arg(long)]
        threshold: Option<BigInt>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve an instance and print the report as JSON.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Number of split-and-list blocks.
        #[arg(long)]
        k: Option<usize>,
        /// Exit with status 1 when the instance is a NO instance.
        #[arg(long)]
        decide: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a reduction artifact.
    Reduce {
        instance: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute a report's distance from its z, optionally cross-checking a second report.
    Verify {
        instance: PathBuf,
        report: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Solve a WCNF file exhaustively and compare against its threshold.
    Maxsat {
        wcnf: PathBuf,
    },
    /// Run a benchmark suite and emit CSV.
    Bench {
        #[arg(long, default_value = "smoke")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Clique,
    Triangle,
    TriangleEncoded,
    Hyperclique,
    MaxsatBrute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Clique,
    Hyperclique,
    Wcnf,
}

enum Failure {
    No,
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> CliResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn load_problem(path: &Path) -> Result<Problem, Failure> {
    Ok(parse_instance(&read(path)?)?.problem)
}

fn cvp_method(method: Method, k: Option<usize>, p: u32) -> Result<CvpMethod, Failure> {
    let clique = |default_k: usize, method| CvpMethod::Clique { k: k.unwrap_or(default_k), method };
    Ok(match method {
        Method::Brute => CvpMethod::Brute,
        Method::MaxsatBrute => CvpMethod::MaxSatBrute,
        Method::Triangle => clique(3, CliqueMethod::NaiveTriangle),
        Method::TriangleEncoded => clique(3, CliqueMethod::EncodedTriangle),
        Method::Clique => {
            if p != 2 {
                return Err(Failure::Usage(format!("--method clique needs p = 2; use hyperclique for p = {p}")));
            }
            clique(3, CliqueMethod::BruteClique)
        }
        Method::Hyperclique => clique(p as usize, CliqueMethod::BruteClique),
    })
}

fn solve(problem: &Problem, method: Method, k: Option<usize>, limits: &Limits) -> Result<SolveReport, Failure> {
    let inner = cvp_method(method, k, problem.p())?;
    Ok(match problem {
        Problem::Cvp(inst) => match inner {
            CvpMethod::Brute => brute_force_cvp_with_limits(inst, limits)?,
            other => solve_cvp(inst, other, limits)?,
        },
        Problem::Svp(inst) => match inner {
            CvpMethod::Brute => brute_force_svp_with_limits(inst, limits)?,
            CvpMethod::MaxSatBrute => solve_svp_via_maxsat(inst, limits)?,
            other => solve_svp_via_cvp_with_limits(inst, other, limits)?,
        },
    })
}

fn run(cli: Cli) -> CliResult {
    let limits = Limits::from_env();
    match cli.command {
        Command::Gen { n, m, p, coord_bound, mode, seed, svp, threshold, output } => {
            let mode: GenMode = mode.parse()?;
            let params = GenParams { n, m, p, coord_bound, mode, seed };
            let file = if svp {
                generate_svp_instance(&params, threshold.unwrap_or_default())?
            } else {
                let mut file = generate_instance(&params)?;
                if let (Some(t), Problem::Cvp(inst)) = (threshold, &file.problem) {
                    file.problem = Problem::Cvp(inst.clone().with_threshold(t)?);
                }
                file
            };
            emit(output.as_deref(), &write_instance(&file))
        }
        Command::Solve { instance, method, k, decide, output } => {
            let problem = load_problem(&instance)?;
            let report = solve(&problem, method, k, &limits)?;
            let yes = &report.dist_pow <= problem.threshold_pow();
            emit(output.as_deref(), &(report_to_json(&report) + "\n"))?;
            if decide {
                eprintln!("{}", if yes { "YES" } else { "NO" });
                if !yes {
                    return Err(Failure::No);
                }
            }
            Ok(())
        }
        Command::Reduce { instance, to, k, output } => {
            let problem = load_problem(&instance)?;
            let text = match (to, &problem) {
                (Target::Wcnf, Problem::Cvp(inst)) => write_wcnf(&reduce_cvp_to_wcnf(inst)?),
                (Target::Wcnf, Problem::Svp(inst)) => write_wcnf(&reduce_svp_to_wcnf(inst)?),
                (Target::Clique, Problem::Cvp(inst)) => {
                    write_graph(&clique::reduce_cvp_to_clique_with_limits(inst, k.unwrap_or(3), &limits)?)
                }
                (Target::Hyperclique, Problem::Cvp(inst)) => write_hypergraph(
                    &hyperclique::reduce_cvp_to_hyperclique_with_limits(inst, k.unwrap_or(inst.p() as usize), &limits)?,
                ),
                (_, Problem::Svp(_)) => {
                    return Err(Failure::Usage(
                        "SVP instances reduce to wcnf only; clique solving goes through `solve`".into(),
                    ))
                }
            };
            emit(output.as_deref(), &text)
        }
        Command::Verify { instance, report, against } => {
            let problem = load_problem(&instance)?;
            let first = report_from_json(&read(&report)?)?;
            let mut check = verify_report(&problem, &first);
            if let (Ok(()), Some(path)) = (&check, against) {
                let second = report_from_json(&read(&path)?)?;
                check = verify_report(&problem, &second).and_then(|_| cross_check(&first, &second));
            }
            match check {
                Ok(()) => {
                    println!("OK dist_pow {}", first.dist_pow);
                    Ok(())
                }
                Err(e) => {
                    println!("FAILED {e}");
                    Err(Failure::No)
                }
            }
        }
        Command::Maxsat { wcnf } => {
            let f = parse_wcnf(&read(&wcnf)?)?;
            let best = brute_force_maxsat_with_limit(&f, limits.maxsat_max_vars)?;
            let bits: String = best.assignment.iter().map(|&b| if b { '1' } else { '0' }).collect();
            let yes = f.is_yes(&best.satisfied_weight);
            println!("assignment {bits}");
            println!("objective {}", best.satisfied_weight);
            println!("threshold {}", f.threshold);
            println!("{}", if yes { "YES" } else { "NO" });
            if yes {
                Ok(())
            } else {
                Err(Failure::No)
            }
        }
        Command::Bench { suite, seed, output } => {
            let rows = bench::run_suite(&suite, seed, &limits)?;
            let mut buf = Vec::new();
            bench::write_bench_csv(&rows, &mut buf)?;
            emit(output.as_deref(), &String::from_utf8(buf).expect("csv is utf-8"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::No) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(3)
        }
    }
}
