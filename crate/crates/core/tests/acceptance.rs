//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use cvp01::clique::{self, clique_scale, KPartiteGraph};
use cvp01::enumerate::{split_and_list, vertex_count};
use cvp01::hyperclique;
use cvp01::io::{bench, generate_instance, GenMode, GenParams, Problem};
use cvp01::lattice::norm_pow_via_mvp;
use cvp01::maxsat::{brute_force_maxsat, reduce_cvp_to_wcnf, reduce_cvp_to_wcnf_with_d, reduce_svp_to_wcnf};
use cvp01::pipeline::{brute_force_svp, solve_cvp_via_clique, solve_svp_via_cvp};
use cvp01::solvers::{brute_min_clique, min_weight_triangle_encoded, min_weight_triangle_naive};
use cvp01::{CliqueMethod, CvpInstance, CvpMethod, Limits};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let cases = 500;
    for case in 0..cases {
        let p = if case % 2 == 0 { 2 } else { 4 };
        let k = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=6);
        let vs: Vec<Vector> = (0..k).map(|_| random_vector(&mut rng, m, 5)).collect();
        let coeffs: Vec<i128> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
        let lib_vs: Vec<_> = vs.iter().map(|v| to_int_vector(v)).collect();
        let lib_coeffs: Vec<BigInt> = coeffs.iter().map(|&a| big(a)).collect();

        // expansion of ‖Σ a_i v_i‖_p^p through mvp values
        let expected = norm_pow(&lin_comb(&coeffs, &vs), p);
        let got = norm_pow_via_mvp(&lib_coeffs, &lib_vs, p).map_err(|e| e.to_string())?;
        ensure(got == big(expected), || format!("case {case}: expansion {got} != {expected}"))?;

        // coefficients (1,…,1,−1): signed sum over tuples, the last vector playing t
        let mut ones = vec![1i128; k];
        ones[k - 1] = -1;
        let direct = norm_pow(&lin_comb(&ones, &vs), p);
        let signed = signed_tuple_sum(&vs, k - 1, p as usize);
        let via_lib = norm_pow_via_mvp(&ones.iter().map(|&a| big(a)).collect::<Vec<_>>(), &lib_vs, p)
            .map_err(|e| e.to_string())?;
        ensure(signed == direct && via_lib == big(direct), || {
            format!("case {case}: signed sum {signed}, library {via_lib}, direct {direct}")
        })?;

        // β-weighted decomposition over p-subsets: k vectors plus a target, k ≥ p
        let kk = rng.gen_range(p as usize..=6);
        let ws: Vec<Vector> = (0..kk).map(|_| random_vector(&mut rng, m, 5)).collect();
        let t = random_vector(&mut rng, m, 5);
        let total: i128 = subsets(kk, p as usize)
            .iter()
            .map(|sub| {
                let picks: Vec<&[i128]> = sub.iter().map(|&i| ws[i].as_slice()).collect();
                hyperedge_weight(&picks, &t, kk)
            })
            .sum();
        let sum_minus_t = {
            let mut s = lin_comb(&vec![1; kk], &ws);
            s.iter_mut().zip(&t).for_each(|(a, b)| *a -= b);
            s
        };
        let scale = hyper_scale(kk, p as usize) as i128;
        ensure(total == scale * norm_pow(&sum_minus_t, p), || {
            format!("case {case}: decomposition {total} != {scale}·{}", norm_pow(&sum_minus_t, p))
        })?;
        // the library hypergraph on one vector per part, all picks 1
        let inst = CvpInstance::new(ws.iter().map(|w| to_int_vector(w)).collect(), to_int_vector(&t), p, 0.into())
            .map_err(|e| e.to_string())?;
        let h = hyperclique::reduce_cvp_to_hyperclique(&inst, kk).map_err(|e| e.to_string())?;
        let lib_total = h.hyperclique_weight(&vec![1; kk]).map_err(|e| e.to_string())?;
        ensure(lib_total == big(total), || format!("case {case}: library hyperclique {lib_total} != {total}"))?;
    }
    Ok(format!("{cases} cases per identity"))
}

fn subsets(k: usize, r: usize) -> Vec<Vec<usize>> {
    (0u32..1 << k)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect())
        .collect::<Vec<_>>()
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for case in 0..200 {
        let k = [2, 3, 4][case % 3];
        let n = rng.gen_range(k..=12);
        let m = rng.gen_range(1..=8);
        let r = random_cvp(&mut rng, n, m, 2, 8);
        let (oracle, _) = cvp(&r.basis, &r.target, 2);
        let g = clique::reduce_cvp_to_clique(&r.inst, k).map_err(|e| e.to_string())?;
        let bound = k * (1 << n.div_ceil(k));
        ensure(g.vertex_count() <= bound, || format!("case {case}: {} vertices > {bound}", g.vertex_count()))?;
        let (weight, _) = brute_min_clique(&g).map_err(|e| e.to_string())?;
        let l = clique_scale(k);
        ensure(weight == &l * big(oracle), || format!("case {case}: min clique {weight} != {l}·{oracle}"))?;
        let yes_graph = &weight <= g.threshold_scaled();
        ensure(yes_graph == (big(oracle) <= *r.inst.threshold_pow()), || format!("case {case}: decision mismatch"))?;
        let report = solve_cvp_via_clique(&r.inst, k, CliqueMethod::BruteClique).map_err(|e| e.to_string())?;
        ensure(report.dist_pow == big(oracle), || format!("case {case}: pipeline {} != {oracle}", report.dist_pow))?;
    }
    Ok("200 instances".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for case in 0..50 {
        let k = [4, 5][case % 2];
        let n = rng.gen_range(k..=8);
        let m = rng.gen_range(1..=4);
        let r = random_cvp(&mut rng, n, m, 4, 3);
        let (oracle, _) = cvp(&r.basis, &r.target, 4);
        let h = hyperclique::reduce_cvp_to_hyperclique(&r.inst, k).map_err(|e| e.to_string())?;
        let (weight, _) = brute_min_clique(&h).map_err(|e| e.to_string())?;
        let scale = big(hyper_scale(k, 4) as i128);
        ensure(h.scale() == &scale, || format!("case {case}: scale {} != {scale}", h.scale()))?;
        ensure(weight == &scale * big(oracle), || format!("case {case}: min hyperclique {weight} != {scale}·{oracle}"))?;
    }
    Ok("50 instances".into())
}

fn criterion_4() -> Outcome {
    // hand-worked n = 1, p = 2: b1 = (1,2), t = (1,1); totals 4D − 1 and 4D − 2 (times the scale 3)
    let inst = CvpInstance::new(vec![to_int_vector(&[1, 2])], to_int_vector(&[1, 1]), 2, 0.into()).unwrap();
    for d in [6i128, 11, 40] {
        let f = reduce_cvp_to_wcnf_with_d(&inst, &big(d)).map_err(|e| e.to_string())?;
        let (one, zero) = (f.objective(&[true]).unwrap(), f.objective(&[false]).unwrap());
        ensure(one == big(3 * (4 * d - 1)) && zero == big(3 * (4 * d - 2)), || {
            format!("hand-worked example at D={d}: {one}, {zero}")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for case in 0..50 {
        let p = if case % 2 == 0 { 2 } else { 4 };
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=4);
        let r = random_cvp(&mut rng, n, m, p, 5);
        let f = reduce_cvp_to_wcnf(&r.inst).map_err(|e| e.to_string())?;
        let mut all = r.basis.clone();
        all.push(r.target.clone());
        let d = maxsat_d(&all, p as usize);
        let scale = maxsat_scale(p);
        ensure(f.d == big(d) && f.scale == big(scale), || format!("case {case}: D/scale {} {}", f.d, f.scale))?;
        let budget = (n as i128 + 1).pow(p) * d;
        for rank in 0..1u64 << n {
            let z = bits(rank, n);
            let dist = norm_pow(&residual(&r.basis, &r.target, &z), p);
            let got = f.objective(&z).unwrap();
            ensure(got == big(scale * (budget - dist)), || format!("case {case}: identity fails at {z:?}"))?;
        }
        let best = brute_force_maxsat(&f).map_err(|e| e.to_string())?;
        let (oracle, _) = cvp(&r.basis, &r.target, p);
        let argmax_dist = norm_pow(&residual(&r.basis, &r.target, &best.assignment), p);
        ensure(argmax_dist == oracle, || format!("case {case}: argmax distance {argmax_dist} != {oracle}"))?;
        ensure(f.is_yes(&best.satisfied_weight) == (big(oracle) <= *r.inst.threshold_pow()), || {
            format!("case {case}: decision mismatch")
        })?;
    }
    Ok("50 instances, every assignment; hand-worked example reproduced".into())
}

fn random_graph(rng: &mut ChaCha8Rng) -> KPartiteGraph {
    let parts: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=16)).collect();
    let weights = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| (0..parts[a] * parts[b]).map(|_| big(rng.gen_range(-1000..=1000))).collect())
        .collect();
    KPartiteGraph::new(parts, weights, 1.into(), 0.into(), None).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut unique = 0;
    for case in 0..100 {
        let g = random_graph(&mut rng);
        // independent enumeration
        let (pa, pb, pc) = (g.parts()[0], g.parts()[1], g.parts()[2]);
        let mut best: Option<(BigInt, [usize; 3])> = None;
        let mut count = 0;
        for i in 0..pa {
            for j in 0..pb {
                for l in 0..pc {
                    let w = g.weight(0, i, 1, j) + g.weight(0, i, 2, l) + g.weight(1, j, 2, l);
                    match &best {
                        Some((bw, _)) if &w > bw => {}
                        Some((bw, _)) if &w == bw => count += 1,
                        _ => {
                            best = Some((w, [i, j, l]));
                            count = 1;
                        }
                    }
                }
            }
        }
        let (oracle_w, oracle_picks) = best.unwrap();
        let naive = min_weight_triangle_naive(&g).map_err(|e| e.to_string())?;
        let encoded = min_weight_triangle_encoded(&g, &big(1000)).map_err(|e| e.to_string())?;
        let (brute_w, brute_picks) = brute_min_clique(&g).map_err(|e| e.to_string())?;
        ensure(naive.weight == oracle_w && encoded.weight == oracle_w && brute_w == oracle_w, || {
            format!("case {case}: weights {} {} {brute_w} vs {oracle_w}", naive.weight, encoded.weight)
        })?;
        if count == 1 {
            unique += 1;
            ensure(
                naive.picks == oracle_picks && encoded.picks == oracle_picks && brute_picks == oracle_picks,
                || format!("case {case}: witnesses differ on a unique optimum"),
            )?;
        }
    }
    Ok(format!("100 graphs, {unique} with unique optimum"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for case in 0..100 {
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(1..=5);
        let p = if case % 4 == 3 { 4 } else { 2 };
        let r = random_svp(&mut rng, n, m, p, 6);
        let (oracle, _) = svp(&r.basis, p);
        let inner = match case % 3 {
            _ if n < 4 || p != 2 => CvpMethod::Brute,
            0 => CvpMethod::Brute,
            1 => CvpMethod::Clique { k: 3, method: CliqueMethod::NaiveTriangle },
            _ => CvpMethod::Clique { k: 2, method: CliqueMethod::BruteClique },
        };
        let wrapped = solve_svp_via_cvp(&r.inst, inner).map_err(|e| e.to_string())?;
        let brute = brute_force_svp(&r.inst).map_err(|e| e.to_string())?;
        ensure(wrapped.dist_pow == brute.dist_pow && brute.dist_pow == big(oracle), || {
            format!("case {case}: wrapper {} brute {} oracle {oracle}", wrapped.dist_pow, brute.dist_pow)
        })?;
        if svp_minimizers(&r.basis, p) == 1 {
            ensure(wrapped.z == brute.z, || format!("case {case}: wrapper and brute differ on a unique optimum"))?;
        }
    }
    for case in 0..30 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(1..=4);
        let p = if case % 2 == 0 { 2 } else { 4 };
        let r = random_svp(&mut rng, n, m, p, 4);
        let (oracle, _) = svp(&r.basis, p);
        let f = reduce_svp_to_wcnf(&r.inst).map_err(|e| e.to_string())?;
        let best = brute_force_maxsat(&f).map_err(|e| e.to_string())?;
        let z = &best.assignment[..n];
        ensure(z.iter().any(|&b| b), || format!("wcnf case {case}: argmax is the zero vector"))?;
        let zero = vec![0; m];
        let len = norm_pow(&residual(&r.basis, &zero, z), p);
        ensure(len == oracle, || format!("wcnf case {case}: argmax length {len} != {oracle}"))?;
        ensure(f.is_yes(&best.satisfied_weight) == (big(oracle) <= *r.inst.threshold_pow()), || {
            format!("wcnf case {case}: decision mismatch")
        })?;
    }
    Ok("100 wrapper instances, 30 WCNF instances".into())
}

fn criterion_7() -> Outcome {
    let limits = Limits::default();
    let mut shape = Vec::new();
    for n in [18usize, 21, 24] {
        let file = generate_instance(&GenParams {
            n,
            m: 8,
            p: 2,
            coord_bound: 16,
            mode: GenMode::PlantedZero,
            seed: n as u64,
        })
        .map_err(|e| e.to_string())?;
        let Problem::Cvp(inst) = &file.problem else { unreachable!() };
        let expected = 3 * (1usize << (n / 3));
        let lists = split_and_list(inst.basis(), 3).map_err(|e| e.to_string())?;
        let g = clique::build_from_lists(inst, &lists).map_err(|e| e.to_string())?;
        ensure(g.vertex_count() == expected && vertex_count(n, 3).unwrap() == expected as u64, || {
            format!("n={n}: {} vertices, expected {expected}", g.vertex_count())
        })?;
        let report = solve_cvp_via_clique(inst, 3, CliqueMethod::NaiveTriangle).map_err(|e| e.to_string())?;
        ensure(report.dist_pow == BigInt::from(0), || format!("n={n}: planted instance gave {}", report.dist_pow))?;
        shape.push(format!("n={n}:{expected}"));
    }
    let rows = bench::run_suite("scaling", 0, &limits).map_err(|e| e.to_string())?;
    let mut csv = Vec::new();
    bench::write_bench_csv(&rows, &mut csv).map_err(|e| e.to_string())?;
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("scaling.csv");
    std::fs::write(&path, &csv).map_err(|e| e.to_string())?;
    ensure(rows.len() == 3 && rows.iter().all(|r| r.distance == "0"), || "bench rows incomplete".into())?;
    let times: Vec<String> = rows.iter().map(|r| format!("n={} {:.3}s", r.n, r.wall_time_s)).collect();
    Ok(format!("vertices {}; wall {} (csv: {})", shape.join(" "), times.join(", "), path.display()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("expansion identities", criterion_1, Duration::from_secs(10)),
        ("clique reduction fidelity", criterion_2, Duration::from_secs(60)),
        ("hyperclique fidelity", criterion_3, Duration::from_secs(120)),
        ("max-sat identity", criterion_4, Duration::from_secs(120)),
        ("triangle solver equivalence", criterion_5, Duration::from_secs(60)),
        ("svp wrappers", criterion_6, Duration::from_secs(60)),
        ("scaling shape", criterion_7, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if elapsed > *budget => Err(format!("took {elapsed:.1?}, budget {budget:?}")),
            Ok(detail) => Ok(detail.clone()),
            Err(e) => Err(e.clone()),
        };
        match verdict {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}) {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
