//! End-to-end solvers: the exhaustive oracles, the clique pipeline, the
//! Max-SAT route and the SVP-to-CVP wrapper.

use std::fmt;
use std::ops::{AddAssign, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::clique;
use crate::enumerate::split_and_list_with_budget;
use crate::error::{Error, Result};
use crate::hyperclique;
use crate::lattice::{CvpInstance, IntVector, SolveReport, SvpInstance, Witness};
use crate::limits::Limits;
use crate::maxsat::{self, brute_force_maxsat_with_limit};
use crate::solvers::{
    brute_min_clique, min_weight_triangle_encoded_with_limits, min_weight_triangle_naive,
};

/// How the clique pipeline searches the reduced graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliqueMethod {
    NaiveTriangle,
    EncodedTriangle,
    BruteClique,
}

impl CliqueMethod {
    pub fn label(self) -> &'static str {
        match self {
            CliqueMethod::NaiveTriangle => "naive-triangle",
            CliqueMethod::EncodedTriangle => "encoded-triangle",
            CliqueMethod::BruteClique => "brute-clique",
        }
    }
}

/// A complete (0,1)-CVP solving strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CvpMethod {
    Brute,
    Clique { k: usize, method: CliqueMethod },
    MaxSatBrute,
}

impl fmt::Display for CvpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CvpMethod::Brute => write!(f, "brute"),
            CvpMethod::Clique { k, method } => write!(f, "{}/k={k}", method.label()),
            CvpMethod::MaxSatBrute => write!(f, "maxsat-brute"),
        }
    }
}

impl FromStr for CliqueMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive-triangle" | "triangle" => Ok(CliqueMethod::NaiveTriangle),
            "encoded-triangle" | "triangle-encoded" => Ok(CliqueMethod::EncodedTriangle),
            "brute-clique" | "clique" | "hyperclique" => Ok(CliqueMethod::BruteClique),
            other => Err(Error::invalid(format!("unknown clique method {other:?}"))),
        }
    }
}

/// Signed integer arithmetic needed by the exhaustive walk.
trait WalkInt:
    Clone + Ord + Zero + Send + Sync + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
    fn pow_p(&self, p: u32) -> Self;
}

impl WalkInt for i128 {
    fn pow_p(&self, p: u32) -> Self {
        self.pow(p)
    }
}

impl WalkInt for BigInt {
    fn pow_p(&self, p: u32) -> Self {
        num_traits::pow(self.clone(), p as usize)
    }
}

/// Lexicographic rank of `z` (`z_1` most significant).
fn rank_to_z(rank: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| rank >> (n - 1 - i) & 1 == 1).collect()
}

/// Minimum of `‖Bz − t‖_p^p` over `z ∈ {0,1}^n` (optionally excluding zero),
/// lexicographically smallest minimizer. The first `prefix` coordinates are
/// fanned out over workers; the rest are walked in Gray-code order so each
/// step adds or subtracts one column.
fn exhaustive_walk<T: WalkInt>(
    basis: &[Vec<T>],
    target: &[T],
    p: u32,
    exclude_zero: bool,
) -> Option<(T, u64)> {
    let n = basis.len();
    let prefix = n.min(6);
    let rest = n - prefix;
    let norm = |v: &[T]| -> T {
        v.iter().fold(T::zero(), |mut acc, x| {
            acc += &x.pow_p(p);
            acc
        })
    };
    (0..1u64 << prefix)
        .into_par_iter()
        .filter_map(|head| {
            let mut v: Vec<T> = target.iter().map(|x| {
                let mut neg = T::zero();
                neg -= x;
                neg
            }).collect();
            let mut rank = 0u64;
            for (i, col) in basis.iter().enumerate().take(prefix) {
                if head >> (prefix - 1 - i) & 1 == 1 {
                    for (a, b) in v.iter_mut().zip(col) {
                        *a += b;
                    }
                    rank |= 1 << (n - 1 - i);
                }
            }
            let mut best: Option<(T, u64)> = None;
            let consider = |d: T, rank: u64, best: &mut Option<(T, u64)>| {
                if exclude_zero && rank == 0 {
                    return;
                }
                let better = match best {
                    None => true,
                    Some((bd, br)) => d < *bd || (d == *bd && rank < *br),
                };
                if better {
                    *best = Some((d, rank));
                }
            };
            consider(norm(&v), rank, &mut best);
            let mut included = vec![false; rest];
            for step in 1..1u64 << rest {
                let j = step.trailing_zeros() as usize;
                let idx = prefix + j;
                let col = &basis[idx];
                if included[j] {
                    for (a, b) in v.iter_mut().zip(col) {
                        *a -= b;
                    }
                } else {
                    for (a, b) in v.iter_mut().zip(col) {
                        *a += b;
                    }
                }
                included[j] = !included[j];
                rank ^= 1 << (n - 1 - idx);
                consider(norm(&v), rank, &mut best);
            }
            best
        })
        .reduce_with(|a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
}

/// Runs the walk in `i128` when the worst-case `‖Bz − t‖_p^p` provably fits.
fn exhaustive(basis: &[IntVector], target: &IntVector, p: u32, exclude_zero: bool) -> Option<(BigInt, Vec<bool>)> {
    let n = basis.len();
    let dim = target.dim();
    let radius: Vec<BigInt> = (0..dim)
        .map(|i| {
            basis.iter().map(|b| b.entries()[i].magnitude().clone()).sum::<num_bigint::BigUint>()
                + target.entries()[i].magnitude()
        })
        .map(BigInt::from)
        .collect();
    let worst: BigInt = radius.iter().map(|r| num_traits::pow(r.clone(), p as usize)).sum();
    let fits = worst.bits() < 126;
    let (dist, rank) = if fits {
        let cols: Vec<Vec<i128>> = basis
            .iter()
            .map(|b| b.entries().iter().map(|x| x.to_i128().unwrap()).collect())
            .collect();
        let t: Vec<i128> = target.entries().iter().map(|x| x.to_i128().unwrap()).collect();
        let (d, r) = exhaustive_walk(&cols, &t, p, exclude_zero)?;
        (BigInt::from(d), r)
    } else {
        let cols: Vec<Vec<BigInt>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        exhaustive_walk(&cols, target.entries(), p, exclude_zero)?
    };
    Some((dist, rank_to_z(rank, n)))
}

fn check_rank(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.brute_force_max_rank || n >= 63 {
        return Err(Error::Resource(format!(
            "exhaustive search over rank {n} exceeds the limit of {}",
            limits.brute_force_max_rank
        )));
    }
    Ok(())
}

pub fn brute_force_cvp(inst: &CvpInstance) -> Result<SolveReport> {
    brute_force_cvp_with_limits(inst, &Limits::default())
}

pub fn brute_force_cvp_with_limits(inst: &CvpInstance, limits: &Limits) -> Result<SolveReport> {
    check_rank(inst.rank(), limits)?;
    let (dist, z) = exhaustive(inst.basis(), inst.target(), inst.p(), false).expect("2^n candidates");
    Ok(SolveReport::new(z, dist, inst.p(), "brute"))
}

pub fn brute_force_svp(inst: &SvpInstance) -> Result<SolveReport> {
    brute_force_svp_with_limits(inst, &Limits::default())
}

pub fn brute_force_svp_with_limits(inst: &SvpInstance, limits: &Limits) -> Result<SolveReport> {
    check_rank(inst.rank(), limits)?;
    let zero = IntVector::zeros(inst.dim());
    let (dist, z) = exhaustive(inst.basis(), &zero, inst.p(), true).expect("n >= 1");
    Ok(SolveReport::new(z, dist, inst.p(), "brute"))
}

fn unscale(weight: &BigInt, scale: &BigInt) -> BigInt {
    let (q, r) = weight.div_rem(scale);
    assert!(r.is_zero(), "clique weight {weight} is not a multiple of the scale {scale}");
    q
}

pub fn solve_cvp_via_clique(inst: &CvpInstance, k: usize, method: CliqueMethod) -> Result<SolveReport> {
    solve_cvp_via_clique_with_limits(inst, k, method, &Limits::default())
}

/// Reduces to (hyper)clique, searches it, and decodes the optimal clique back
/// to a coefficient vector. `p = 2` goes through the graph reduction; larger
/// even `p` through the p-uniform hypergraph, which only the brute-force
/// search supports.
pub fn solve_cvp_via_clique_with_limits(
    inst: &CvpInstance,
    k: usize,
    method: CliqueMethod,
    limits: &Limits,
) -> Result<SolveReport> {
    let triangle = matches!(method, CliqueMethod::NaiveTriangle | CliqueMethod::EncodedTriangle);
    if triangle && k != 3 {
        return Err(Error::invalid(format!("{} needs k = 3, got k = {k}", method.label())));
    }
    if triangle && inst.p() != 2 {
        return Err(Error::invalid(format!(
            "{} only applies to p = 2; use brute-clique for p = {}",
            method.label(),
            inst.p()
        )));
    }
    if k < 2 {
        return Err(Error::invalid("the clique pipeline needs k >= 2"));
    }
    let lists = split_and_list_with_budget(inst.basis(), k, limits.element_budget)?;
    let (weight, picks, scale, label) = if inst.p() == 2 {
        let g = clique::build_from_lists(inst, &lists)?;
        let (weight, picks) = match method {
            CliqueMethod::NaiveTriangle => {
                let r = min_weight_triangle_naive(&g)?;
                (r.weight, r.picks.to_vec())
            }
            CliqueMethod::EncodedTriangle => {
                let r = min_weight_triangle_encoded_with_limits(&g, &g.max_abs_weight(), limits)?;
                (r.weight, r.picks.to_vec())
            }
            CliqueMethod::BruteClique => brute_min_clique(&g)?,
        };
        (weight, picks, g.scale().clone(), format!("clique/{}", method.label()))
    } else {
        if k < inst.p() as usize {
            return Err(Error::invalid(format!(
                "the hyperclique pipeline needs k >= p (k={k}, p={})",
                inst.p()
            )));
        }
        let h = hyperclique::build_from_lists(inst, &lists)?;
        let (weight, picks) = brute_min_clique(&h)?;
        (weight, picks, h.scale().clone(), "hyperclique/brute-clique".to_string())
    };
    let dist = unscale(&weight, &scale);
    let z = lists.decode_solution(&picks)?;
    debug_assert_eq!(inst.distance_pow(&z)?, dist);
    Ok(SolveReport::new(z, dist, inst.p(), format!("{label}/k={k}"))
        .with_scale(scale)
        .with_witness(Witness::Clique { picks }))
}

pub fn solve_cvp_via_maxsat(inst: &CvpInstance, limits: &Limits) -> Result<SolveReport> {
    let f = maxsat::reduce_cvp_to_wcnf(inst)?;
    let best = brute_force_maxsat_with_limit(&f, limits.maxsat_max_vars)?;
    let z = best.assignment[..f.primary_vars].to_vec();
    let dist = inst.distance_pow(&z)?;
    debug_assert_eq!(
        &best.satisfied_weight,
        &(&f.scale * (num_traits::pow(BigInt::from(inst.rank() + 1), inst.p() as usize) * &f.d - &dist))
    );
    Ok(SolveReport::new(z, dist, inst.p(), "maxsat-brute")
        .with_scale(f.scale)
        .with_witness(Witness::Assignment { bits: best.assignment }))
}

pub fn solve_svp_via_maxsat(inst: &SvpInstance, limits: &Limits) -> Result<SolveReport> {
    let f = maxsat::reduce_svp_to_wcnf(inst)?;
    let best = brute_force_maxsat_with_limit(&f, limits.maxsat_max_vars)?;
    let z = best.assignment[..f.primary_vars].to_vec();
    let dist = inst.length_pow(&z)?;
    Ok(SolveReport::new(z, dist, inst.p(), "maxsat-brute")
        .with_scale(f.scale)
        .with_witness(Witness::Assignment { bits: best.assignment }))
}

pub fn solve_cvp(inst: &CvpInstance, method: CvpMethod, limits: &Limits) -> Result<SolveReport> {
    match method {
        CvpMethod::Brute => brute_force_cvp_with_limits(inst, limits),
        CvpMethod::Clique { k, method } => solve_cvp_via_clique_with_limits(inst, k, method, limits),
        CvpMethod::MaxSatBrute => solve_cvp_via_maxsat(inst, limits),
    }
}

pub fn solve_svp_via_cvp(inst: &SvpInstance, inner: CvpMethod) -> Result<SolveReport> {
    solve_svp_via_cvp_with_limits(inst, inner, &Limits::default())
}

/// Solves (0,1)-SVP with `n` (0,1)-CVP calls: call `i` fixes `z_i = 1`, drops
/// column `i` and targets `−b_i`, so `‖B'z' + b_i‖` is the length of the lifted vector.
pub fn solve_svp_via_cvp_with_limits(
    inst: &SvpInstance,
    inner: CvpMethod,
    limits: &Limits,
) -> Result<SolveReport> {
    let n = inst.rank();
    let basis = inst.basis();
    let label = format!("svp-via-cvp/{inner}");
    if n == 1 {
        let z = vec![true];
        let dist = inst.length_pow(&z)?;
        return Ok(SolveReport::new(z, dist.clone(), inst.p(), label)
            .with_witness(Witness::SvpCalls { per_call: vec![dist] }));
    }
    let calls: Vec<(BigInt, Vec<bool>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let reduced: Vec<IntVector> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| b.clone())
                .collect();
            let sub = CvpInstance::new(reduced, basis[i].negated(), inst.p(), inst.threshold_pow().clone())?;
            let report = solve_cvp(&sub, inner, limits)?;
            let mut z = report.z;
            z.insert(i, true);
            Ok((report.dist_pow, z))
        })
        .collect::<Result<_>>()?;
    let (dist, z) = calls
        .iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .cloned()
        .expect("n >= 2 calls");
    debug_assert_eq!(inst.length_pow(&z)?, dist);
    Ok(SolveReport::new(z, dist, inst.p(), label).with_witness(Witness::SvpCalls {
        per_call: calls.into_iter().map(|(d, _)| d).collect(),
    }))
}

/// YES/NO of a report against an instance threshold.
pub fn decide(report: &SolveReport, threshold_pow: &BigInt) -> bool {
    &report.dist_pow <= threshold_pow
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    fn cvp(basis: &[&[i64]], t: &[i64], p: u32) -> CvpInstance {
        CvpInstance::new(basis.iter().map(|b| v(b)).collect(), v(t), p, 0.into()).unwrap()
    }

    #[test]
    fn brute_cvp_examples() {
        let r = brute_force_cvp(&cvp(&[&[3, 1], &[-2, 5]], &[0, 0], 2)).unwrap();
        assert_eq!((r.z, r.dist_pow), (vec![false, false], BigInt::zero()));

        let r = brute_force_cvp(&cvp(&[&[1, 0], &[0, 1]], &[1, 1], 2)).unwrap();
        assert_eq!((r.z, r.dist_pow), (vec![true, true], BigInt::zero()));

        // candidates 00 → 2, 10 → 2, 01 → 5, 11 → 5
        let r = brute_force_cvp(&cvp(&[&[2, 0], &[0, 3]], &[1, 1], 2)).unwrap();
        assert_eq!((r.z, r.dist_pow), (vec![false, false], BigInt::from(2)));
    }

    #[test]
    fn brute_svp_examples() {
        let zero_col = SvpInstance::new(vec![v(&[4, 1]), v(&[0, 0])], 2, 0.into()).unwrap();
        let r = brute_force_svp(&zero_col).unwrap();
        assert_eq!((r.z, r.dist_pow), (vec![false, true], BigInt::zero()));

        let inst = SvpInstance::new(vec![v(&[2, 0]), v(&[0, 3]), v(&[1, 1])], 2, 0.into()).unwrap();
        let r = brute_force_svp(&inst).unwrap();
        assert_eq!((r.z, r.dist_pow), (vec![false, false, true], BigInt::from(2)));

        let id = SvpInstance::new(vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])], 2, 0.into()).unwrap();
        let r = brute_force_svp(&id).unwrap();
        assert_eq!(r.dist_pow, BigInt::from(1));
        assert_eq!(r.z, vec![false, false, true]);
    }

    #[test]
    fn brute_rank_limit() {
        let inst = cvp(&[&[1], &[2], &[3]], &[1], 2);
        let limits = Limits { brute_force_max_rank: 2, ..Limits::default() };
        assert!(brute_force_cvp_with_limits(&inst, &limits).unwrap_err().is_resource());
    }

    #[test]
    fn big_integer_walk_matches_direct() {
        let huge = 1i64 << 40;
        let inst = cvp(&[&[huge, 1], &[-huge, 3], &[huge / 2, -7]], &[huge / 2, 2], 4);
        let r = brute_force_cvp(&inst).unwrap();
        let mut best = (None::<BigInt>, vec![]);
        for rank in 0..8u64 {
            let z = rank_to_z(rank, 3);
            let d = inst.distance_pow(&z).unwrap();
            if best.0.as_ref().is_none_or(|b| &d < b) {
                best = (Some(d), z);
            }
        }
        assert_eq!((Some(r.dist_pow), r.z), best);
    }

    #[test]
    fn method_mismatch_errors() {
        let inst = cvp(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1]], &[1, 1], 2);
        assert!(solve_cvp_via_clique(&inst, 2, CliqueMethod::NaiveTriangle).is_err());
        assert!(solve_cvp_via_clique(&inst, 4, CliqueMethod::EncodedTriangle).is_err());
        let inst4 = cvp(&[&[1, 0], &[0, 1], &[1, 1], &[2, 1]], &[1, 1], 4);
        assert!(solve_cvp_via_clique(&inst4, 3, CliqueMethod::NaiveTriangle).is_err());
        assert!(solve_cvp_via_clique(&inst4, 3, CliqueMethod::BruteClique).is_err());
    }

    #[test]
    fn svp_wrapper_example() {
        let inst = SvpInstance::new(vec![v(&[2, 0]), v(&[0, 3]), v(&[1, 1])], 2, 2.into()).unwrap();
        let r = solve_svp_via_cvp(&inst, CvpMethod::Brute).unwrap();
        assert_eq!((r.z.clone(), r.dist_pow.clone()), (vec![false, false, true], BigInt::from(2)));
        // call 1 fixes b1: min(‖b1‖², ‖b1+b3‖², …) = 4; call 2 fixes b2: 9 … ; call 3: 2
        let Some(Witness::SvpCalls { per_call }) = r.witness else { panic!() };
        assert_eq!(per_call, vec![BigInt::from(4), BigInt::from(9), BigInt::from(2)]);
        assert!(decide(&SolveReport::new(vec![], BigInt::from(2), 2, "x"), inst.threshold_pow()));
    }

    #[test]
    fn svp_single_column() {
        let inst = SvpInstance::new(vec![v(&[3, -1])], 2, 0.into()).unwrap();
        let r = solve_svp_via_cvp(&inst, CvpMethod::Brute).unwrap();
        assert_eq!((r.z, r.dist_pow), (vec![true], BigInt::from(10)));
    }
}
