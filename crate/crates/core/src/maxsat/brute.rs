use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::WcnfFormula;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxSatResult {
    pub assignment: Vec<bool>,
    /// Satisfied clause weight plus the formula offset.
    pub satisfied_weight: BigInt,
}

pub fn brute_force_maxsat(f: &WcnfFormula) -> Result<MaxSatResult> {
    brute_force_maxsat_with_limit(f, Limits::default().maxsat_max_vars)
}

/// Exhaustive maximum over all `2^n` assignments; ties go to the
/// lexicographically smallest assignment (`x_1` most significant, false < true).
pub fn brute_force_maxsat_with_limit(f: &WcnfFormula, max_vars: usize) -> Result<MaxSatResult> {
    let n = f.num_vars;
    if n > max_vars || n >= 63 {
        return Err(Error::Resource(format!(
            "exhaustive Max-SAT over {n} variables exceeds the limit of {max_vars}"
        )));
    }
    // (positive mask, negative mask), bit i = x_{i+1}
    let masks: Vec<(u64, u64)> = f
        .clauses
        .iter()
        .map(|c| {
            c.lits.iter().fold((0, 0), |(pos, neg), &l| {
                let bit = 1u64 << (l.unsigned_abs() - 1);
                if l > 0 {
                    (pos | bit, neg)
                } else {
                    (pos, neg | bit)
                }
            })
        })
        .collect();

    let total = f.total_weight();
    let (rank, satisfied) = if total.bits() < 126 {
        let weights: Vec<i128> = f.clauses.iter().map(|c| c.weight.to_i128().unwrap()).collect();
        let (r, w) = search(&masks, &weights, n);
        (r, BigInt::from(w))
    } else {
        let weights: Vec<BigInt> = f.clauses.iter().map(|c| c.weight.clone()).collect();
        search(&masks, &weights, n)
    };
    let assignment = (0..n).map(|i| rank >> (n - 1 - i) & 1 == 1).collect();
    Ok(MaxSatResult {
        assignment,
        satisfied_weight: satisfied + &f.offset,
    })
}

/// Returns the lexicographic rank of the best assignment and its weight.
fn search<T>(masks: &[(u64, u64)], weights: &[T], n: usize) -> (u64, T)
where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a T> + Send + Sync,
{
    let space = 1u64 << n;
    let chunk = (space / 256).max(1);
    (0..space.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut best: Option<(u64, T)> = None;
            for rank in c * chunk..((c + 1) * chunk).min(space) {
                // rank has x_1 in its top bit; the masks have x_1 in bit 0
                let a = if n == 0 { 0 } else { rank.reverse_bits() >> (64 - n) };
                let mut w = T::zero();
                for ((pos, neg), cw) in masks.iter().zip(weights) {
                    if a & pos != 0 || !a & neg != 0 {
                        w += cw;
                    }
                }
                if best.as_ref().is_none_or(|(_, bw)| &w > bw) {
                    best = Some((rank, w));
                }
            }
            best.expect("nonempty chunk")
        })
        .reduce_with(|x, y| if y.1 > x.1 || (y.1 == x.1 && y.0 < x.0) { y } else { x })
        .expect("nonempty space")
}
