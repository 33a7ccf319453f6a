use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Lit, WcnfFormula, WeightedClause};
use crate::error::{Error, Result};
use crate::lattice::{check_even_p, mvp, CvpInstance, IntVector, SvpInstance};

/// `lcm{2^k − 1 : k = 1..p}`, which clears every clause-weight denominator.
pub fn maxsat_scale(p: u32) -> BigInt {
    (1..=p).fold(BigInt::one(), |acc, k| acc.lcm(&((BigInt::one() << k) - 1u32)))
}

/// All ordered index tuples in `[items]^p` sharing one multiset.
struct TupleClass {
    /// Distinct indices, ascending.
    distinct: Vec<usize>,
    /// Occurrences of the sentinel index.
    sigma: usize,
    mvp: BigInt,
    /// Number of ordered tuples in the class.
    multiplicity: BigInt,
}

fn tuple_classes(vectors: &[IntVector], sentinel: Option<usize>, p: usize) -> Result<Vec<TupleClass>> {
    let items = vectors.len();
    let factorial = |n: usize| -> BigInt { (1..=n).map(BigInt::from).product() };
    let p_fact = factorial(p);
    let mut out = Vec::new();
    // nondecreasing sequences enumerate multisets
    let mut seq = vec![0usize; p];
    loop {
        let mut distinct = seq.clone();
        distinct.dedup();
        let multiplicity = distinct.iter().fold(p_fact.clone(), |acc, &i| {
            acc / factorial(seq.iter().filter(|&&j| j == i).count())
        });
        let args: Vec<&IntVector> = seq.iter().map(|&i| &vectors[i]).collect();
        out.push(TupleClass {
            sigma: sentinel.map_or(0, |s| seq.iter().filter(|&&i| i == s).count()),
            mvp: mvp(&args)?,
            distinct,
            multiplicity,
        });
        // next nondecreasing sequence
        let Some(pos) = (0..p).rev().find(|&i| seq[i] + 1 < items) else {
            break;
        };
        let next = seq[pos] + 1;
        for slot in &mut seq[pos..] {
            *slot = next;
        }
    }
    Ok(out)
}

fn minimal_d(classes: &[TupleClass], p: u32) -> BigInt {
    let max_mvp = classes
        .iter()
        .map(|c| c.mvp.abs())
        .max()
        .unwrap_or_default()
        .max(BigInt::one());
    ((BigInt::one() << p) - 2u32) * max_mvp + 1u32
}

/// Accumulates clauses keyed by literal set, folding sentinel-true clauses into `offset`.
#[derive(Default)]
struct ClauseSink {
    clauses: BTreeMap<Vec<Lit>, BigInt>,
    offset: BigInt,
}

impl ClauseSink {
    fn add(&mut self, mut lits: Vec<Lit>, weight: BigInt) {
        lits.sort_unstable_by_key(|l| l.unsigned_abs());
        *self.clauses.entry(lits).or_default() += weight;
    }

    fn finish(self) -> Result<(Vec<WeightedClause>, BigInt)> {
        let mut clauses = Vec::with_capacity(self.clauses.len());
        for (lits, weight) in self.clauses {
            if weight.is_negative() {
                return Err(Error::invalid(format!(
                    "clause {lits:?} received negative weight {weight}; D is too small"
                )));
            }
            if !weight.is_zero() {
                clauses.push(WeightedClause { lits, weight });
            }
        }
        Ok((clauses, self.offset))
    }
}

/// Emits the `2^k` sign patterns of every tuple class. A class with distinct
/// variables `x_{i'_1}..x_{i'_k}` puts `(D − s·mvp)/(2^k−1)` on each pattern
/// with a positive literal and `(D + (2^k−2)·s·mvp)/(2^k−1)` on the all-negated
/// one, `s = (−1)^σ`. Any assignment falsifies exactly one pattern, so a class
/// contributes `D − s·mvp` when all its variables are true and `D` otherwise.
fn emit_soft(sink: &mut ClauseSink, classes: &[TupleClass], d: &BigInt, scale: &BigInt, sentinel: Option<usize>) {
    for class in classes {
        let k = class.distinct.len();
        let patterns = (1u64 << k) - 1;
        let signed_mvp = if class.sigma % 2 == 1 { -&class.mvp } else { class.mvp.clone() };
        let unit = scale / BigInt::from(patterns) * &class.multiplicity;
        let w_mixed = &unit * (d - &signed_mvp);
        let w_all_neg = &unit * (d + BigInt::from(patterns - 1) * &signed_mvp);
        for j in 0..=patterns {
            let weight = if j == patterns { w_all_neg.clone() } else { w_mixed.clone() };
            let mut lits = Vec::with_capacity(k);
            let mut always_true = false;
            for (bit, &var) in class.distinct.iter().enumerate() {
                let negated = j >> bit & 1 == 1;
                if Some(var) == sentinel {
                    // x_{n+1} is fixed to true
                    if !negated {
                        always_true = true;
                    }
                    continue;
                }
                let lit = var as Lit + 1;
                lits.push(if negated { -lit } else { lit });
            }
            if always_true {
                sink.offset += weight;
            } else if !lits.is_empty() {
                sink.add(lits, weight);
            }
        }
    }
}

/// Weighted Max-p-SAT formula on `n` variables whose objective (satisfied
/// weight plus offset) under assignment `ρ` is
/// `scale · ((n+1)^p · D − ‖Bρ − t‖_p^p)`, with `D = (2^p − 2)·M + 1` and `M`
/// the largest `|mvp|` over index tuples (at least 1).
pub fn reduce_cvp_to_wcnf(inst: &CvpInstance) -> Result<WcnfFormula> {
    build_cvp(inst, None)
}

/// Same as [`reduce_cvp_to_wcnf`] with an explicit `D`. Zero-weight clauses are
/// dropped; a `D` that drives any weight negative is rejected.
pub fn reduce_cvp_to_wcnf_with_d(inst: &CvpInstance, d: &BigInt) -> Result<WcnfFormula> {
    if !d.is_positive() {
        return Err(Error::invalid("D must be positive"));
    }
    build_cvp(inst, Some(d.clone()))
}

fn build_cvp(inst: &CvpInstance, d: Option<BigInt>) -> Result<WcnfFormula> {
    check_even_p(inst.p())?;
    let n = inst.rank();
    let p = inst.p();
    let mut vectors = inst.basis().to_vec();
    vectors.push(inst.target().clone());
    let classes = tuple_classes(&vectors, Some(n), p as usize)?;
    let d = d.unwrap_or_else(|| minimal_d(&classes, p));
    let scale = maxsat_scale(p);
    let mut sink = ClauseSink::default();
    emit_soft(&mut sink, &classes, &d, &scale, Some(n));
    let (clauses, offset) = sink.finish()?;
    let tuples = num_traits::pow(BigInt::from(n + 1), p as usize);
    let threshold = &scale * (tuples * &d - inst.threshold_pow());
    Ok(WcnfFormula {
        num_vars: n,
        primary_vars: n,
        clauses,
        offset,
        scale,
        d,
        threshold,
    })
}

/// Splits `x_1 ∨ … ∨ x_n` into clauses of width at most `p` over fresh
/// variables starting at `next_var`. Returns the clauses and how many units of
/// the per-clause weight a satisfying choice of auxiliaries collects; when every
/// `x_i` is false at least one unit is always lost.
fn nonzero_chain(n: usize, p: usize, next_var: &mut usize) -> (Vec<Vec<Lit>>, u64) {
    let xs: Vec<Lit> = (1..=n as Lit).collect();
    if n <= p {
        return (vec![xs], 1);
    }
    let mut fresh = || {
        *next_var += 1;
        *next_var as Lit
    };
    // width of the chain links; p = 2 goes through 3-clauses and a gadget
    let width = p.max(3);
    let mut links = Vec::new();
    let mut rest = &xs[..];
    let mut carry: Option<Lit> = None;
    loop {
        let room = width - usize::from(carry.is_some());
        if rest.len() <= room {
            let mut clause: Vec<Lit> = carry.map(|y| -y).into_iter().collect();
            clause.extend_from_slice(rest);
            links.push(clause);
            break;
        }
        let take = room - 1;
        let y = fresh();
        let mut clause: Vec<Lit> = carry.map(|y| -y).into_iter().collect();
        clause.extend_from_slice(&rest[..take]);
        clause.push(y);
        links.push(clause);
        rest = &rest[take..];
        carry = Some(y);
    }
    if p >= 3 || links.iter().all(|c| c.len() <= p) {
        let units = links.len() as u64;
        return (links, units);
    }
    // Max-2-SAT gadget for (a ∨ b ∨ c) with auxiliary w: ten clauses of which
    // at most 7 hold when the 3-clause is satisfied and at most 6 otherwise.
    let mut out = Vec::new();
    let mut units = 0;
    for link in links {
        if link.len() <= 2 {
            out.push(link);
            units += 1;
            continue;
        }
        let (a, b, c) = (link[0], link[1], link[2]);
        let w = fresh();
        out.extend([
            vec![a],
            vec![b],
            vec![c],
            vec![w],
            vec![-a, -b],
            vec![-b, -c],
            vec![-a, -c],
            vec![a, -w],
            vec![b, -w],
            vec![c, -w],
        ]);
        units += 7;
    }
    (out, units)
}

/// Karp reduction from (0,1)-SVP_p: the CVP-style soft clauses over `[n]^p`
/// (target zero, so sentinel tuples are omitted) plus the nonzero-forcing
/// clause `x_1 ∨ … ∨ x_n`, split into width-`p` pieces that each weigh
/// `H = 1 + Σ soft weights`. Objective under `ρ` with every chain clause held:
/// `scale · (n^p · D − ‖Bρ‖_p^p) + units · H`.
pub fn reduce_svp_to_wcnf(inst: &SvpInstance) -> Result<WcnfFormula> {
    let p = inst.p();
    if p < 2 {
        return Err(Error::UnsupportedNorm(p));
    }
    check_even_p(p)?;
    let n = inst.rank();
    let classes = tuple_classes(inst.basis(), None, p as usize)?;
    let d = minimal_d(&classes, p);
    let scale = maxsat_scale(p);
    let mut sink = ClauseSink::default();
    emit_soft(&mut sink, &classes, &d, &scale, None);
    let soft_total: BigInt = sink.clauses.values().sum();
    let heavy = soft_total + 1u32;

    let mut next_var = n;
    let (chain, units) = nonzero_chain(n, p as usize, &mut next_var);
    for clause in chain {
        sink.add(clause, heavy.clone());
    }
    let (clauses, offset) = sink.finish()?;
    let tuples = num_traits::pow(BigInt::from(n), p as usize);
    let threshold = &scale * (tuples * &d - inst.threshold_pow()) + heavy * units;
    Ok(WcnfFormula {
        num_vars: next_var,
        primary_vars: n,
        clauses,
        offset,
        scale,
        d,
        threshold,
    })
}
