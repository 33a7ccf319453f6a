//! Even-norm (0,1)-CVP to minimum-weight k-clique on a p-uniform k-partite hypergraph.
//!
//! Every p-subset of parts carries a dense table of hyperedge weights. For the
//! hyperedge on vertices `c_1..c_p` (one per part) plus the target sentinel
//! `t`, the rational weight is
//!
//! ```text
//! Σ_{X ∈ {c_1..c_p, t}^p} (−1)^{σ(X)} · mvp(X) / C(k − σ'(X), p − σ'(X))
//! ```
//!
//! where `σ` counts sentinel positions and `σ'` counts distinct non-sentinel
//! vertices. A tuple spanning `σ'` distinct parts shows up in `C(k−σ', p−σ')`
//! hyperedges of a clique, so summing over the clique's `C(k,p)` hyperedges
//! yields `‖c_1 + … + c_k − t‖_p^p`. Stored weights are multiplied by
//! `Λ = lcm_s C(k−s, p−s)`.

use std::collections::HashMap;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::enumerate::{split_and_list_with_budget, BlockLists};
use crate::error::{Error, Result};
use crate::lattice::{check_even_p, CvpInstance, IntVector};
use crate::limits::Limits;

pub(crate) fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(r))
}

/// Multiplicity `β(k, p, X) = C(k − σ', p − σ')` of a tuple with `σ'` distinct
/// non-sentinel entries.
pub fn beta(k: usize, p: usize, sigma_prime: usize) -> Result<BigInt> {
    if sigma_prime > p || p > k {
        return Err(Error::invalid(format!(
            "beta needs 0 <= sigma'={sigma_prime} <= p={p} <= k={k}"
        )));
    }
    Ok(binomial(k - sigma_prime, p - sigma_prime))
}

/// `Λ = lcm{C(k−s, p−s) : s = 0..p}`.
pub fn hyperclique_scale(k: usize, p: usize) -> Result<BigInt> {
    (0..=p).try_fold(BigInt::one(), |acc, s| Ok(acc.lcm(&beta(k, p, s)?)))
}

/// All `r`-subsets of `0..k` in lexicographic order.
pub(crate) fn subsets(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > k {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] != i + k - r) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PUniformHypergraph {
    parts: Vec<usize>,
    p: usize,
    /// p-subsets of parts, lexicographic.
    edge_parts: Vec<Vec<usize>>,
    /// Per p-subset, weights indexed mixed-radix by the picks (first part most significant).
    weights: Vec<Vec<BigInt>>,
    scale: BigInt,
    threshold_scaled: BigInt,
    blocks: Option<Vec<Range<usize>>>,
}

impl PUniformHypergraph {
    pub fn new(
        parts: Vec<usize>,
        p: usize,
        weights: Vec<Vec<BigInt>>,
        scale: BigInt,
        threshold_scaled: BigInt,
        blocks: Option<Vec<Range<usize>>>,
    ) -> Result<Self> {
        let k = parts.len();
        if p == 0 || p > k {
            return Err(Error::invalid(format!("need 1 <= p={p} <= k={k}")));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("every part must be nonempty"));
        }
        if !scale.is_positive() {
            return Err(Error::invalid("scale must be positive"));
        }
        let edge_parts = subsets(k, p);
        if weights.len() != edge_parts.len() {
            return Err(Error::DimensionMismatch {
                expected: edge_parts.len(),
                found: weights.len(),
            });
        }
        for (sub, w) in edge_parts.iter().zip(&weights) {
            let size: usize = sub.iter().map(|&a| parts[a]).product();
            if w.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: w.len(),
                });
            }
        }
        Ok(PUniformHypergraph {
            parts,
            p,
            edge_parts,
            weights,
            scale,
            threshold_scaled,
            blocks,
        })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn threshold_scaled(&self) -> &BigInt {
        &self.threshold_scaled
    }

    pub fn blocks(&self) -> Option<&[Range<usize>]> {
        self.blocks.as_deref()
    }

    pub fn edge_parts(&self) -> &[Vec<usize>] {
        &self.edge_parts
    }

    pub fn edge_weights(&self) -> &[Vec<BigInt>] {
        &self.weights
    }

    fn offset(&self, sub: &[usize], local: impl Iterator<Item = usize>) -> usize {
        sub.iter()
            .zip(local)
            .fold(0, |acc, (&a, j)| acc * self.parts[a] + j)
    }

    /// Weight of the hyperedge over parts `sub` picking `local[i]` in part `sub[i]`.
    pub fn hyperedge_weight(&self, sub: &[usize], local: &[usize]) -> Result<&BigInt> {
        let idx = self
            .edge_parts
            .iter()
            .position(|s| s == sub)
            .ok_or_else(|| Error::invalid(format!("{sub:?} is not a p-subset of parts")))?;
        for (&a, &j) in sub.iter().zip(local) {
            if j >= self.parts[a] {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    limit: self.parts[a],
                });
            }
        }
        Ok(&self.weights[idx][self.offset(sub, local.iter().copied())])
    }

    pub fn hyperclique_weight(&self, picks: &[usize]) -> Result<BigInt> {
        if picks.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: picks.len(),
            });
        }
        for (&pick, &limit) in picks.iter().zip(&self.parts) {
            if pick >= limit {
                return Err(Error::IndexOutOfRange { index: pick, limit });
            }
        }
        Ok(self.hyperclique_weight_unchecked(picks))
    }

    pub(crate) fn hyperclique_weight_unchecked(&self, picks: &[usize]) -> BigInt {
        self.edge_parts
            .iter()
            .zip(&self.weights)
            .map(|(sub, w)| &w[self.offset(sub, sub.iter().map(|&a| picks[a]))])
            .sum()
    }
}

/// One multiset of positions drawn from the `p` hyperedge vertices plus the
/// sentinel, with the scaled signed coefficient of all ordered tuples it covers.
struct Pattern {
    /// Multiplicity of each vertex position; the last entry is the sentinel.
    counts: Vec<u32>,
    coeff: BigInt,
}

fn patterns(k: usize, p: usize, scale: &BigInt) -> Result<Vec<Pattern>> {
    let factorial = |n: u32| -> BigInt { (1..=n).map(BigInt::from).product() };
    let mut out = Vec::new();
    let mut counts = vec![0u32; p + 1];
    fn fill(
        slot: usize,
        left: u32,
        counts: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> Result<()>,
    ) -> Result<()> {
        if slot + 1 == counts.len() {
            counts[slot] = left;
            return visit(counts);
        }
        for c in 0..=left {
            counts[slot] = c;
            fill(slot + 1, left - c, counts, visit)?;
        }
        Ok(())
    }
    let p_fact = factorial(p as u32);
    fill(0, p as u32, &mut counts, &mut |c: &[u32]| {
        let sigma = c[p];
        let sigma_prime = c[..p].iter().filter(|&&x| x > 0).count();
        let multinomial = c.iter().fold(p_fact.clone(), |acc, &x| acc / factorial(x));
        let mut coeff = multinomial * (scale / beta(k, p, sigma_prime)?);
        if sigma % 2 == 1 {
            coeff = -coeff;
        }
        out.push(Pattern {
            counts: c.to_vec(),
            coeff,
        });
        Ok(())
    })?;
    Ok(out)
}

/// `Σ_i Π_j v_j[i]^{counts_j}`.
fn mvp_powers(vs: &[&IntVector], counts: &[u32]) -> BigInt {
    let dim = vs[0].dim();
    (0..dim)
        .map(|i| {
            vs.iter()
                .zip(counts)
                .filter(|(_, &c)| c > 0)
                .map(|(v, &c)| num_traits::pow(v.entries()[i].clone(), c as usize))
                .product::<BigInt>()
        })
        .sum()
}

pub fn reduce_cvp_to_hyperclique(inst: &CvpInstance, k: usize) -> Result<PUniformHypergraph> {
    reduce_cvp_to_hyperclique_with_limits(inst, k, &Limits::default())
}

pub fn reduce_cvp_to_hyperclique_with_limits(
    inst: &CvpInstance,
    k: usize,
    limits: &Limits,
) -> Result<PUniformHypergraph> {
    let p = inst.p() as usize;
    check_even_p(inst.p())?;
    if k < p {
        return Err(Error::invalid(format!(
            "the hyperclique reduction needs k >= p (k={k}, p={p})"
        )));
    }
    let lists = split_and_list_with_budget(inst.basis(), k, limits.element_budget)?;
    let edges: u64 = subsets(k, p)
        .iter()
        .map(|s| s.iter().map(|&a| lists.list(a).len() as u64).product::<u64>())
        .sum();
    if edges > limits.element_budget {
        return Err(Error::Resource(format!(
            "hypergraph would have {edges} hyperedges (budget {})",
            limits.element_budget
        )));
    }
    build_from_lists(inst, &lists)
}

pub fn build_from_lists(inst: &CvpInstance, lists: &BlockLists) -> Result<PUniformHypergraph> {
    let p = inst.p() as usize;
    let k = lists.k();
    check_even_p(inst.p())?;
    if k < p {
        return Err(Error::invalid(format!(
            "the hyperclique reduction needs k >= p (k={k}, p={p})"
        )));
    }
    let scale = hyperclique_scale(k, p)?;
    let pats = patterns(k, p, &scale)?;
    let t = inst.target();
    let edge_parts = subsets(k, p);
    let offsets: Vec<usize> = lists
        .lists()
        .iter()
        .scan(0, |acc, l| {
            let start = *acc;
            *acc += l.len();
            Some(start)
        })
        .collect();

    let weights = edge_parts
        .par_iter()
        .map(|sub| {
            let sizes: Vec<usize> = sub.iter().map(|&a| lists.list(a).len()).collect();
            let total: usize = sizes.iter().product();
            // keyed by the sorted multiset of global vertex ids, u32::MAX = target
            let mut memo: HashMap<Vec<u32>, BigInt> = HashMap::new();
            let mut local = vec![0usize; p];
            let mut out = Vec::with_capacity(total);
            for _ in 0..total {
                let mut vs: Vec<&IntVector> =
                    sub.iter().zip(&local).map(|(&a, &j)| &lists.list(a)[j]).collect();
                vs.push(t);
                let ids: Vec<u32> = sub
                    .iter()
                    .zip(&local)
                    .map(|(&a, &j)| (offsets[a] + j) as u32)
                    .chain(std::iter::once(u32::MAX))
                    .collect();
                let mut w = BigInt::zero();
                for pat in &pats {
                    let mut key: Vec<u32> = ids
                        .iter()
                        .zip(&pat.counts)
                        .flat_map(|(&id, &c)| std::iter::repeat_n(id, c as usize))
                        .collect();
                    key.sort_unstable();
                    let value = memo
                        .entry(key)
                        .or_insert_with(|| mvp_powers(&vs, &pat.counts));
                    w += &pat.coeff * &*value;
                }
                out.push(w);
                // mixed-radix increment, last position fastest
                for pos in (0..p).rev() {
                    local[pos] += 1;
                    if local[pos] < sizes[pos] {
                        break;
                    }
                    local[pos] = 0;
                }
            }
            out
        })
        .collect();

    PUniformHypergraph::new(
        lists.part_sizes(),
        p,
        weights,
        scale.clone(),
        scale * inst.threshold_pow(),
        Some(lists.blocks().to_vec()),
    )
}
