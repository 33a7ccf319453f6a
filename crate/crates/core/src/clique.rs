//! Euclidean (0,1)-CVP to minimum-weight k-clique on a complete k-partite graph.
//!
//! Vertex `j` of part `i` is the `j`-th subset sum `c` of basis block `i`. The
//! rational edge weight
//!
//! ```text
//! w(c1, c2) = 2<c1,c2> + (|c1|² + |c2|² − 2<c1,t> − 2<c2,t>)/(k−1) + |t|²/C(k,2)
//! ```
//!
//! sums over any k-clique to `|c_1 + … + c_k − t|²`. Weights are stored
//! multiplied by `L = (k−1)·C(k,2)`, which makes them integral.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::enumerate::{split_and_list_with_budget, BlockLists};
use crate::error::{Error, Result};
use crate::lattice::{mvp, norm_pow, CvpInstance, IntVector};
use crate::limits::Limits;

/// Complete k-partite graph with dense integer weights per part pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPartiteGraph {
    parts: Vec<usize>,
    /// One row-major `parts[a] × parts[b]` matrix per pair `a < b`, pairs in lexicographic order.
    weights: Vec<Vec<BigInt>>,
    scale: BigInt,
    threshold_scaled: BigInt,
    /// Basis blocks behind each part, when the graph came from a CVP instance.
    blocks: Option<Vec<Range<usize>>>,
}

pub(crate) fn pair_index(k: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < k);
    a * (2 * k - a - 1) / 2 + (b - a - 1)
}

/// `L = (k−1)·C(k,2)`.
pub fn clique_scale(k: usize) -> BigInt {
    let k = k as u64;
    BigInt::from((k - 1) * (k * (k - 1) / 2))
}

impl KPartiteGraph {
    pub fn new(
        parts: Vec<usize>,
        weights: Vec<Vec<BigInt>>,
        scale: BigInt,
        threshold_scaled: BigInt,
        blocks: Option<Vec<Range<usize>>>,
    ) -> Result<Self> {
        let k = parts.len();
        if k < 2 {
            return Err(Error::invalid("a k-partite graph needs k >= 2 parts"));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("every part must be nonempty"));
        }
        if !scale.is_positive() {
            return Err(Error::invalid("scale must be positive"));
        }
        let pairs = k * (k - 1) / 2;
        if weights.len() != pairs {
            return Err(Error::DimensionMismatch {
                expected: pairs,
                found: weights.len(),
            });
        }
        for a in 0..k {
            for b in a + 1..k {
                let w = &weights[pair_index(k, a, b)];
                if w.len() != parts[a] * parts[b] {
                    return Err(Error::DimensionMismatch {
                        expected: parts[a] * parts[b],
                        found: w.len(),
                    });
                }
            }
        }
        if let Some(bl) = &blocks {
            if bl.len() != k || bl.iter().zip(&parts).any(|(r, &s)| 1usize << r.len() != s) {
                return Err(Error::invalid("block layout does not match part sizes"));
            }
        }
        Ok(KPartiteGraph {
            parts,
            weights,
            scale,
            threshold_scaled,
            blocks,
        })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
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

    /// Back-reference of a global vertex id: `(part, list index)`.
    pub fn origin(&self, vertex: usize) -> Option<(usize, usize)> {
        let mut rest = vertex;
        for (part, &size) in self.parts.iter().enumerate() {
            if rest < size {
                return Some((part, rest));
            }
            rest -= size;
        }
        None
    }

    /// Dense weight matrix between parts `a < b`.
    pub fn pair_weights(&self, a: usize, b: usize) -> &[BigInt] {
        &self.weights[pair_index(self.k(), a, b)]
    }

    pub fn all_pair_weights(&self) -> &[Vec<BigInt>] {
        &self.weights
    }

    /// Weight of the edge between vertex `i` of part `a` and vertex `j` of part `b`.
    pub fn weight(&self, a: usize, i: usize, b: usize, j: usize) -> &BigInt {
        if a < b {
            &self.weights[pair_index(self.k(), a, b)][i * self.parts[b] + j]
        } else {
            &self.weights[pair_index(self.k(), b, a)][j * self.parts[a] + i]
        }
    }

    /// Largest absolute edge weight.
    pub fn max_abs_weight(&self) -> BigInt {
        self.weights
            .iter()
            .flatten()
            .map(|w| w.abs())
            .max()
            .unwrap_or_default()
    }

    fn check_picks(&self, picks: &[usize]) -> Result<()> {
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
        Ok(())
    }

    /// Sum of the `C(k,2)` edge weights of the clique with one vertex per part.
    pub fn clique_weight(&self, picks: &[usize]) -> Result<BigInt> {
        self.check_picks(picks)?;
        Ok(self.clique_weight_unchecked(picks))
    }

    pub(crate) fn clique_weight_unchecked(&self, picks: &[usize]) -> BigInt {
        let k = self.k();
        let mut total = BigInt::default();
        for a in 0..k {
            for b in a + 1..k {
                total += self.weight(a, picks[a], b, picks[b]);
            }
        }
        total
    }
}

pub fn reduce_cvp_to_clique(inst: &CvpInstance, k: usize) -> Result<KPartiteGraph> {
    reduce_cvp_to_clique_with_limits(inst, k, &Limits::default())
}

pub fn reduce_cvp_to_clique_with_limits(
    inst: &CvpInstance,
    k: usize,
    limits: &Limits,
) -> Result<KPartiteGraph> {
    if inst.p() != 2 {
        return Err(Error::UnsupportedNorm(inst.p()));
    }
    if k < 2 {
        return Err(Error::invalid("the clique reduction needs k >= 2"));
    }
    let lists = split_and_list_with_budget(inst.basis(), k, limits.element_budget)?;
    build_from_lists(inst, &lists)
}

/// Builds the scaled weights from precomputed block lists.
pub fn build_from_lists(inst: &CvpInstance, lists: &BlockLists) -> Result<KPartiteGraph> {
    if inst.p() != 2 {
        return Err(Error::UnsupportedNorm(inst.p()));
    }
    let k = lists.k();
    if k < 2 {
        return Err(Error::invalid("the clique reduction needs k >= 2"));
    }
    let t = inst.target();
    let pairs_per_vertex = BigInt::from(k * (k - 1) / 2);
    let scale = clique_scale(k);
    let two_scale = &scale * 2;
    let constant = BigInt::from(k - 1) * norm_pow(t, 2)?;

    // C(k,2)·(|c|² − 2<c,t>) per vertex
    let unary: Vec<Vec<BigInt>> = lists
        .lists()
        .par_iter()
        .map(|list| {
            list.iter()
                .map(|c| {
                    let sq = mvp(&[c, c]).expect("dims checked");
                    let ct = mvp(&[c, t]).expect("dims checked");
                    &pairs_per_vertex * (sq - ct * 2)
                })
                .collect()
        })
        .collect();

    let pair_list: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .collect();
    let weights = pair_list
        .par_iter()
        .map(|&(a, b)| {
            let (la, lb) = (lists.list(a), lists.list(b));
            let mut out = Vec::with_capacity(la.len() * lb.len());
            for (c1, u1) in la.iter().zip(&unary[a]) {
                let base = u1 + &constant;
                for (c2, u2) in lb.iter().zip(&unary[b]) {
                    let ip = inner(c1, c2);
                    out.push(&two_scale * ip + &base + u2);
                }
            }
            out
        })
        .collect();

    KPartiteGraph::new(
        lists.part_sizes(),
        weights,
        scale.clone(),
        scale * inst.threshold_pow(),
        Some(lists.blocks().to_vec()),
    )
}

fn inner(a: &IntVector, b: &IntVector) -> BigInt {
    a.entries().iter().zip(b.entries()).map(|(x, y)| x * y).sum()
}
