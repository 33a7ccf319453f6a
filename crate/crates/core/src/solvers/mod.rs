//! Minimum-weight (hyper)clique search.
//!
//! [`brute_min_clique`] works for any k and p. For k = 3 graphs there are two
//! faster routes: the min-plus product ([`min_weight_triangle_naive`]) and the
//! bounded-weight positional encoding that turns the min-plus product into an
//! ordinary integer matrix product ([`min_weight_triangle_encoded`]).

mod minplus;
mod triangle;

pub use minplus::{min_plus_product, Extended, WeightMatrix};
pub use triangle::{
    integer_matmul, min_weight_triangle_encoded, min_weight_triangle_encoded_with_limits,
    min_weight_triangle_naive, DigitMatrix, TriangleResult,
};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::clique::KPartiteGraph;
use crate::error::{Error, Result};
use crate::hyperclique::PUniformHypergraph;

/// Anything with one vertex picked per part and a total weight for the pick.
pub trait CliqueSearch: Sync {
    fn part_sizes(&self) -> &[usize];
    /// Weight of the clique `picks`; indices are already range-checked.
    fn pick_weight(&self, picks: &[usize]) -> BigInt;
}

impl CliqueSearch for KPartiteGraph {
    fn part_sizes(&self) -> &[usize] {
        self.parts()
    }

    fn pick_weight(&self, picks: &[usize]) -> BigInt {
        self.clique_weight_unchecked(picks)
    }
}

impl CliqueSearch for PUniformHypergraph {
    fn part_sizes(&self) -> &[usize] {
        self.parts()
    }

    fn pick_weight(&self, picks: &[usize]) -> BigInt {
        self.hyperclique_weight_unchecked(picks)
    }
}

/// Exhaustive minimum over all one-per-part picks. Ties go to the
/// lexicographically smallest pick vector.
pub fn brute_min_clique<G: CliqueSearch + ?Sized>(g: &G) -> Result<(BigInt, Vec<usize>)> {
    let sizes = g.part_sizes();
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::invalid("brute-force clique search needs nonempty parts"));
    }
    let rest = &sizes[1..];
    (0..sizes[0])
        .into_par_iter()
        .map(|first| {
            let mut picks = vec![0usize; sizes.len()];
            picks[0] = first;
            let mut best: Option<(BigInt, Vec<usize>)> = None;
            loop {
                let w = g.pick_weight(&picks);
                if best.as_ref().is_none_or(|(bw, _)| &w < bw) {
                    best = Some((w, picks.clone()));
                }
                if !advance_mixed(&mut picks[1..], rest) {
                    break;
                }
            }
            best.expect("at least one pick")
        })
        .reduce_with(|a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .ok_or_else(|| Error::invalid("empty search space"))
}

/// Lexicographic mixed-radix increment; `false` after the last value.
pub(crate) fn advance_mixed(digits: &mut [usize], radices: &[usize]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radices).rev() {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}
