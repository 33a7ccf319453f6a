//! Split-and-list: cut the basis into `k` contiguous blocks and list every
//! {0,1}-combination of each block.

use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::IntVector;
use crate::limits::DEFAULT_ELEMENT_BUDGET;

/// Per-block subset-sum lists.
///
/// Entry `j` of list `i` is the sum of the basis vectors of block `i` selected
/// by the bits of `j`; bit `l` stands for basis index `blocks[i].start + l`.
/// Lists are therefore in ascending bitmask order and entry 0 is always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLists {
    blocks: Vec<Range<usize>>,
    lists: Vec<Vec<IntVector>>,
}

/// Balanced contiguous partition of `0..n` into `k` blocks, larger blocks first.
pub fn partition(n: usize, k: usize) -> Result<Vec<Range<usize>>> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "block count k={k} must satisfy 1 <= k <= n={n}"
        )));
    }
    let (base, extra) = (n / k, n % k);
    let mut start = 0;
    Ok((0..k)
        .map(|i| {
            let len = base + usize::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect())
}

/// `Σ_i 2^{|block i|}`, the vertex count of any reduced graph.
pub fn vertex_count(n: usize, k: usize) -> Result<u64> {
    Ok(partition(n, k)?.iter().map(|b| 1u64 << b.len()).sum())
}

pub fn split_and_list(basis: &[IntVector], k: usize) -> Result<BlockLists> {
    split_and_list_with_budget(basis, k, DEFAULT_ELEMENT_BUDGET)
}

pub fn split_and_list_with_budget(
    basis: &[IntVector],
    k: usize,
    element_budget: u64,
) -> Result<BlockLists> {
    let n = basis.len();
    let blocks = partition(n, k)?;
    let dim = basis[0].dim();
    let max_len = blocks[0].len();
    // k · 2^⌈n/k⌉ · m, saturating so huge requests still fail cleanly
    let elements = (k as u64)
        .saturating_mul(1u64.checked_shl(max_len as u32).unwrap_or(u64::MAX))
        .saturating_mul(dim as u64);
    if max_len >= 63 || elements > element_budget {
        return Err(Error::Resource(format!(
            "split-and-list would hold {elements} coordinates (budget {element_budget}); \
             increase k or the element budget"
        )));
    }
    let lists = blocks
        .par_iter()
        .map(|block| list_block(&basis[block.clone()], dim))
        .collect();
    Ok(BlockLists { blocks, lists })
}

fn list_block(vectors: &[IntVector], dim: usize) -> Vec<IntVector> {
    let size = 1usize << vectors.len();
    let mut out = Vec::with_capacity(size);
    out.push(IntVector::zeros(dim));
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let mut v = out[mask & (mask - 1)].clone();
        v.add_assign(&vectors[low]);
        out.push(v);
    }
    out
}

impl BlockLists {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn lists(&self) -> &[Vec<IntVector>] {
        &self.lists
    }

    pub fn list(&self, part: usize) -> &[IntVector] {
        &self.lists[part]
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.lists.iter().map(Vec::len).collect()
    }

    pub fn total_vertices(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }

    /// Rank of the basis the lists were built from.
    pub fn rank(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.end)
    }

    /// Subset bitmask of entry `index` of list `part`.
    pub fn mask(&self, part: usize, index: usize) -> u64 {
        debug_assert!(index < self.lists[part].len());
        index as u64
    }

    /// Coefficient vector selected by one pick per list.
    pub fn decode_solution(&self, picks: &[usize]) -> Result<Vec<bool>> {
        if picks.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: picks.len(),
            });
        }
        let mut z = vec![false; self.rank()];
        for (part, (&pick, block)) in picks.iter().zip(&self.blocks).enumerate() {
            let limit = self.lists[part].len();
            if pick >= limit {
                return Err(Error::IndexOutOfRange { index: pick, limit });
            }
            let mask = self.mask(part, pick);
            for (bit, slot) in z[block.clone()].iter_mut().enumerate() {
                *slot = mask >> bit & 1 == 1;
            }
        }
        Ok(z)
    }

    /// Inverse of [`decode_solution`](Self::decode_solution).
    pub fn encode_solution(&self, z: &[bool]) -> Result<Vec<usize>> {
        if z.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: z.len(),
            });
        }
        Ok(self
            .blocks
            .iter()
            .map(|block| {
                z[block.clone()]
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(bit, _)| 1usize << bit)
                    .sum()
            })
            .collect())
    }
}
