use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::minplus::{min_plus_product, Extended, WeightMatrix};
use crate::clique::KPartiteGraph;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Minimum-weight triangle of a 3-partite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleResult {
    pub weight: BigInt,
    /// One vertex index per part.
    pub picks: [usize; 3],
}

fn check_three(g: &KPartiteGraph) -> Result<()> {
    if g.k() != 3 {
        return Err(Error::invalid(format!(
            "triangle solvers need a 3-partite graph, got k={}",
            g.k()
        )));
    }
    Ok(())
}

/// Lexicographically smallest triangle of weight `best`, given
/// `through[u][x] = min_v w12[u][v] + w23[v][x]`.
fn rescan<T>(
    w12: &[T],
    w23: &[T],
    w13: &[T],
    sizes: [usize; 3],
    through: impl Fn(usize, usize) -> T,
    best: &T,
) -> [usize; 3]
where
    T: Clone + Ord + Add<Output = T>,
{
    let [n1, n2, n3] = sizes;
    let u = (0..n1)
        .find(|&u| (0..n3).any(|x| &(through(u, x) + w13[u * n3 + x].clone()) == best))
        .expect("the minimum is attained");
    for v in 0..n2 {
        for x in 0..n3 {
            let total = w12[u * n2 + v].clone() + w23[v * n3 + x].clone() + w13[u * n3 + x].clone();
            if &total == best {
                return [u, v, x];
            }
        }
    }
    unreachable!("row {u} attains the minimum")
}

fn naive_generic<T>(w12: Vec<T>, w23: Vec<T>, w13: Vec<T>, sizes: [usize; 3]) -> Result<(T, [usize; 3])>
where
    T: Clone + Ord + Add<Output = T> + Send + Sync,
{
    let [n1, n2, n3] = sizes;
    let a = WeightMatrix::from_finite(n1, n2, w12.clone())?;
    let b = WeightMatrix::from_finite(n2, n3, w23.clone())?;
    let c = min_plus_product(&a, &b)?;
    let mut best: Option<T> = None;
    for u in 0..n1 {
        for x in 0..n3 {
            if let Extended::Finite(through) = c.get(u, x) {
                let total = through.clone() + w13[u * n3 + x].clone();
                if best.as_ref().is_none_or(|b| &total < b) {
                    best = Some(total);
                }
            }
        }
    }
    let best = best.ok_or_else(|| Error::invalid("graph has no triangle"))?;
    let through = |u: usize, x: usize| c.get(u, x).finite().expect("complete graph").clone();
    let picks = rescan(&w12, &w23, &w13, sizes, through, &best);
    Ok((best, picks))
}

fn to_i128_all(ws: &[BigInt], bound: i128) -> Option<Vec<i128>> {
    ws.iter()
        .map(|w| w.to_i128().filter(|x| x.abs() <= bound))
        .collect()
}

/// Min-plus product of the first two edge blocks, closed with the third.
pub fn min_weight_triangle_naive(g: &KPartiteGraph) -> Result<TriangleResult> {
    check_three(g)?;
    let parts = g.parts();
    let sizes = [parts[0], parts[1], parts[2]];
    let (w12, w13, w23) = (g.pair_weights(0, 1), g.pair_weights(0, 2), g.pair_weights(1, 2));
    // machine integers whenever three weights cannot overflow
    let bound = i128::MAX / 4;
    if let (Some(a), Some(b), Some(c)) = (
        to_i128_all(w12, bound),
        to_i128_all(w23, bound),
        to_i128_all(w13, bound),
    ) {
        let (weight, picks) = naive_generic(a, b, c, sizes)?;
        return Ok(TriangleResult {
            weight: weight.into(),
            picks,
        });
    }
    let (weight, picks) = naive_generic(w12.to_vec(), w23.to_vec(), w13.to_vec(), sizes)?;
    Ok(TriangleResult { weight, picks })
}

/// Matrix whose entries are positional encodings `Σ_e count_e · 2^{e·base_bits}`:
/// digit `e` of an entry counts the contributions of exponent `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitMatrix {
    rows: usize,
    cols: usize,
    base_bits: u64,
    entries: Vec<BigUint>,
}

impl DigitMatrix {
    /// Encodes each exponent `e` as the single digit `x^e`.
    pub fn from_exponents(rows: usize, cols: usize, exponents: &[u64], base_bits: u64) -> Result<Self> {
        if exponents.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: exponents.len(),
            });
        }
        if base_bits == 0 {
            return Err(Error::invalid("digit width must be positive"));
        }
        let entries = exponents
            .par_iter()
            .map(|&e| BigUint::one() << (e * base_bits))
            .collect();
        Ok(DigitMatrix {
            rows,
            cols,
            base_bits,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn base_bits(&self) -> u64 {
        self.base_bits
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.cols + j]
    }

    /// Ordinary matrix product of the encodings. Digits stay exact as long as no
    /// count reaches `2^base_bits`, which holds when `2^base_bits` exceeds the
    /// inner dimension.
    pub fn product(&self, other: &DigitMatrix) -> Result<DigitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.base_bits != other.base_bits {
            return Err(Error::invalid("digit widths differ"));
        }
        if (self.cols as u128) >= 1u128 << self.base_bits.min(127) {
            return Err(Error::invalid("digit width too small for the inner dimension"));
        }
        let entries = integer_matmul(&self.entries, &other.entries, self.rows, self.cols, other.cols);
        Ok(DigitMatrix {
            rows: self.rows,
            cols: other.cols,
            base_bits: self.base_bits,
            entries,
        })
    }

    /// Count stored at exponent `e` of entry `(i, j)`.
    pub fn digit(&self, i: usize, j: usize, e: u64) -> u64 {
        let mask = (BigUint::one() << self.base_bits) - 1u32;
        ((self.entry(i, j) >> (e * self.base_bits)) & mask)
            .to_u64()
            .expect("digit fits in base_bits")
    }

    /// Smallest exponent with a nonzero count.
    pub fn least_exponent(&self, i: usize, j: usize) -> Option<u64> {
        self.entry(i, j).trailing_zeros().map(|tz| tz / self.base_bits)
    }
}

/// Dense `n × inner` by `inner × m` product over arbitrary-precision naturals.
///
/// This is the single kernel the encoded triangle solver relies on; any faster
/// integer matrix multiplication can replace it without touching the encoding.
pub fn integer_matmul(a: &[BigUint], b: &[BigUint], n: usize, inner: usize, m: usize) -> Vec<BigUint> {
    assert_eq!(a.len(), n * inner);
    assert_eq!(b.len(), inner * m);
    let mut out = vec![BigUint::zero(); n * m];
    if m == 0 {
        return out;
    }
    out.par_chunks_mut(m).enumerate().for_each(|(i, row)| {
        for l in 0..inner {
            let x = &a[i * inner + l];
            if x.is_zero() {
                continue;
            }
            for (slot, y) in row.iter_mut().zip(&b[l * m..(l + 1) * m]) {
                if !y.is_zero() {
                    *slot += x * y;
                }
            }
        }
    });
    out
}

pub fn min_weight_triangle_encoded(g: &KPartiteGraph, bound: &BigInt) -> Result<TriangleResult> {
    min_weight_triangle_encoded_with_limits(g, bound, &Limits::default())
}

/// Bounded-weight triangle search through one integer matrix product.
///
/// Weights are shifted from `[−W, W]` to `[0, 2W]`, each weight `w` becomes the
/// monomial `x^w` with `x = 2^s > |P2|`, and after multiplying the `P1×P2` and
/// `P2×P3` encodings the least nonzero digit of entry `(u, x)` sits at exponent
/// `min_v w12[u][v] + w23[v][x] + 2W`.
pub fn min_weight_triangle_encoded_with_limits(
    g: &KPartiteGraph,
    bound: &BigInt,
    limits: &Limits,
) -> Result<TriangleResult> {
    check_three(g)?;
    if bound.is_negative() {
        return Err(Error::invalid("weight bound must be non-negative"));
    }
    let parts = g.parts();
    let [n1, n2, n3] = [parts[0], parts[1], parts[2]];
    let (w12, w13, w23) = (g.pair_weights(0, 1), g.pair_weights(0, 2), g.pair_weights(1, 2));
    if let Some(w) = w12.iter().chain(w13).chain(w23).find(|w| &w.abs() > bound) {
        return Err(Error::invalid(format!(
            "edge weight {w} exceeds the declared bound {bound}"
        )));
    }

    let base_bits = u64::from(usize::BITS - n2.leading_zeros()).max(1);
    let too_big = || {
        Error::Resource(format!(
            "positional encoding for weight bound {bound} exceeds the bit budget {}; \
             use the naive min-plus triangle solver instead",
            limits.encoded_bit_budget
        ))
    };
    let shift = bound.to_u64().filter(|&w| w < u64::MAX / 8).ok_or_else(too_big)?;
    let span_bits = (2 * shift + 1).checked_mul(base_bits).ok_or_else(too_big)?;
    let cells = (n1 * n2 + n2 * n3 + 2 * n1 * n3) as u64;
    if cells.checked_mul(span_bits).is_none_or(|b| b > limits.encoded_bit_budget) {
        return Err(too_big());
    }

    let shifted = |ws: &[BigInt]| -> Vec<u64> {
        ws.iter()
            .map(|w| (w + BigInt::from(shift)).to_u64().expect("within bound"))
            .collect()
    };
    let a = DigitMatrix::from_exponents(n1, n2, &shifted(w12), base_bits)?;
    let b = DigitMatrix::from_exponents(n2, n3, &shifted(w23), base_bits)?;
    let c = a.product(&b)?;

    let two_shift = BigInt::from(2 * shift);
    let through: Vec<BigInt> = (0..n1 * n3)
        .into_par_iter()
        .map(|idx| {
            let e = c
                .least_exponent(idx / n3, idx % n3)
                .expect("complete graph has a path through every middle vertex");
            BigInt::from(e) - &two_shift
        })
        .collect();

    let best = (0..n1 * n3)
        .map(|idx| &through[idx] + &w13[idx])
        .min()
        .expect("nonempty parts");
    let picks = rescan(
        w12,
        w23,
        w13,
        [n1, n2, n3],
        |u, x| through[u * n3 + x].clone(),
        &best,
    );
    Ok(TriangleResult { weight: best, picks })
}
