use std::ops::Add;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// An integer extended with `+∞`, the absent-edge value of the (min, +) semiring.
///
/// Variant order makes every finite value compare below `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    Finite(T),
    Infinity,
}

impl<T> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }
}

impl<T: Add<Output = T> + Clone> Extended<T> {
    fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.clone() + b.clone()),
            _ => Extended::Infinity,
        }
    }
}

/// Dense row-major matrix over the extended integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Extended<T>>,
}

impl<T: Clone> WeightMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Extended<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(WeightMatrix { rows, cols, data })
    }

    pub fn from_finite(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        Self::new(rows, cols, data.into_iter().map(Extended::Finite).collect())
    }

    pub fn infinite(rows: usize, cols: usize) -> Self {
        WeightMatrix {
            rows,
            cols,
            data: vec![Extended::Infinity; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Extended<T> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Extended<T>) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Extended<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

const BLOCK: usize = 64;

/// Distance product `C[i][j] = min_l A[i][l] + B[l][j]`.
///
/// Rows are processed in parallel; within a row the output is split into
/// column tiles of `BLOCK` entries that accumulate over the full inner dimension.
pub fn min_plus_product<T>(a: &WeightMatrix<T>, b: &WeightMatrix<T>) -> Result<WeightMatrix<T>>
where
    T: Clone + Ord + Add<Output = T> + Send + Sync,
{
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            found: b.rows,
        });
    }
    let (n, m) = (a.rows, b.cols);
    let mut data = vec![Extended::Infinity; n * m];
    if m > 0 {
        data.par_chunks_mut(m).enumerate().for_each(|(i, out)| {
            let arow = a.row(i);
            // one output tile at a time, so it stays in cache across the whole inner loop
            for j0 in (0..m).step_by(BLOCK) {
                let j1 = (j0 + BLOCK).min(m);
                let tile = &mut out[j0..j1];
                for (l, x) in arow.iter().enumerate() {
                    if x.is_infinite() {
                        continue;
                    }
                    for (slot, y) in tile.iter_mut().zip(&b.row(l)[j0..j1]) {
                        let s = x.plus(y);
                        if s < *slot {
                            *slot = s;
                        }
                    }
                }
            }
        });
    }
    Ok(WeightMatrix {
        rows: n,
        cols: m,
        data,
    })
}
