//! Exact integer lattice arithmetic.
//!
//! Everything here works over arbitrary-precision integers. Distances are
//! carried as their `p`-th power so every comparison stays exact, and `p` is
//! always a positive even integer, which makes `|x|^p = x^p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Largest absolute coordinate (zero for the empty vector).
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn add_assign(&mut self, other: &IntVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &IntVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
    }

    pub fn difference(&self, other: &IntVector) -> IntVector {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn negated(&self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn check_even_p(p: u32) -> Result<()> {
    if p == 0 || p % 2 == 1 {
        Err(Error::UnsupportedNorm(p))
    } else {
        Ok(())
    }
}

fn check_dims<'a>(vs: impl IntoIterator<Item = &'a IntVector>) -> Result<usize> {
    let mut it = vs.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::invalid("empty vector sequence"))?;
    let dim = first.dim();
    for v in it {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    Ok(dim)
}

/// `‖v‖_p^p = Σ v[i]^p`.
pub fn norm_pow(v: &IntVector, p: u32) -> Result<BigInt> {
    check_even_p(p)?;
    Ok(v.0.iter().map(|x| num_traits::pow(x.clone(), p as usize)).sum())
}

/// Multi-vector product `Σ_i Π_j v_j[i]`. For two vectors this is the inner product.
pub fn mvp(vs: &[&IntVector]) -> Result<BigInt> {
    let dim = check_dims(vs.iter().copied())?;
    let mut total = BigInt::zero();
    for i in 0..dim {
        let mut prod = BigInt::one();
        for v in vs {
            prod *= &v.0[i];
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}

/// `‖Σ a_i v_i‖_p^p` computed only from the coefficients and the multi-vector
/// products over all ordered index tuples in `[k]^p`.
pub fn norm_pow_via_mvp(coeffs: &[BigInt], vs: &[IntVector], p: u32) -> Result<BigInt> {
    check_even_p(p)?;
    if coeffs.len() != vs.len() {
        return Err(Error::DimensionMismatch {
            expected: coeffs.len(),
            found: vs.len(),
        });
    }
    check_dims(vs)?;
    let k = vs.len();
    let p = p as usize;
    let mut tuple = vec![0usize; p];
    let mut total = BigInt::zero();
    loop {
        let coeff: BigInt = tuple.iter().map(|&i| &coeffs[i]).product();
        if !coeff.is_zero() {
            let args: Vec<&IntVector> = tuple.iter().map(|&i| &vs[i]).collect();
            total += coeff * mvp(&args)?;
        }
        if !advance_tuple(&mut tuple, k) {
            break;
        }
    }
    Ok(total)
}

/// Steps `tuple` through `[radix]^len` in lexicographic order.
/// Returns `false` once it wraps back to all zeros.
pub(crate) fn advance_tuple(tuple: &mut [usize], radix: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < radix {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Number of positions of `tuple` equal to `sentinel`.
pub fn sigma_target_count(tuple: &[usize], sentinel: usize) -> usize {
    tuple.iter().filter(|&&i| i == sentinel).count()
}

fn validate_threshold(threshold_pow: &BigInt) -> Result<()> {
    if threshold_pow.is_negative() {
        Err(Error::invalid("threshold must be non-negative"))
    } else {
        Ok(())
    }
}

/// A (0,1)-CVP instance: is there `z ∈ {0,1}^n` with `‖Bz − t‖_p^p ≤ threshold_pow`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvpInstance {
    basis: Vec<IntVector>,
    target: IntVector,
    p: u32,
    threshold_pow: BigInt,
}

impl CvpInstance {
    pub fn new(
        basis: Vec<IntVector>,
        target: IntVector,
        p: u32,
        threshold_pow: BigInt,
    ) -> Result<Self> {
        check_even_p(p)?;
        validate_threshold(&threshold_pow)?;
        if basis.is_empty() {
            return Err(Error::invalid("basis must contain at least one vector"));
        }
        if target.dim() == 0 {
            return Err(Error::invalid("ambient dimension must be at least 1"));
        }
        check_dims(basis.iter().chain(std::iter::once(&target)))?;
        Ok(CvpInstance {
            basis,
            target,
            p,
            threshold_pow,
        })
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn target(&self) -> &IntVector {
        &self.target
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn threshold_pow(&self) -> &BigInt {
        &self.threshold_pow
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    pub fn with_threshold(mut self, threshold_pow: BigInt) -> Result<Self> {
        validate_threshold(&threshold_pow)?;
        self.threshold_pow = threshold_pow;
        Ok(self)
    }

    /// Largest absolute coordinate over basis and target.
    pub fn max_abs_coord(&self) -> BigInt {
        self.basis
            .iter()
            .chain(std::iter::once(&self.target))
            .map(IntVector::max_abs)
            .max()
            .unwrap_or_default()
    }

    /// `‖Bz − t‖_p^p`.
    pub fn distance_pow(&self, z: &[bool]) -> Result<BigInt> {
        let v = combination(&self.basis, z, self.dim())?;
        norm_pow(&v.difference(&self.target), self.p)
    }

    pub fn is_yes(&self, dist_pow: &BigInt) -> bool {
        dist_pow <= &self.threshold_pow
    }
}

/// A (0,1)-SVP instance: is there a nonzero `z ∈ {0,1}^n` with `‖Bz‖_p^p ≤ threshold_pow`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvpInstance {
    basis: Vec<IntVector>,
    p: u32,
    threshold_pow: BigInt,
}

impl SvpInstance {
    pub fn new(basis: Vec<IntVector>, p: u32, threshold_pow: BigInt) -> Result<Self> {
        check_even_p(p)?;
        validate_threshold(&threshold_pow)?;
        if basis.is_empty() {
            return Err(Error::invalid("basis must contain at least one vector"));
        }
        let dim = check_dims(&basis)?;
        if dim == 0 {
            return Err(Error::invalid("ambient dimension must be at least 1"));
        }
        Ok(SvpInstance {
            basis,
            p,
            threshold_pow,
        })
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn threshold_pow(&self) -> &BigInt {
        &self.threshold_pow
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.basis[0].dim()
    }

    /// `‖Bz‖_p^p`.
    pub fn length_pow(&self, z: &[bool]) -> Result<BigInt> {
        norm_pow(&combination(&self.basis, z, self.dim())?, self.p)
    }

    pub fn is_yes(&self, dist_pow: &BigInt) -> bool {
        dist_pow <= &self.threshold_pow
    }

    /// The CVP instance with the same basis and target zero.
    pub fn as_cvp_with_zero_target(&self) -> CvpInstance {
        CvpInstance {
            basis: self.basis.clone(),
            target: IntVector::zeros(self.dim()),
            p: self.p,
            threshold_pow: self.threshold_pow.clone(),
        }
    }
}

/// `Σ_{i : z_i} b_i`.
pub fn combination(basis: &[IntVector], z: &[bool], dim: usize) -> Result<IntVector> {
    if z.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: z.len(),
        });
    }
    let mut acc = IntVector::zeros(dim);
    for (b, _) in basis.iter().zip(z).filter(|(_, &bit)| bit) {
        acc.add_assign(b);
    }
    Ok(acc)
}

/// Extra evidence attached to a [`SolveReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// One vertex index per part of the reduced (hyper)graph.
    Clique { picks: Vec<usize> },
    /// A full Max-SAT assignment, including auxiliary variables.
    Assignment { bits: Vec<bool> },
    /// Per-call minima of the SVP-to-CVP wrapper, indexed by the fixed coordinate.
    SvpCalls {
        #[serde(with = "crate::decimal::vec")]
        per_call: Vec<BigInt>,
    },
}

/// The answer of any solver path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Optimal coefficient vector.
    pub z: Vec<bool>,
    /// `‖Bz − t‖_p^p` (or `‖Bz‖_p^p` for SVP).
    #[serde(with = "crate::decimal")]
    pub dist_pow: BigInt,
    pub p: u32,
    pub method: String,
    /// Scale factor of the reduction the answer went through, if any.
    #[serde(default, with = "crate::decimal::option")]
    pub scale: Option<BigInt>,
    #[serde(default)]
    pub witness: Option<Witness>,
}

impl SolveReport {
    pub fn new(z: Vec<bool>, dist_pow: BigInt, p: u32, method: impl Into<String>) -> Self {
        SolveReport {
            z,
            dist_pow,
            p,
            method: method.into(),
            scale: None,
            witness: None,
        }
    }

    pub fn with_scale(mut self, scale: BigInt) -> Self {
        self.scale = Some(scale);
        self
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }
}
