//! Independent reference implementations used as test oracles.
//!
//! Everything here works on plain `i128` vectors and direct enumeration, sharing
//! no code with the library beyond the types used to hand instances over.

#![allow(dead_code)]

use cvp01::{CvpInstance, IntVector, SvpInstance};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Vector = Vec<i128>;

pub fn to_vector(v: &IntVector) -> Vector {
    v.entries().iter().map(|x| x.to_i128().expect("small test entries")).collect()
}

pub fn to_int_vector(v: &[i128]) -> IntVector {
    IntVector::new(v.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn big(x: i128) -> BigInt {
    BigInt::from(x)
}

pub fn mvp(vs: &[&[i128]]) -> i128 {
    (0..vs[0].len()).map(|i| vs.iter().map(|v| v[i]).product::<i128>()).sum()
}

pub fn norm_pow(v: &[i128], p: u32) -> i128 {
    v.iter().map(|x| x.pow(p)).sum()
}

pub fn lin_comb(coeffs: &[i128], vs: &[Vector]) -> Vector {
    let mut out = vec![0; vs[0].len()];
    for (a, v) in coeffs.iter().zip(vs) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += a * x;
        }
    }
    out
}

/// `Bz − t` with `z` given as bits.
pub fn residual(basis: &[Vector], t: &[i128], z: &[bool]) -> Vector {
    let mut out: Vector = t.iter().map(|x| -x).collect();
    for (b, _) in basis.iter().zip(z).filter(|(_, &bit)| bit) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += x;
        }
    }
    out
}

pub fn bits(rank: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| rank >> (n - 1 - i) & 1 == 1).collect()
}

/// Minimum distance and the lexicographically smallest minimizer.
pub fn cvp(basis: &[Vector], t: &[i128], p: u32) -> (i128, Vec<bool>) {
    let n = basis.len();
    let mut best = (i128::MAX, vec![]);
    for rank in 0..1u64 << n {
        let z = bits(rank, n);
        let d = norm_pow(&residual(basis, t, &z), p);
        if d < best.0 {
            best = (d, z);
        }
    }
    best
}

/// Number of minimizers, for uniqueness checks.
pub fn cvp_minimizers(basis: &[Vector], t: &[i128], p: u32) -> usize {
    let n = basis.len();
    let dists: Vec<i128> = (0..1u64 << n).map(|r| norm_pow(&residual(basis, t, &bits(r, n)), p)).collect();
    let min = *dists.iter().min().unwrap();
    dists.iter().filter(|&&d| d == min).count()
}

pub fn svp(basis: &[Vector], p: u32) -> (i128, Vec<bool>) {
    let n = basis.len();
    let zero = vec![0; basis[0].len()];
    let mut best = (i128::MAX, vec![]);
    for rank in 1..1u64 << n {
        let z = bits(rank, n);
        let d = norm_pow(&residual(basis, &zero, &z), p);
        if d < best.0 {
            best = (d, z);
        }
    }
    best
}

pub fn svp_minimizers(basis: &[Vector], p: u32) -> usize {
    let n = basis.len();
    let zero = vec![0; basis[0].len()];
    let lens: Vec<i128> = (1..1u64 << n).map(|r| norm_pow(&residual(basis, &zero, &bits(r, n)), p)).collect();
    let min = *lens.iter().min().unwrap();
    lens.iter().filter(|&&d| d == min).count()
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

pub fn binom(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Advances `tuple` through `[radix]^len` in lexicographic order.
pub fn next_tuple(tuple: &mut [usize], radix: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < radix {
            return true;
        }
        *slot = 0;
    }
    false
}

/// `Σ_{X ∈ [len]^p} (−1)^{#X hits sentinel} · mvp(X)` over the given vectors.
pub fn signed_tuple_sum(vs: &[Vector], sentinel: usize, p: usize) -> i128 {
    let mut tuple = vec![0usize; p];
    let mut total = 0;
    loop {
        let args: Vec<&[i128]> = tuple.iter().map(|&i| vs[i].as_slice()).collect();
        let sigma = tuple.iter().filter(|&&i| i == sentinel).count();
        let sign = if sigma % 2 == 0 { 1 } else { -1 };
        total += sign * mvp(&args);
        if !next_tuple(&mut tuple, vs.len()) {
            return total;
        }
    }
}

/// `lcm_s C(k−s, p−s)` for `s = 0..p`.
pub fn hyper_scale(k: usize, p: usize) -> u128 {
    (0..=p).fold(1, |acc, s| lcm(acc, binom((k - s) as u128, (p - s) as u128)))
}

/// Scaled weight of one hyperedge: `Λ · Σ_{X ∈ S^p} (−1)^σ mvp(X) / C(k−σ′, p−σ′)`
/// with `S` = the `p` picked vectors followed by the target.
pub fn hyperedge_weight(picks: &[&[i128]], t: &[i128], k: usize) -> i128 {
    let p = picks.len();
    let scale = hyper_scale(k, p);
    let mut s: Vec<&[i128]> = picks.to_vec();
    s.push(t);
    let mut tuple = vec![0usize; p];
    let mut total = 0i128;
    loop {
        let sigma = tuple.iter().filter(|&&i| i == p).count();
        let mut distinct: Vec<usize> = tuple.iter().copied().filter(|&i| i != p).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let beta = binom((k - distinct.len()) as u128, (p - distinct.len()) as u128);
        let args: Vec<&[i128]> = tuple.iter().map(|&i| s[i]).collect();
        let sign = if sigma % 2 == 0 { 1 } else { -1 };
        total += sign * (scale / beta) as i128 * mvp(&args);
        if !next_tuple(&mut tuple, p + 1) {
            return total;
        }
    }
}

/// `lcm{2^j − 1 : j = 1..p}`.
pub fn maxsat_scale(p: u32) -> i128 {
    (1..=p).fold(1u128, |acc, j| lcm(acc, (1u128 << j) - 1)) as i128
}

/// `(2^p − 2)·max(1, max |mvp|) + 1` over `[len]^p`.
pub fn maxsat_d(vs: &[Vector], p: usize) -> i128 {
    let mut tuple = vec![0usize; p];
    let mut m = 1;
    loop {
        let args: Vec<&[i128]> = tuple.iter().map(|&i| vs[i].as_slice()).collect();
        m = m.max(mvp(&args).abs());
        if !next_tuple(&mut tuple, vs.len()) {
            break;
        }
    }
    ((1 << p) - 2) * m + 1
}

pub fn random_vector(rng: &mut ChaCha8Rng, m: usize, bound: i128) -> Vector {
    (0..m).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub struct RandomCvp {
    pub basis: Vec<Vector>,
    pub target: Vector,
    pub inst: CvpInstance,
}

pub fn random_cvp(rng: &mut ChaCha8Rng, n: usize, m: usize, p: u32, bound: i128) -> RandomCvp {
    let basis: Vec<Vector> = (0..n).map(|_| random_vector(rng, m, bound)).collect();
    let target = random_vector(rng, m, bound);
    let threshold = rng.gen_range(0..=(m as i128) * bound.pow(p));
    let inst = CvpInstance::new(
        basis.iter().map(|b| to_int_vector(b)).collect(),
        to_int_vector(&target),
        p,
        big(threshold),
    )
    .unwrap();
    RandomCvp { basis, target, inst }
}

pub struct RandomSvp {
    pub basis: Vec<Vector>,
    pub inst: SvpInstance,
}

pub fn random_svp(rng: &mut ChaCha8Rng, n: usize, m: usize, p: u32, bound: i128) -> RandomSvp {
    let basis: Vec<Vector> = (0..n).map(|_| random_vector(rng, m, bound)).collect();
    let threshold = rng.gen_range(0..=(m as i128) * bound.pow(p));
    let inst = SvpInstance::new(basis.iter().map(|b| to_int_vector(b)).collect(), p, big(threshold)).unwrap();
    RandomSvp { basis, inst }
}
