//! Seeded random instances.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::instance::{GenMode, InstanceFile, InstanceMeta, Problem};
use crate::error::{Error, Result};
use crate::lattice::{combination, norm_pow, CvpInstance, IntVector, SvpInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub p: u32,
    /// Coordinates are drawn from `[−coord_bound, coord_bound]`.
    pub coord_bound: u64,
    pub mode: GenMode,
    pub seed: u64,
}

fn random_vector(rng: &mut ChaCha8Rng, m: usize, bound: u64) -> IntVector {
    let b = bound as i128;
    IntVector::new((0..m).map(|_| BigInt::from(rng.gen_range(-b..=b))).collect())
}

fn check(params: &GenParams) -> Result<()> {
    if params.n == 0 || params.m == 0 {
        return Err(Error::invalid("rank and dimension must be positive"));
    }
    if params.coord_bound == 0 {
        return Err(Error::invalid("coordinate bound must be positive"));
    }
    if let GenMode::PlantedNear { noise } = params.mode {
        if noise > i64::MAX as u64 {
            return Err(Error::invalid("noise bound too large"));
        }
    }
    crate::lattice::check_even_p(params.p)
}

/// Deterministic for a fixed parameter set. `uniform` draws the target
/// independently with threshold 0; `planted-zero` sets `t = Bz*`;
/// `planted-near` sets `t = Bz* + e` with threshold `‖e‖_p^p`.
pub fn generate_instance(params: &GenParams) -> Result<InstanceFile> {
    check(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let basis: Vec<IntVector> = (0..params.n)
        .map(|_| random_vector(&mut rng, params.m, params.coord_bound))
        .collect();
    let (target, threshold, planted) = match params.mode {
        GenMode::Uniform => (random_vector(&mut rng, params.m, params.coord_bound), BigInt::zero(), None),
        GenMode::PlantedZero | GenMode::PlantedNear { .. } => {
            let z: Vec<bool> = (0..params.n).map(|_| rng.gen()).collect();
            let mut t = combination(&basis, &z, params.m)?;
            let mut threshold = BigInt::zero();
            if let GenMode::PlantedNear { noise } = params.mode {
                let e = if noise == 0 {
                    IntVector::zeros(params.m)
                } else {
                    random_vector(&mut rng, params.m, noise)
                };
                threshold = norm_pow(&e, params.p)?;
                t.add_assign(&e);
            }
            (t, threshold, Some(z))
        }
    };
    Ok(InstanceFile {
        problem: Problem::Cvp(CvpInstance::new(basis, target, params.p, threshold)?),
        planted,
        meta: InstanceMeta {
            seed: Some(params.seed),
            coord_bound: Some(params.coord_bound),
            mode: Some(params.mode),
        },
    })
}

/// Random SVP instance with uniform coordinates; `mode` is ignored.
pub fn generate_svp_instance(params: &GenParams, threshold_pow: BigInt) -> Result<InstanceFile> {
    check(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let basis: Vec<IntVector> = (0..params.n)
        .map(|_| random_vector(&mut rng, params.m, params.coord_bound))
        .collect();
    Ok(InstanceFile {
        problem: Problem::Svp(SvpInstance::new(basis, params.p, threshold_pow)?),
        planted: None,
        meta: InstanceMeta {
            seed: Some(params.seed),
            coord_bound: Some(params.coord_bound),
            mode: Some(GenMode::Uniform),
        },
    })
}
