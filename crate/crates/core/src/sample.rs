//! Seeded random instances. Everything takes an explicit RNG so runs are
//! reproducible; [`rng`] is the canonical way to get one from a seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::pointconfig::PointConfiguration;

/// Default magnitude bound for random rational integers.
pub const RATIONAL_BOUND: i64 = 9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `GF(p)`, or an integer in `[-RATIONAL_BOUND, RATIONAL_BOUND]` over ℚ.
pub fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field.modulus() {
        Some(p) => field.residue(rng.gen_range(0..p)),
        None => field.from_i64(rng.gen_range(-RATIONAL_BOUND..=RATIONAL_BOUND)),
    }
}

pub fn random_vector<R: Rng>(field: FieldSpec, n: usize, rng: &mut R) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(field, rng)).collect()
}

/// Integer entries in `[-bound, bound]`, reduced into the field.
pub fn small_int_vector<R: Rng>(field: FieldSpec, n: usize, bound: i64, rng: &mut R) -> Vec<Scalar> {
    (0..n).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect()
}

/// `gamma` distinct random points of `ℙʳ`. Panics if `ℙʳ(F_p)` has fewer
/// than `gamma` points.
pub fn random_configuration<R: Rng>(field: FieldSpec, r: usize, gamma: usize, rng: &mut R) -> PointConfiguration {
    if let Some(p) = field.modulus() {
        let count = (0..=r as u32).try_fold(0u128, |acc, k| acc.checked_add((p as u128).checked_pow(k)?));
        assert!(
            count.is_none_or(|c| c >= gamma as u128),
            "P^{r} over GF({p}) has fewer than {gamma} points"
        );
    }
    loop {
        let rows = (0..gamma).map(|_| random_vector(field, r + 1, rng)).collect();
        if let Ok(cfg) = PointConfiguration::new(field, r, rows) {
            return cfg;
        }
    }
}

/// Random points in linearly general position, resampling up to `tries` times.
pub fn random_lgp_configuration<R: Rng>(
    field: FieldSpec,
    r: usize,
    gamma: usize,
    rng: &mut R,
    tries: usize,
) -> Result<PointConfiguration> {
    for _ in 0..tries {
        let cfg = random_configuration(field, r, gamma, rng);
        if cfg.is_linearly_general_position() {
            return Ok(cfg);
        }
    }
    Err(Error::RetryBudgetExceeded(tries))
}

pub fn random_invertible<R: Rng>(field: FieldSpec, n: usize, rng: &mut R) -> ExactMatrix {
    loop {
        let rows = (0..n).map(|_| random_vector(field, n, rng)).collect();
        let m = ExactMatrix::from_rows(field, rows).expect("square");
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// Random nonzero scalars.
pub fn random_units<R: Rng>(field: FieldSpec, n: usize, rng: &mut R) -> Vec<Scalar> {
    (0..n)
        .map(|_| loop {
            let s = random_scalar(field, rng);
            if !s.is_zero() {
                break s;
            }
        })
        .collect()
}
