//! Round-trip accuracy experiment.
//!
//! Each trial draws a random band-limited spectrum, synthesizes it on the
//! grid with [`inverse`], analyses the samples again with [`forward`] and
//! records the largest and the mean coefficient error.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::distributions::Uniform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{BandLimit, GlGrid, So3Spectrum};
use crate::transforms::{forward, inverse};
use crate::wigner::build_delta_table;
use crate::{Error, Result};

/// Random spectrum with real and imaginary parts i.i.d. uniform on `[-1, 1]`.
///
/// ChaCha8 seeded with `seed`, so the output depends only on `(L, seed)`.
pub fn random_spectrum(band_limit: BandLimit, seed: u64) -> So3Spectrum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new_inclusive(-1.0, 1.0);
    let data = (0..band_limit.dimension())
        .map(|_| Complex64::new(rng.sample(dist), rng.sample(dist)))
        .collect();
    So3Spectrum::from_vec(band_limit, data).expect("length matches d_L")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionErrors {
    pub e_max: f64,
    pub e_mean: f64,
}

/// Largest and mean absolute coefficient difference; the mean divides by `d_L`.
pub fn reconstruction_errors(
    truth: &So3Spectrum,
    reconstructed: &So3Spectrum,
) -> Result<ReconstructionErrors> {
    if truth.band_limit() != reconstructed.band_limit() {
        return Err(Error::BandLimitMismatch {
            expected: truth.band_limit().get(),
            found: reconstructed.band_limit().get(),
        });
    }
    let mut e_max = 0.0f64;
    let mut sum = 0.0;
    for (a, b) in truth.as_slice().iter().zip(reconstructed.as_slice()) {
        let e = (a - b).norm();
        e_max = e_max.max(e);
        sum += e;
    }
    Ok(ReconstructionErrors {
        e_max,
        e_mean: sum / truth.band_limit().dimension() as f64,
    })
}

/// Mean and median of a set of stage timings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timing {
    pub mean: Duration,
    pub median: Duration,
}

impl Timing {
    pub fn from_samples(samples: &[Duration]) -> Self {
        if samples.is_empty() {
            return Self {
                mean: Duration::ZERO,
                median: Duration::ZERO,
            };
        }
        let mut sorted = samples.to_vec();
        sorted.sort();
        let mid = sorted.len() / 2;
        let median = if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            (sorted[mid - 1] + sorted[mid]) / 2
        };
        let total: Duration = samples.iter().sum();
        Self {
            mean: total / samples.len() as u32,
            median,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub band_limit: BandLimit,
    pub trials: usize,
    pub seed: u64,
    /// Average over trials of the per-trial maximum error.
    pub e_max: f64,
    /// Average over trials of the per-trial mean error.
    pub e_mean: f64,
    pub t_forward: Timing,
    pub t_inverse: Timing,
}

/// Seed used for trial `k` of an experiment seeded with `seed`.
pub fn trial_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add(k as u64)
}

/// Runs `trials` inverse/forward round trips at band limit `L`.
pub fn roundtrip_experiment(band_limit: BandLimit, trials: usize, seed: u64) -> Result<ErrorReport> {
    if trials == 0 {
        return Err(Error::Domain {
            name: "trials",
            value: 0.0,
            domain: ">= 1",
        });
    }
    let table = build_delta_table(band_limit);
    let grid = GlGrid::new(band_limit)?;

    let mut e_max = 0.0;
    let mut e_mean = 0.0;
    let mut t_fwd = Vec::with_capacity(trials);
    let mut t_inv = Vec::with_capacity(trials);
    for k in 0..trials {
        let truth = random_spectrum(band_limit, trial_seed(seed, k));

        let start = Instant::now();
        let signal = inverse(&truth, &table, &grid)?;
        t_inv.push(start.elapsed());

        let start = Instant::now();
        let reconstructed = forward(&signal, &table, &grid)?;
        t_fwd.push(start.elapsed());

        let errors = reconstruction_errors(&truth, &reconstructed)?;
        e_max += errors.e_max;
        e_mean += errors.e_mean;
    }

    Ok(ErrorReport {
        band_limit,
        trials,
        seed,
        e_max: e_max / trials as f64,
        e_mean: e_mean / trials as f64,
        t_forward: Timing::from_samples(&t_fwd),
        t_inverse: Timing::from_samples(&t_inv),
    })
}
