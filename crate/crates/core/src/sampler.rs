//! Noiseless shot sampling from a statevector.
//!
//! Shots are drawn with ChaCha20 (`rand_chacha::ChaCha20Rng::seed_from_u64`), whose
//! output stream is platform independent, and mapped to basis indices by inverse
//! CDF lookup.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::StateVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    pub counts: Vec<u64>,
    pub shots: u64,
    pub seed: u64,
}

impl ShotHistogram {
    pub fn frequencies(&self) -> Vec<f64> {
        let shots = self.shots as f64;
        self.counts.iter().map(|&c| c as f64 / shots).collect()
    }

    /// Add-one smoothed frequencies `(c + 1) / (shots + bins)`.
    pub fn laplace_frequencies(&self) -> Vec<f64> {
        let denom = self.shots as f64 + self.counts.len() as f64;
        self.counts
            .iter()
            .map(|&c| (c as f64 + 1.0) / denom)
            .collect()
    }
}

pub fn sample_counts(state: &StateVector, shots: u64, seed: u64) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let cdf: Vec<f64> = state
        .amplitudes()
        .iter()
        .scan(0.0, |acc, a| {
            *acc += a.norm_sqr();
            Some(*acc)
        })
        .collect();
    let total = *cdf.last().expect("statevector is never empty");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; cdf.len()];
    for _ in 0..shots {
        let u = rng.gen::<f64>() * total;
        // first bin whose cumulative mass exceeds u; empty bins are never selected
        let index = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
        counts[index] += 1;
    }
    Ok(ShotHistogram {
        counts,
        shots,
        seed,
    })
}

/// `½ Σ |p_k - q_k|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}
