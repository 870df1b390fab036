//! Ground-truth objects: the discretized Gaussian target and three independent
//! descriptions of what the preparation circuit should output (product-state
//! amplitudes, a literal DFT, and a per-qubit closed form for the probabilities).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::{check_sim_qubits, qubits_for_len};
use crate::synthesis::rotation_angle;

/// Largest input accepted by [`dft_oracle`]; the direct sum is quadratic in the length.
pub const MAX_DFT_LEN: usize = 1 << 16;

/// Zero-mean Gaussian `exp(-lambda·x²)` restricted to `[domain_lo, domain_hi)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    lambda: f64,
    domain_lo: f64,
    domain_hi: f64,
}

impl GaussianSpec {
    pub fn new(lambda: f64, domain_lo: f64, domain_hi: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 || lambda.is_infinite() {
            return Err(Error::parameter(
                "lambda",
                "finite and non-negative",
                lambda,
            ));
        }
        if !domain_lo.is_finite() || !domain_hi.is_finite() || domain_lo >= domain_hi {
            return Err(Error::Domain {
                lo: domain_lo,
                hi: domain_hi,
            });
        }
        Ok(Self {
            lambda,
            domain_lo,
            domain_hi,
        })
    }

    pub fn with_lambda(lambda: f64) -> Result<Self> {
        Self::new(lambda, -2.0, 2.0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.domain_lo, self.domain_hi)
    }

    /// `1/√(2λ)`; undefined for the flat profile.
    pub fn sigma(&self) -> Option<f64> {
        (self.lambda > 0.0).then(|| 1.0 / (2.0 * self.lambda).sqrt())
    }
}

impl Default for GaussianSpec {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            domain_lo: -2.0,
            domain_hi: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub num_qubits: usize,
    pub spacing: f64,
    pub points: Vec<f64>,
}

/// `x_k = lo + k·Δ` with `Δ = (hi - lo)/2^n`; the upper endpoint is excluded.
pub fn grid_points(n: usize, spec: &GaussianSpec) -> Result<Grid> {
    check_sim_qubits(n)?;
    let len = 1usize << n;
    let (lo, hi) = spec.domain();
    let spacing = (hi - lo) / len as f64;
    let points = (0..len).map(|k| lo + k as f64 * spacing).collect();
    Ok(Grid {
        num_qubits: n,
        spacing,
        points,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TargetDistribution {
    pub probabilities: Vec<f64>,
    pub amplitudes: Vec<f64>,
}

/// Normalized `exp(-λ x_k²)` on the grid. The largest exponent is subtracted
/// before exponentiating so sharp profiles do not underflow.
pub fn target_distribution(spec: &GaussianSpec, n: usize) -> Result<TargetDistribution> {
    let grid = grid_points(n, spec)?;
    let exponents: Vec<f64> = grid.points.iter().map(|x| -spec.lambda() * x * x).collect();
    let peak = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exponents.iter().map(|e| (e - peak).exp()).collect();
    let total: f64 = weights.iter().sum();
    let probabilities: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let amplitudes = probabilities.iter().map(|p| p.sqrt()).collect();
    Ok(TargetDistribution {
        probabilities,
        amplitudes,
    })
}

/// Amplitudes of the product state left by the `Ry` layer:
/// `α_x = Π_j cos(θ_j/2)^{1-x_j} · sin(θ_j/2)^{x_j}`.
pub fn product_amplitudes_oracle(n: usize, beta: f64) -> Result<Vec<f64>> {
    check_sim_qubits(n)?;
    let factors = (0..n)
        .map(|j| rotation_angle(j, beta).map(|t| (t / 2.0).sin_cos()))
        .collect::<Result<Vec<_>>>()?;
    let mut alpha = vec![1.0f64];
    // Doubling per qubit keeps bit j at significance 2^j.
    for &(sin, cos) in &factors {
        let mut next = Vec::with_capacity(alpha.len() * 2);
        next.extend(alpha.iter().map(|a| a * cos));
        next.extend(alpha.iter().map(|a| a * sin));
        alpha = next;
    }
    Ok(alpha)
}

/// `β_k = N^{-1/2} Σ_x α_x e^{2πi xk/N}` by the literal double sum.
pub fn dft_oracle(alpha: &[Complex64]) -> Result<Vec<Complex64>> {
    let len = alpha.len();
    if len > MAX_DFT_LEN {
        return Err(Error::NotPowerOfTwo(len));
    }
    qubits_for_len(len)?;
    let twiddles: Vec<Complex64> = (0..len)
        .map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / len as f64))
        .collect();
    let scale = 1.0 / (len as f64).sqrt();
    let mask = len - 1;
    Ok((0..len)
        .map(|k| {
            let sum: Complex64 = alpha
                .iter()
                .enumerate()
                .map(|(x, a)| a * twiddles[(x * k) & mask])
                .sum();
            sum * scale
        })
        .collect())
}

/// `|β_m|² = 2^{-n} Π_j [1 + sin θ_j · cos(2π m 2^j / 2^n)]`, optionally with the
/// index XOR-ed by `2^{n-1}` to account for the final `X` on the top qubit.
pub fn closed_form_probabilities(n: usize, beta: f64, msb_flipped: bool) -> Result<Vec<f64>> {
    check_sim_qubits(n)?;
    let len = 1usize << n;
    let mask = len - 1;
    let sines = (0..n)
        .map(|j| rotation_angle(j, beta).map(f64::sin))
        .collect::<Result<Vec<_>>>()?;
    let scale = 1.0 / len as f64;
    let unflipped = |m: usize| -> f64 {
        sines
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let phase = 2.0 * PI * ((m << j) & mask) as f64 / len as f64;
                1.0 + s * phase.cos()
            })
            .product::<f64>()
            * scale
    };
    let flip = if msb_flipped { len >> 1 } else { 0 };
    Ok((0..len).map(|m| unflipped(m ^ flip)).collect())
}
