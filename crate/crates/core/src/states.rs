//! State families: GHZ-like and W pure states blended with white noise.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix, TOLERANCE};

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(1/sqrt(d)) sum_i |i>^{(x) n}`.
pub fn ghz(d: usize, n: usize) -> Result<Vec<Complex64>> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "GHZ state needs d >= 2 and n >= 2, got d = {d}, n = {n}"
        )));
    }
    let dim = d
        .checked_pow(n as u32)
        .ok_or_else(|| Error::InvalidParameter(format!("d^n overflows for d = {d}, n = {n}")))?;
    // |i i ... i> sits at i * (d^{n-1} + ... + d + 1).
    let step: usize = (0..n).map(|k| d.pow(k as u32)).sum();
    let amp = real(1.0 / (d as f64).sqrt());
    let mut psi = vec![real(0.0); dim];
    for i in 0..d {
        psi[i * step] = amp;
    }
    Ok(psi)
}

/// `(|001> + |010> + |100>)/sqrt(3)`.
pub fn w_state() -> Vec<Complex64> {
    let amp = real(1.0 / 3f64.sqrt());
    let mut psi = vec![real(0.0); 8];
    for idx in [0b001, 0b010, 0b100] {
        psi[idx] = amp;
    }
    psi
}

/// `(|000> + cos(theta)|111> + sin(theta)|110>)/sqrt(2)` for `theta` in `[0, pi/2]`.
pub fn psi_theta(theta: f64) -> Result<Vec<Complex64>> {
    if !(0.0..=FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err(Error::InvalidParameter(format!("theta = {theta} outside [0, pi/2]")));
    }
    let amp = 1.0 / 2f64.sqrt();
    let mut psi = vec![real(0.0); 8];
    psi[0b000] = real(amp);
    psi[0b111] = real(amp * theta.cos());
    psi[0b110] = real(amp * theta.sin());
    Ok(psi)
}

/// Separability threshold `1/(d^{n-1} + 1)` of the GHZ-Werner family.
pub fn p_ent(d: usize, n: usize) -> f64 {
    1.0 / ((d as f64).powi(n as i32 - 1) + 1.0)
}

/// Closed interval of mixing weights for which a noisy pure state is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixingRange {
    pub min: f64,
    pub max: f64,
}

impl MixingRange {
    pub fn contains(&self, p: f64) -> bool {
        p >= self.min - TOLERANCE && p <= self.max + TOLERANCE
    }
}

/// `[-1/(D-1), 1]`: the projector eigenvalue `p + (1-p)/D` and the
/// `D-1` fold eigenvalue `(1-p)/D` must both be non-negative.
pub fn positivity_range(total_dim: usize) -> MixingRange {
    MixingRange {
        min: -1.0 / (total_dim as f64 - 1.0),
        max: 1.0,
    }
}

/// `p |psi><psi| + (1-p) I/D` without any range check.
pub fn werner_blend(pure: &[Complex64], p: f64) -> ComplexMatrix {
    let dim = pure.len();
    let mut m = ComplexMatrix::identity(dim).scale((1.0 - p) / dim as f64);
    m.add_scaled(p, &ComplexMatrix::outer(pure));
    m
}

/// Noisy pure state `p |psi><psi| + (1-p) I/D` as a validated density matrix.
pub fn werner_family(pure: &[Complex64], p: f64, dims: Vec<usize>) -> Result<DensityMatrix> {
    let norm = pure.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > TOLERANCE {
        return Err(Error::InvalidParameter(format!(
            "pure state has norm {norm}, expected 1"
        )));
    }
    let range = positivity_range(pure.len());
    if !p.is_finite() || !range.contains(p) {
        return Err(Error::MixingOutOfRange {
            p,
            min: range.min,
            max: range.max,
        });
    }
    DensityMatrix::new(werner_blend(pure, p), dims)
}

/// Which pure state is blended with white noise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateFamily {
    /// GHZ-like state of `n` qudits of dimension `d`.
    GhzWerner { d: usize, n: usize },
    /// Three-qubit `psi_theta`.
    ThetaWerner { theta: f64 },
    /// Three-qubit W state.
    WWerner,
    /// Arbitrary unit-norm amplitudes with explicit factor dimensions.
    CustomPureWerner {
        amplitudes: Vec<(f64, f64)>,
        dims: Vec<usize>,
    },
}

impl StateFamily {
    pub fn werner2() -> Self {
        StateFamily::GhzWerner { d: 2, n: 2 }
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            StateFamily::GhzWerner { d, n } => vec![*d; *n],
            StateFamily::ThetaWerner { .. } | StateFamily::WWerner => vec![2, 2, 2],
            StateFamily::CustomPureWerner { dims, .. } => dims.clone(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().product()
    }

    pub fn pure_state(&self) -> Result<Vec<Complex64>> {
        match self {
            StateFamily::GhzWerner { d, n } => ghz(*d, *n),
            StateFamily::ThetaWerner { theta } => psi_theta(*theta),
            StateFamily::WWerner => Ok(w_state()),
            StateFamily::CustomPureWerner { amplitudes, dims } => {
                let total: usize = dims.iter().product();
                if amplitudes.len() != total {
                    return Err(Error::DimensionMismatch(format!(
                        "{} amplitudes for factor dimensions {dims:?}",
                        amplitudes.len()
                    )));
                }
                Ok(amplitudes.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
            }
        }
    }

    pub fn positivity_range(&self) -> MixingRange {
        positivity_range(self.total_dim())
    }

    /// Builds the noisy state at mixing weight `p`.
    pub fn state(&self, p: f64) -> Result<DensityMatrix> {
        werner_family(&self.pure_state()?, p, self.dims())
    }
}

/// A family together with its mixing weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFamilyParams {
    pub family: StateFamily,
    pub p: f64,
}

impl StateFamilyParams {
    pub fn build(&self) -> Result<DensityMatrix> {
        self.family.state(self.p)
    }
}
