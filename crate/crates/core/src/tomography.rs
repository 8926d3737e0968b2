//! Unitary spin tomograms `w(m | u) = <m| u^dagger rho u |m>` and the
//! tomographic deficit `sum (|w| - w)`.
//!
//! For a Hermitian matrix the deficit is maximized by the eigenbasis, where
//! it reduces to the negativity of the spectrum.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigh, ComplexMatrix, TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tomogram {
    /// Indexed by the flat joint outcome, row-major over the factors.
    pub probabilities: Vec<f64>,
    pub unitary_label: String,
}

impl Tomogram {
    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

fn unitary_deviation(u: &ComplexMatrix) -> f64 {
    u.dagger().matmul(u).max_abs_diff(&ComplexMatrix::identity(u.dim()))
}

/// Diagonal of `u^dagger rho u`.
pub fn spin_tomogram(rho_like: &ComplexMatrix, u: &ComplexMatrix, label: impl Into<String>) -> Result<Tomogram> {
    if rho_like.dim() != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state is {0}x{0}, unitary is {1}x{1}",
            rho_like.dim(),
            u.dim()
        )));
    }
    let deviation = unitary_deviation(u);
    if deviation > TOLERANCE {
        return Err(Error::NotUnitary { deviation });
    }
    let n = u.dim();
    let rotated = u.dagger().matmul(rho_like).matmul(u);
    Ok(Tomogram {
        probabilities: (0..n).map(|i| rotated[(i, i)].re).collect(),
        unitary_label: label.into(),
    })
}

/// Tomogram in the eigenbasis of a Hermitian matrix, i.e. its spectrum.
pub fn eigenbasis_tomogram(rho_like: &ComplexMatrix) -> Result<Tomogram> {
    let eig = eigh(rho_like)?;
    let u = eig.vectors.expect("eigh returns vectors");
    spin_tomogram(rho_like, &u, "eigenbasis")
}

/// `sum (|w| - w)`; zero exactly when every entry is non-negative.
pub fn tomographic_deficit(t: &Tomogram) -> f64 {
    t.probabilities.iter().map(|w| w.abs() - w).sum()
}

/// Joint outcome digits `(m_1, ..., m_n)` of a flat tomogram index.
pub fn outcome_digits(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    digits
}

/// Unitary from Gram-Schmidt on a matrix of standard complex Gaussians.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        // Two passes of modified Gram-Schmidt keep the columns orthonormal to round-off.
        for _ in 0..2 {
            for q in &cols {
                let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= overlap * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}
