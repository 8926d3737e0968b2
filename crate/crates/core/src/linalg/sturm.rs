//! Independent eigenvalue oracle: Householder reduction to a real symmetric
//! tridiagonal matrix, then bisection on the Sturm sequence of its
//! characteristic polynomial,
//!
//! ```text
//! p_0(x) = 1,  p_1(x) = d_0 - x,
//! p_k(x) = (d_{k-1} - x) p_{k-1}(x) - e_{k-2}^2 p_{k-2}(x)
//! ```
//!
//! evaluated in ratio form `q_k = p_k / p_{k-1}`. The number of negative
//! ratios equals the number of eigenvalues below `x`. Shares no code path
//! with the Jacobi solver beyond the matrix type.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, TOLERANCE};
use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 256;

/// Real symmetric tridiagonal matrix: `diag.len() == n`, `off.len() == n - 1`.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Unitarily reduces a Hermitian matrix to a real tridiagonal one with the same spectrum.
pub fn tridiagonalize(h: &ComplexMatrix) -> Result<Tridiagonal> {
    let deviation = h.hermitian_deviation();
    if deviation > TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.dim();
    let mut a = h.clone();
    for k in 0..n.saturating_sub(2) {
        let tail: Vec<Complex64> = ((k + 1)..n).map(|i| a[(i, k)]).collect();
        let norm = tail.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let below = tail[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if below == 0.0 || norm == 0.0 {
            continue;
        }
        let phase = if tail[0].norm() > 0.0 {
            tail[0] / tail[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut u = tail;
        u[0] += phase * norm;
        let u_norm_sqr: f64 = u.iter().map(|z| z.norm_sqr()).sum();

        // H = I - 2 u u^H / (u^H u) on indices k+1..n.
        let mut reflector = ComplexMatrix::identity(n);
        for (r, ur) in u.iter().enumerate() {
            for (c, uc) in u.iter().enumerate() {
                reflector[(k + 1 + r, k + 1 + c)] -= ur * uc.conj() * (2.0 / u_norm_sqr);
            }
        }
        a = reflector.matmul(&a).matmul(&reflector);
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    // Moduli suffice: a diagonal phase similarity makes the off-diagonal real.
    let off = (1..n).map(|i| a[(i, i - 1)].norm()).collect();
    Ok(Tridiagonal { diag, off })
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE * self.off.iter().map(|e| e * e).fold(1.0f64, f64::max);
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in self.diag.iter().enumerate() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / q
            };
            q = d - x - coupling;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = 1e-12 * (hi - lo).abs().max(1.0);
        (lo - pad, hi + pad)
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn kth_eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.kth_eigenvalue(k)).collect()
    }
}

/// Ascending eigenvalues of a Hermitian matrix via tridiagonal Sturm bisection.
pub fn eig_hermitian_sturm(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(tridiagonalize(h)?.eigenvalues())
}
