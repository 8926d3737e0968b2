//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation is the product of a diagonal phase, which makes the pivot
//! `a_pq` real, and a real plane rotation that annihilates it. Sweeps visit
//! every `p < q` pair in row order until the off-diagonal Frobenius norm
//! drops below [`OFF_DIAGONAL_TOLERANCE`].

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, TOLERANCE};
use crate::error::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm, relative to `max(1, ||A||_F)`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
/// Hard cap on the number of full sweeps.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues and (optionally) eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: Option<ComplexMatrix>,
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<Vec<f64>> {
    jacobi(h, false).map(|e| e.values)
}

/// Ascending eigenvalues together with a unitary matrix of eigenvectors.
pub fn eigh(h: &ComplexMatrix) -> Result<Eigen> {
    jacobi(h, true)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn jacobi(h: &ComplexMatrix, want_vectors: bool) -> Result<Eigen> {
    let deviation = h.hermitian_deviation();
    if deviation > TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.dim();
    // Work on the exactly Hermitian part.
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));

    let threshold = OFF_DIAGONAL_TOLERANCE * a.frobenius_norm().max(1.0);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off < threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|v| {
        let mut sorted = ComplexMatrix::zeros(n);
        for (col, &src) in order.iter().enumerate() {
            for row in 0..n {
                sorted[(row, col)] = v[(row, src)];
            }
        }
        sorted
    });
    Ok(Eigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) on (p, q), followed by the real rotation [[c, s], [-s, c]].
    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    // A <- J^H A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * j_pp + vkq * j_qp;
            v[(k, q)] = vkp * j_pq + vkq * j_qq;
        }
    }
}
