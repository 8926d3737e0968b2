//! Dense complex linear algebra: matrices, tensor structure, and two
//! independent Hermitian eigensolvers.

mod jacobi;
mod matrix;
mod sturm;

pub use jacobi::{eig_hermitian, eigh, Eigen, MAX_SWEEPS, OFF_DIAGONAL_TOLERANCE};
pub use matrix::{kron, kron_vec, ComplexMatrix, TOLERANCE};
pub use sturm::{eig_hermitian_sturm, tridiagonalize, Tridiagonal};

use crate::error::{Error, Result};

/// Selects which eigensolver backs a spectral computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    /// Cyclic complex Jacobi rotations.
    #[default]
    Jacobi,
    /// Householder tridiagonalization plus Sturm-sequence bisection.
    SturmBisection,
}

impl Solver {
    pub fn eigenvalues(self, h: &ComplexMatrix) -> Result<Vec<f64>> {
        match self {
            Solver::Jacobi => eig_hermitian(h),
            Solver::SturmBisection => eig_hermitian_sturm(h),
        }
    }
}

/// A matrix together with its tensor-factor dimensions.
///
/// [`DensityMatrix::new`] validates a physical state (Hermitian, unit trace,
/// positive semidefinite). [`DensityMatrix::relaxed`] skips the positivity
/// check so that outputs of positive but not completely positive maps can be
/// carried with their tensor structure.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let rho = Self::relaxed(matrix, dims)?;
        let min_eigenvalue = eig_hermitian(&rho.matrix)?[0];
        if min_eigenvalue < -TOLERANCE {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(rho)
    }

    pub fn relaxed(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(matrix.dim(), &dims)?;
        let deviation = matrix.hermitian_deviation();
        if deviation > TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TOLERANCE || trace.im.abs() > TOLERANCE {
            return Err(Error::NotNormalized { trace: trace.re });
        }
        Ok(Self { matrix, dims })
    }

    /// `|psi><psi|` for a unit-norm state vector.
    pub fn from_pure(psi: &[num_complex::Complex64], dims: Vec<usize>) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

fn check_dims(dim: usize, dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "factor dimensions {dims:?} must be a non-empty list of positive integers"
        )));
    }
    let product: usize = dims.iter().product();
    if product != dim {
        return Err(Error::DimensionMismatch(format!(
            "factor dimensions {dims:?} multiply to {product}, matrix side is {dim}"
        )));
    }
    Ok(())
}

/// Row-major strides of a tensor index; the first factor is most significant.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Transposes the index pairs of every factor flagged in `mask`.
///
/// `R_{a alpha, b beta} -> R_{a beta, b alpha}` for each selected factor.
pub fn partial_transpose_mask(matrix: &ComplexMatrix, dims: &[usize], mask: &[bool]) -> Result<ComplexMatrix> {
    check_dims(matrix.dim(), dims)?;
    if mask.len() != dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "mask has {} entries for {} factors",
            mask.len(),
            dims.len()
        )));
    }
    let n = matrix.dim();
    let strides = strides(dims);
    let selected: Vec<(usize, usize)> = dims
        .iter()
        .zip(&strides)
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|((&d, &s), _)| (d, s))
        .collect();
    if selected.is_empty() {
        return Ok(matrix.clone());
    }
    let mut out = ComplexMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            let (mut r2, mut c2) = (r, c);
            for &(d, s) in &selected {
                let rd = (r / s) % d;
                let cd = (c / s) % d;
                r2 = r2 - rd * s + cd * s;
                c2 = c2 - cd * s + rd * s;
            }
            out[(r2, c2)] = matrix[(r, c)];
        }
    }
    Ok(out)
}

/// Partial transpose on a single factor.
pub fn partial_transpose(rho: &DensityMatrix, factor: usize) -> Result<ComplexMatrix> {
    let k = rho.factors();
    if factor >= k {
        return Err(Error::FactorOutOfRange { factor, factors: k });
    }
    let mut mask = vec![false; k];
    mask[factor] = true;
    partial_transpose_mask(&rho.matrix, &rho.dims, &mask)
}
