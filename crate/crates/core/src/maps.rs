//! The scaling transform `T_lambda = (1+lambda)/2 * id + (1-lambda)/2 * transpose`,
//! its factor-wise application to multipartite states, Choi matrices, and
//! the anisotropic Pauli contraction of the qubit Bloch ball.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, partial_transpose_mask, strides, ComplexMatrix, DensityMatrix, TOLERANCE};

/// One scaling parameter per tensor factor; `1` leaves the factor untouched,
/// `-1` transposes it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialScalingSpec {
    lambdas: Vec<f64>,
}

impl PartialScalingSpec {
    /// Values outside `[-1, 1]` are accepted and reported by [`Self::out_of_range`].
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::InvalidParameter("scaling spec has no factors".into()));
        }
        if let Some(bad) = lambdas.iter().find(|l| !l.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "scaling parameter {bad} is not finite"
            )));
        }
        Ok(Self { lambdas })
    }

    pub fn identity(factors: usize) -> Self {
        Self {
            lambdas: vec![1.0; factors],
        }
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// True when some parameter lies outside `[-1, 1]`.
    pub fn out_of_range(&self) -> bool {
        self.lambdas.iter().any(|l| !(-1.0..=1.0).contains(l))
    }

    /// Lexicographic order on the parameter list, used for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.lambdas.iter().zip(&other.lambdas) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.lambdas.len().cmp(&other.lambdas.len())
    }

    /// The hypercube vertex that dominates this spec for detection: `-1`
    /// wherever `lambda_i < 1`, `1` elsewhere.
    pub fn vertex(&self) -> Self {
        Self {
            lambdas: self.lambdas.iter().map(|&l| if l < 1.0 { -1.0 } else { 1.0 }).collect(),
        }
    }
}

/// Anisotropic Bloch-ball contraction `sigma_k -> mu_k sigma_k` for a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitAnisotropy {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
}

impl QubitAnisotropy {
    pub fn new(mu1: f64, mu2: f64, mu3: f64) -> Result<Self> {
        for (name, mu) in [("mu1", mu1), ("mu2", mu2), ("mu3", mu3)] {
            if !(-1.0..=1.0).contains(&mu) {
                return Err(Error::InvalidParameter(format!("{name} = {mu} outside [-1, 1]")));
            }
        }
        Ok(Self { mu1, mu2, mu3 })
    }

    pub const IDENTITY: Self = Self {
        mu1: 1.0,
        mu2: 1.0,
        mu3: 1.0,
    };

    /// `sigma_y -> -sigma_y`, which is transposition in the computational basis.
    pub const TRANSPOSE: Self = Self {
        mu1: 1.0,
        mu2: -1.0,
        mu3: 1.0,
    };
}

/// A single-factor linear map, described by data rather than a closure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalMap {
    Scaling { lambda: f64 },
    Anisotropic { mu: QubitAnisotropy },
}

impl LocalMap {
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        match *self {
            LocalMap::Scaling { lambda } => Ok(apply_scaling(a, lambda)),
            LocalMap::Anisotropic { mu } => anisotropic_pauli_map(a, mu),
        }
    }
}

/// `((1+lambda)/2) A + ((1-lambda)/2) A^T`.
pub fn apply_scaling(a: &ComplexMatrix, lambda: f64) -> ComplexMatrix {
    let keep = 0.5 * (1.0 + lambda);
    let swap = 0.5 * (1.0 - lambda);
    let n = a.dim();
    let mut out = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(i, j)] * keep + a[(j, i)] * swap;
        }
    }
    out
}

/// Applies `T_{lambda_i}` to every factor `i` of `rho`.
///
/// Expands the tensor product of convex sums into `2^k` partial transposes
/// weighted by `prod_i c_i` with `c_i in {(1+lambda_i)/2, (1-lambda_i)/2}`;
/// terms with a zero weight are skipped.
pub fn partial_scaling(rho: &DensityMatrix, spec: &PartialScalingSpec) -> Result<ComplexMatrix> {
    partial_scaling_matrix(rho.matrix(), rho.dims(), spec)
}

/// [`partial_scaling`] on a bare matrix with explicit factor dimensions.
pub fn partial_scaling_matrix(
    matrix: &ComplexMatrix,
    dims: &[usize],
    spec: &PartialScalingSpec,
) -> Result<ComplexMatrix> {
    let k = dims.len();
    if spec.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "scaling spec has {} parameters for {} factors",
            spec.len(),
            k
        )));
    }
    if k >= usize::BITS as usize {
        return Err(Error::DimensionMismatch(format!("{k} factors is too many")));
    }
    let mut out = ComplexMatrix::zeros(matrix.dim());
    let mut mask = vec![false; k];
    for subset in 0usize..(1 << k) {
        let mut weight = 1.0;
        for (i, &lambda) in spec.lambdas.iter().enumerate() {
            mask[i] = subset & (1 << i) != 0;
            weight *= if mask[i] {
                0.5 * (1.0 - lambda)
            } else {
                0.5 * (1.0 + lambda)
            };
        }
        if weight == 0.0 {
            continue;
        }
        let term = partial_transpose_mask(matrix, dims, &mask)?;
        out.add_scaled(weight, &term);
    }
    Ok(out)
}

/// Applies a single-factor linear map to factor `factor` of a multipartite matrix.
pub fn apply_local_map(matrix: &ComplexMatrix, dims: &[usize], factor: usize, map: &LocalMap) -> Result<ComplexMatrix> {
    if factor >= dims.len() {
        return Err(Error::FactorOutOfRange {
            factor,
            factors: dims.len(),
        });
    }
    let n: usize = dims.iter().product();
    if n != matrix.dim() {
        return Err(Error::DimensionMismatch(format!(
            "factor dimensions {dims:?} do not match matrix side {}",
            matrix.dim()
        )));
    }
    let d = dims[factor];
    let stride = strides(dims)[factor];
    // Indices whose digit for `factor` is zero.
    let env: Vec<usize> = (0..n).filter(|&r| (r / stride).is_multiple_of(d)).collect();
    let mut out = ComplexMatrix::zeros(n);
    let mut block = ComplexMatrix::zeros(d);
    for &re in &env {
        for &ce in &env {
            for i in 0..d {
                for j in 0..d {
                    block[(i, j)] = matrix[(re + i * stride, ce + j * stride)];
                }
            }
            let mapped = map.apply(&block)?;
            for i in 0..d {
                for j in 0..d {
                    out[(re + i * stride, ce + j * stride)] = mapped[(i, j)];
                }
            }
        }
    }
    Ok(out)
}

/// The `d^2 x d^2` block matrix whose `(i, j)` block is `map(|i><j|)`.
pub fn choi_matrix(d: usize, map: &LocalMap) -> Result<ComplexMatrix> {
    let n = d * d;
    let mut choi = ComplexMatrix::zeros(n);
    let mut unit = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            unit[(i, j)] = Complex64::new(1.0, 0.0);
            let image = map.apply(&unit)?;
            unit[(i, j)] = Complex64::new(0.0, 0.0);
            for k in 0..d {
                for l in 0..d {
                    choi[(i * d + k, j * d + l)] = image[(k, l)];
                }
            }
        }
    }
    Ok(choi)
}

/// Complete-positivity verdict from a Choi matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpVerdict {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
}

pub fn is_completely_positive(choi: &ComplexMatrix) -> Result<CpVerdict> {
    let min_eigenvalue = eig_hermitian(choi)?[0];
    Ok(CpVerdict {
        completely_positive: min_eigenvalue >= -TOLERANCE,
        min_eigenvalue,
    })
}

/// Maps the Bloch vector `(x, y, z)` to `(mu1 x, mu2 y, mu3 z)`.
///
/// Defined linearly on every 2x2 matrix through its Pauli expansion, so it
/// can also act on the matrix units of a Choi construction.
pub fn anisotropic_pauli_map(rho_qubit: &ComplexMatrix, mu: QubitAnisotropy) -> Result<ComplexMatrix> {
    if rho_qubit.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "anisotropic Pauli map acts on 2x2 matrices, got {0}x{0}",
            rho_qubit.dim()
        )));
    }
    let (a00, a01, a10, a11) = (
        rho_qubit[(0, 0)],
        rho_qubit[(0, 1)],
        rho_qubit[(1, 0)],
        rho_qubit[(1, 1)],
    );
    let i = Complex64::new(0.0, 1.0);
    // A = c0 I + cx X + cy Y + cz Z
    let c0 = (a00 + a11) * 0.5;
    let cz = (a00 - a11) * 0.5;
    let cx = (a01 + a10) * 0.5;
    let cy = i * (a01 - a10) * 0.5;
    let (cx, cy, cz) = (cx * mu.mu1, cy * mu.mu2, cz * mu.mu3);
    ComplexMatrix::from_rows(&[[c0 + cz, cx - i * cy], [cx + i * cy, c0 - cz]])
}

/// Applies [`anisotropic_pauli_map`] to one qubit factor of `rho`.
pub fn partial_anisotropic(rho: &DensityMatrix, factor: usize, mu: QubitAnisotropy) -> Result<ComplexMatrix> {
    let dims = rho.dims();
    if factor >= dims.len() {
        return Err(Error::FactorOutOfRange {
            factor,
            factors: dims.len(),
        });
    }
    if dims[factor] != 2 {
        return Err(Error::NotQubit {
            factor,
            dim: dims[factor],
        });
    }
    apply_local_map(rho.matrix(), dims, factor, &LocalMap::Anisotropic { mu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, partial_transpose};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            [c(0.1, 0.0), c(0.2, 0.3), c(-0.4, 0.1)],
            [c(0.5, -0.7), c(0.6, 0.2), c(0.0, 0.9)],
            [c(1.1, 0.0), c(-0.3, -0.3), c(0.3, 0.0)],
        ])
        .unwrap()
    }

    fn qubit(x: f64, y: f64, z: f64) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[[c(1.0 + z, 0.0), c(x, -y)], [c(x, y), c(1.0 - z, 0.0)]])
            .unwrap()
            .scale(0.5)
    }

    #[test]
    fn scaling_endpoints() {
        let a = sample();
        assert_eq!(apply_scaling(&a, 1.0), a);
        assert_eq!(apply_scaling(&a, -1.0), a.transpose());
    }

    #[test]
    fn scaling_contracts_bloch_y() {
        let (x, y, z) = (0.3, -0.5, 0.2);
        for lambda in [-1.0, -0.4, 0.0, 0.7, 1.0] {
            let out = apply_scaling(&qubit(x, y, z), lambda);
            assert!(out.approx_eq(&qubit(x, lambda * y, z), 1e-15));
            assert!((out[(0, 1)] - c(x, -lambda * y) * 0.5).norm() < 1e-15);
        }
    }

    #[test]
    fn choi_of_qubit_scaling_matches_closed_form() {
        for lambda in [-1.0, -0.3, 0.0, 0.5, 1.0] {
            let plus = 0.5 * (1.0 + lambda);
            let minus = 0.5 * (1.0 - lambda);
            let expected = ComplexMatrix::from_real_rows(&[
                [1.0, 0.0, 0.0, plus],
                [0.0, 0.0, minus, 0.0],
                [0.0, minus, 0.0, 0.0],
                [plus, 0.0, 0.0, 1.0],
            ])
            .unwrap();
            let choi = choi_matrix(2, &LocalMap::Scaling { lambda }).unwrap();
            assert_eq!(choi, expected, "lambda = {lambda}");
        }
    }

    #[test]
    fn choi_spectra() {
        let swap = choi_matrix(2, &LocalMap::Scaling { lambda: -1.0 }).unwrap();
        let vals = eig_hermitian(&swap).unwrap();
        for (a, b) in vals.iter().zip([-1.0, 1.0, 1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        // B_0 splits into [[1, 1/2], [1/2, 1]] and [[0, 1/2], [1/2, 0]].
        let b0 = choi_matrix(2, &LocalMap::Scaling { lambda: 0.0 }).unwrap();
        let v = is_completely_positive(&b0).unwrap();
        assert!(!v.completely_positive);
        assert!((v.min_eigenvalue + 0.5).abs() < 1e-12);
        assert!(
            is_completely_positive(&choi_matrix(2, &LocalMap::Scaling { lambda: 1.0 }).unwrap())
                .unwrap()
                .completely_positive
        );
    }

    #[test]
    fn anisotropic_identity_and_transpose() {
        let rho = qubit(0.1, 0.6, -0.3);
        assert!(anisotropic_pauli_map(&rho, QubitAnisotropy::IDENTITY)
            .unwrap()
            .approx_eq(&rho, 1e-15));
        assert!(anisotropic_pauli_map(&rho, QubitAnisotropy::TRANSPOSE)
            .unwrap()
            .approx_eq(&rho.transpose(), 1e-15));
    }

    #[test]
    fn anisotropic_inversion_is_positive_not_cp() {
        let mu = QubitAnisotropy::new(-1.0, -1.0, -1.0).unwrap();
        let ket0 = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let out = anisotropic_pauli_map(&ket0, mu).unwrap();
        assert!(out.approx_eq(&ComplexMatrix::diagonal(&[0.0, 1.0]), 1e-15));
        let choi = choi_matrix(2, &LocalMap::Anisotropic { mu }).unwrap();
        assert!(!is_completely_positive(&choi).unwrap().completely_positive);
        let center = choi_matrix(
            2,
            &LocalMap::Anisotropic {
                mu: QubitAnisotropy::new(0.0, 0.0, 0.0).unwrap(),
            },
        )
        .unwrap();
        assert!(is_completely_positive(&center).unwrap().completely_positive);
    }

    #[test]
    fn anisotropic_rejects_wrong_dimension() {
        assert!(anisotropic_pauli_map(&ComplexMatrix::identity(3), QubitAnisotropy::IDENTITY).is_err());
        assert!(QubitAnisotropy::new(1.2, 0.0, 0.0).is_err());
    }

    fn werner(p: f64) -> DensityMatrix {
        let mut m = ComplexMatrix::identity(4).scale((1.0 - p) / 4.0);
        m[(0, 0)] += c(p / 2.0, 0.0);
        m[(3, 3)] += c(p / 2.0, 0.0);
        m[(0, 3)] += c(p / 2.0, 0.0);
        m[(3, 0)] += c(p / 2.0, 0.0);
        DensityMatrix::new(m, vec![2, 2]).unwrap()
    }

    #[test]
    fn werner_scaled_matrix_entries() {
        let (p, lambda) = (0.7, 0.3);
        let out = partial_scaling(&werner(p), &PartialScalingSpec::new(vec![1.0, lambda]).unwrap()).unwrap();
        let corner = p / 2.0 * (1.0 + lambda) / 2.0;
        let inner = p / 2.0 * (1.0 - lambda) / 2.0;
        assert!((out[(0, 3)].re - corner).abs() < 1e-15);
        assert!((out[(3, 0)].re - corner).abs() < 1e-15);
        assert!((out[(1, 2)].re - inner).abs() < 1e-15);
        assert!((out[(0, 0)].re - (1.0 + p) / 4.0).abs() < 1e-15);
        assert!((out[(1, 1)].re - (1.0 - p) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn partial_scaling_identity_spec() {
        let rho = werner(0.4);
        assert_eq!(
            partial_scaling(&rho, &PartialScalingSpec::identity(2)).unwrap(),
            *rho.matrix()
        );
    }

    #[test]
    fn partial_scaling_length_mismatch() {
        let rho = werner(0.4);
        assert!(matches!(
            partial_scaling(&rho, &PartialScalingSpec::new(vec![1.0]).unwrap()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn partial_anisotropic_transpose_equals_pt() {
        let rho = werner(0.9);
        let a = partial_anisotropic(&rho, 1, QubitAnisotropy::TRANSPOSE).unwrap();
        assert!(a.approx_eq(&partial_transpose(&rho, 1).unwrap(), 1e-15));
        assert!(partial_anisotropic(&rho, 1, QubitAnisotropy::IDENTITY)
            .unwrap()
            .approx_eq(rho.matrix(), 1e-15));
        assert!(matches!(
            partial_anisotropic(&rho, 2, QubitAnisotropy::IDENTITY),
            Err(Error::FactorOutOfRange { .. })
        ));
    }

    #[test]
    fn partial_anisotropic_rejects_qutrit() {
        let rho = DensityMatrix::new(ComplexMatrix::identity(6).scale(1.0 / 6.0), vec![2, 3]).unwrap();
        assert!(matches!(
            partial_anisotropic(&rho, 1, QubitAnisotropy::IDENTITY),
            Err(Error::NotQubit { factor: 1, dim: 3 })
        ));
    }

    #[test]
    fn full_depolarization_of_bell_factor() {
        // Brute force: with mu = 0 only the identity Pauli component of factor 2 survives,
        // so w_1 = (II + XX - YY + ZZ)/4 maps to II/4.
        let rho = werner(1.0);
        let out = partial_anisotropic(&rho, 1, QubitAnisotropy::new(0.0, 0.0, 0.0).unwrap()).unwrap();
        assert!(out.approx_eq(&ComplexMatrix::identity(4).scale(0.25), 1e-15));
        let vals = eig_hermitian(&out).unwrap();
        assert!((vals[0] - 0.25).abs() < 1e-14);
    }

    #[test]
    fn spec_flags_and_order() {
        let s = PartialScalingSpec::new(vec![1.0, 1.5]).unwrap();
        assert!(s.out_of_range());
        assert!(!PartialScalingSpec::new(vec![-1.0, 0.3]).unwrap().out_of_range());
        assert!(PartialScalingSpec::new(vec![f64::NAN]).is_err());
        let a = PartialScalingSpec::new(vec![1.0, -1.0, -1.0]).unwrap();
        let b = PartialScalingSpec::new(vec![1.0, -1.0, 1.0]).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(
            PartialScalingSpec::new(vec![1.0, 0.2, 1.0]).unwrap().vertex().lambdas(),
            &[1.0, -1.0, 1.0]
        );
    }
}
