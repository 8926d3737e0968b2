//! Jacobi eigensolver against the Sturm-bisection oracle on random Hermitian matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scaling_witness::linalg::{eig_hermitian, eig_hermitian_sturm, eigh, ComplexMatrix};

fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Hermitian matrix with a prescribed, heavily degenerate spectrum.
fn degenerate_hermitian(dim: usize, rng: &mut impl Rng) -> (ComplexMatrix, Vec<f64>) {
    let levels = [-0.5, 0.25, 0.25, 0.25, 1.0];
    let mut spectrum: Vec<f64> = (0..dim).map(|i| levels[i % levels.len()]).collect();
    let u = scaling_witness::tomography::random_unitary(dim, rng);
    let h = u.matmul(&ComplexMatrix::diagonal(&spectrum)).matmul(&u.dagger());
    spectrum.sort_by(f64::total_cmp);
    (h, spectrum)
}

#[test]
fn jacobi_matches_sturm_oracle_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let dims = [2, 3, 4, 8, 9];
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let dim = dims[k % dims.len()];
        let h = random_hermitian(dim, &mut rng);
        let jac = eig_hermitian(&h).unwrap();
        let oracle = eig_hermitian_sturm(&h).unwrap();
        assert_eq!(jac.len(), dim);
        for (a, b) in jac.iter().zip(&oracle) {
            worst = worst.max((a - b).abs());
            assert!((a - b).abs() < 1e-10, "matrix {k} (dim {dim}): {jac:?} vs {oracle:?}");
        }
        let sum: f64 = jac.iter().sum();
        assert!((sum - h.trace().re).abs() < 1e-10);
    }
    eprintln!("max |jacobi - sturm| over 1000 matrices: {worst:.3e}");
}

#[test]
fn degenerate_spectra_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dim in [4, 8, 9, 16] {
        let (h, expected) = degenerate_hermitian(dim, &mut rng);
        let jac = eig_hermitian(&h).unwrap();
        let oracle = eig_hermitian_sturm(&h).unwrap();
        for ((a, b), e) in jac.iter().zip(&oracle).zip(&expected) {
            assert!((a - e).abs() < 1e-10);
            assert!((b - e).abs() < 1e-10);
        }
    }
}

#[test]
fn transpose_preserves_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dim in [2, 4, 9] {
        let h = random_hermitian(dim, &mut rng);
        let a = eig_hermitian(&h).unwrap();
        let b = eig_hermitian(&h.transpose()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn largest_supported_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    let h = random_hermitian(64, &mut rng);
    let e = eigh(&h).unwrap();
    let oracle = eig_hermitian_sturm(&h).unwrap();
    for (a, b) in e.values.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10);
    }
    let v = e.vectors.unwrap();
    assert!(v
        .dagger()
        .matmul(&h)
        .matmul(&v)
        .approx_eq(&ComplexMatrix::diagonal(&e.values), 1e-10));
}
