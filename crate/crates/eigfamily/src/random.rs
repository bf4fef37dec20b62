use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{HermitianFamily, MatrixFamily};

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-1.0..1.0)
}

/// Reproducible degree-`degree` Hermitian polynomial family; coefficients
/// are Hermitian by construction (real diagonal, conjugate off-diagonals).
pub fn random_hermitian_family(seed: u64, n: usize, degree: usize) -> HermitianFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..=degree {
        let mut h = DMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = Complex64::new(unit(&mut rng), 0.0);
            for j in i + 1..n {
                let z = Complex64::new(unit(&mut rng), unit(&mut rng));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        coeffs.push(h);
    }
    HermitianFamily::Polynomial { coeffs }
}

/// Reproducible rectangular polynomial family with O(1) complex entries.
pub fn random_matrix_family(seed: u64, rows: usize, cols: usize, degree: usize) -> MatrixFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..=degree)
        .map(|_| {
            DMatrix::from_fn(rows, cols, |_, _| {
                Complex64::new(unit(&mut rng), unit(&mut rng))
            })
        })
        .collect();
    MatrixFamily::Polynomial { coeffs }
}

/// Reproducible square complex matrix, entries uniform in the unit box.
pub fn random_complex_matrix(seed: u64, n: usize) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(n, n, |_, _| Complex64::new(unit(&mut rng), unit(&mut rng)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_is_bitwise_identical() {
        let a = random_hermitian_family(9, 4, 2);
        let b = random_hermitian_family(9, 4, 2);
        match (&a, &b) {
            (
                HermitianFamily::Polynomial { coeffs: ca },
                HermitianFamily::Polynomial { coeffs: cb },
            ) => assert_eq!(ca, cb),
            _ => unreachable!(),
        }
    }

    #[test]
    fn sampled_values_are_hermitian() {
        let fam = random_hermitian_family(3, 8, 3);
        for i in 0..20 {
            let t = -1.0 + 0.1 * i as f64;
            assert!(fam.hermitian_residual(t).unwrap() <= 1e-13);
        }
    }

    #[test]
    fn generic_family_has_simple_eigenvalues() {
        let fam = random_hermitian_family(11, 5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let t: f64 = rng.gen_range(-2.0..2.0);
            let ev = fam.eigenvalues(t).unwrap();
            for w in ev.windows(2) {
                assert!(w[1] - w[0] > 0.0, "degenerate eigenvalue at t = {t}");
            }
        }
    }
}
