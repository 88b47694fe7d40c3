//! Hermitian eigendecomposition via two-sided Jacobi rotations. Also covers
//! real symmetric matrices (real entries are a special case).

use super::DenseMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending, real) and orthonormal eigenvector columns of a
/// Hermitian matrix: `A = V diag(w) V^H`.
pub fn eig_hermitian(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    if !a.is_square() {
        return Err(Error::Input("eig_hermitian needs a square matrix".into()));
    }
    if !a.is_hermitian(1e-8 * a.max_abs().max(1.0)) {
        return Err(Error::Input("matrix is not Hermitian".into()));
    }
    let n = a.rows();
    let mut m = a.hermitianized();
    let mut v = DenseMatrix::identity(n);
    let scale = m.frobenius_norm().max(1e-300);

    let mut sweeps = 0;
    loop {
        let off: f64 = {
            let mut s = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    s += m[(i, j)].norm_sqr();
                }
            }
            (2.0 * s).sqrt()
        };
        if off <= 1e-13 * scale {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Hermitian Jacobi did not converge after {} sweeps",
                sweeps
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= 1e-15 * scale {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // phase making the off-diagonal entry real, then a real rotation
                let w = (apq / r).conj();
                let tau = (aqq - app) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // columns: (p, q) <- (p, q) * G with G = [[c, s],[-s w, c w]]
                for i in 0..n {
                    let xp = m[(i, p)];
                    let xq = m[(i, q)] * w;
                    m[(i, p)] = c * xp - s * xq;
                    m[(i, q)] = s * xp + c * xq;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)] * w;
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
                // rows: G^H applied on the left
                for j in 0..n {
                    let xp = m[(p, j)];
                    let xq = m[(q, j)] * w.conj();
                    m[(p, j)] = c * xp - s * xq;
                    m[(q, j)] = s * xp + c * xq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let vecs = DenseMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    fn random_hermitian(n: usize, seed: u64) -> DenseMatrix {
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
        let b = DenseMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        b.add(&b.adjoint()).scaled(Complex64::new(0.5, 0.0))
    }

    #[test]
    fn reconstructs_hermitian_input() {
        for seed in 0..5 {
            let a = random_hermitian(6, seed);
            let (w, v) = eig_hermitian(&a).unwrap();
            let d = DenseMatrix::from_fn(6, 6, |i, j| {
                if i == j {
                    Complex64::new(w[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let back = v.matmul(&d).matmul(&v.adjoint());
            assert!(back.sub(&a).frobenius_norm() < 1e-9 * a.frobenius_norm().max(1.0));
            let vtv = v.adjoint().matmul(&v);
            assert!(vtv.sub(&DenseMatrix::identity(6)).frobenius_norm() < 1e-9);
            for pair in w.windows(2) {
                assert!(pair[0] <= pair[1] + 1e-12);
            }
        }
    }

    #[test]
    fn diagonal_passthrough() {
        let mut a = DenseMatrix::zeros(3, 3);
        a[(0, 0)] = Complex64::new(3.0, 0.0);
        a[(1, 1)] = Complex64::new(-1.0, 0.0);
        a[(2, 2)] = Complex64::new(0.5, 0.0);
        let (w, _) = eig_hermitian(&a).unwrap();
        assert_eq!(w, vec![-1.0, 0.5, 3.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = DenseMatrix::from_fn(2, 2, |i, j| Complex64::new((i + 2 * j) as f64, 1.0));
        assert!(eig_hermitian(&a).is_err());
    }
}
