//! General (non-Hermitian) eigendecomposition: Householder reduction to
//! Hessenberg form, shifted QR iteration to Schur form, then triangular
//! back-substitution for eigenvectors.

use super::DenseMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Eigenvalues and unit-norm eigenvector columns of a square matrix.
pub fn eig_general(a: &DenseMatrix) -> Result<(Vec<Complex64>, DenseMatrix)> {
    if !a.is_square() {
        return Err(Error::Input("eig_general needs a square matrix".into()));
    }
    let n = a.rows();
    if n == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    if n == 1 {
        return Ok((vec![a[(0, 0)]], DenseMatrix::identity(1)));
    }
    let (mut h, mut q) = hessenberg(a);
    schur(&mut h, &mut q, 500 * n)?;
    let (values, tri_vecs) = triangular_eigenvectors(&h);
    let mut vecs = q.matmul(&tri_vecs);
    for j in 0..n {
        let norm: f64 = (0..n).map(|i| vecs[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for i in 0..n {
                vecs[(i, j)] /= norm;
            }
        }
    }
    Ok((values, vecs))
}

/// Unitary reduction A = Q H Q^H with H upper Hessenberg.
fn hessenberg(a: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = DenseMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k below the subdiagonal
        let mut x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm <= 1e-300 {
            continue;
        }
        let alpha = if x[0].norm() > 0.0 {
            -(x[0] / x[0].norm()) * xnorm
        } else {
            Complex64::new(-xnorm, 0.0)
        };
        x[0] -= alpha;
        let vnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm <= 1e-300 {
            continue;
        }
        for z in &mut x {
            *z /= vnorm;
        }
        // H <- P H P with P = I - 2 v v^H acting on rows/cols k+1..n
        for j in 0..n {
            let dot: Complex64 = (k + 1..n).map(|i| x[i - k - 1].conj() * h[(i, j)]).sum();
            for i in k + 1..n {
                let t = 2.0 * x[i - k - 1] * dot;
                h[(i, j)] -= t;
            }
        }
        for i in 0..n {
            let dot: Complex64 = (k + 1..n).map(|j| h[(i, j)] * x[j - k - 1]).sum();
            for j in k + 1..n {
                let t = 2.0 * dot * x[j - k - 1].conj();
                h[(i, j)] -= t;
            }
        }
        for i in 0..n {
            let dot: Complex64 = (k + 1..n).map(|j| q[(i, j)] * x[j - k - 1]).sum();
            for j in k + 1..n {
                let t = 2.0 * dot * x[j - k - 1].conj();
                q[(i, j)] -= t;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// Shifted QR iteration driving H to upper triangular form; Q accumulates
/// the similarity so A = Q H Q^H is preserved.
fn schur(h: &mut DenseMatrix, q: &mut DenseMatrix, max_iter: usize) -> Result<()> {
    let n = h.rows();
    let mut hi = n; // active block is 0..hi
    let mut iter = 0;
    while hi > 1 {
        if iter >= max_iter {
            return Err(Error::Numerical(format!(
                "QR iteration did not converge after {} steps",
                iter
            )));
        }
        iter += 1;
        // deflate converged subdiagonal entries
        let mut deflated = false;
        for i in (1..hi).rev() {
            let scale = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
            if h[(i, i - 1)].norm() <= 1e-14 * scale.max(1e-300) {
                h[(i, i - 1)] = Complex64::new(0.0, 0.0);
                if i == hi - 1 {
                    hi -= 1;
                    deflated = true;
                }
            }
        }
        if deflated {
            continue;
        }
        // find the start of the active Hessenberg block
        let mut lo = hi - 1;
        while lo > 0 && h[(lo, lo - 1)].norm() != 0.0 {
            lo -= 1;
        }
        let shift = wilkinson_shift(h, hi);
        // explicit single-shift QR step on the block via Givens rotations
        let mut rotations: Vec<(usize, Complex64, Complex64)> = Vec::new();
        for i in lo..hi {
            h[(i, i)] -= shift;
        }
        for i in lo..hi - 1 {
            let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
            apply_givens_left(h, i, c, s, lo, n);
            rotations.push((i, c, s));
        }
        for &(i, c, s) in &rotations {
            apply_givens_right(h, i, c, s, hi);
            apply_givens_right(q, i, c, s, n);
        }
        for i in lo..hi {
            h[(i, i)] += shift;
        }
    }
    Ok(())
}

/// Eigenvalue of the trailing 2x2 block closest to the corner entry.
fn wilkinson_shift(h: &DenseMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 2, hi - 2)];
    let b = h[(hi - 2, hi - 1)];
    let c = h[(hi - 1, hi - 2)];
    let d = h[(hi - 1, hi - 1)];
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn givens(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm <= 1e-300 {
        return (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    }
    (a / norm, b / norm)
}

/// Rows i, i+1 <- G^H * rows, zeroing the (i+1, i) entry.
fn apply_givens_left(h: &mut DenseMatrix, i: usize, c: Complex64, s: Complex64, from: usize, ncols: usize) {
    for j in from..ncols {
        let x = h[(i, j)];
        let y = h[(i + 1, j)];
        h[(i, j)] = c.conj() * x + s.conj() * y;
        h[(i + 1, j)] = -s * x + c * y;
    }
}

/// Columns i, i+1 <- columns * G.
fn apply_givens_right(h: &mut DenseMatrix, i: usize, c: Complex64, s: Complex64, nrows: usize) {
    for r in 0..nrows {
        let x = h[(r, i)];
        let y = h[(r, i + 1)];
        h[(r, i)] = x * c + y * s;
        h[(r, i + 1)] = -x * s.conj() + y * c.conj();
    }
}

/// Eigenvectors of an upper triangular matrix by back-substitution.
fn triangular_eigenvectors(t: &DenseMatrix) -> (Vec<Complex64>, DenseMatrix) {
    let n = t.rows();
    let scale = t.max_abs().max(1e-300);
    let mut vecs = DenseMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        values.push(lambda);
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut rhs = Complex64::new(0.0, 0.0);
            for l in j + 1..=k {
                rhs += t[(j, l)] * y[l];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() <= 1e-14 * scale {
                // perturb repeated eigenvalues so the solve stays finite
                denom = Complex64::new(1e-14 * scale, 0.0);
            }
            y[j] = -rhs / denom;
        }
        for i in 0..n {
            vecs[(i, k)] = y[i];
        }
    }
    (values, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &DenseMatrix, values: &[Complex64], vecs: &DenseMatrix) -> f64 {
        let n = a.rows();
        let mut worst: f64 = 0.0;
        for k in 0..values.len() {
            let v = vecs.column(k);
            let av = a.matvec(&v);
            let r: f64 = (0..n)
                .map(|i| (av[i] - values[k] * v[i]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst / a.max_abs().max(1e-300)
    }

    #[test]
    fn diagonal_matrix() {
        let mut a = DenseMatrix::zeros(2, 2);
        a[(0, 0)] = Complex64::new(2.0, 0.0);
        a[(1, 1)] = Complex64::new(0.0, 3.0);
        let (mut values, _) = eig_general(&a).unwrap();
        values.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        assert!((values[0] - Complex64::new(0.0, 3.0)).norm() < 1e-12);
        assert!((values[1] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn companion_matrix_roots() {
        // companion of (x - 1)(x - e^i) = x^2 - (1 + e^i)x + e^i
        let ei = Complex64::from_polar(1.0, 1.0);
        let a = DenseMatrix::from_rows(vec![
            vec![Complex64::new(0.0, 0.0), -ei],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0) + ei],
        ])
        .unwrap();
        let (values, vecs) = eig_general(&a).unwrap();
        let mut found_one = false;
        let mut found_ei = false;
        for v in &values {
            if (v - Complex64::new(1.0, 0.0)).norm() < 1e-10 {
                found_one = true;
            }
            if (v - ei).norm() < 1e-10 {
                found_ei = true;
            }
        }
        assert!(found_one && found_ei);
        assert!(residual(&a, &values, &vecs) < 1e-8);
    }

    #[test]
    fn random_residual() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(5);
        for trial in 0..5 {
            let n = 5;
            let a = DenseMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let (values, vecs) = eig_general(&a).unwrap();
            assert!(residual(&a, &values, &vecs) < 1e-8, "trial {}", trial);
            for k in 0..n {
                let norm: f64 = (0..n).map(|i| vecs[(i, k)].norm_sqr()).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn hermitian_input_real_eigenvalues() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(9);
        let n = 4;
        let b = DenseMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let h = b.add(&b.adjoint()).scaled(Complex64::new(0.5, 0.0));
        let (values, _) = eig_general(&h).unwrap();
        for v in values {
            assert!(v.im.abs() < 1e-9);
        }
    }
}
