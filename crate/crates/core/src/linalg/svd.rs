//! Economy singular value decomposition via one-sided Jacobi rotations,
//! plus the ratio-rule numerical rank.

use super::DenseMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_SWEEPS: usize = 100;
const ORTH_TOL: f64 = 1e-14;

pub struct Svd {
    /// m x k, orthonormal columns (k = min(m, n)).
    pub u: DenseMatrix,
    /// Singular values, descending.
    pub s: Vec<f64>,
    /// n x k, orthonormal columns.
    pub v: DenseMatrix,
}

/// `A = U diag(S) V^H` with S descending. Transposes internally when the
/// input is wide so the Jacobi iteration always works on tall matrices.
pub fn svd(a: &DenseMatrix) -> Result<Svd> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::Input("empty matrix in svd".into()));
    }
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint())?;
        return Ok(Svd {
            u: t.v,
            s: t.s,
            v: t.u,
        });
    }
    let m = a.rows();
    let n = a.cols();
    // column-major working copies; invariant A * V = B throughout
    let mut b: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    let mut sweeps = 0;
    loop {
        if sweeps >= MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "one-sided Jacobi did not converge after {} sweeps",
                sweeps
            )));
        }
        sweeps += 1;
        let mut rotated = false;
        // columns this small relative to the matrix carry only rotation
        // roundoff; orthogonalizing them against each other never converges
        let fro2: f64 = b.iter().flatten().map(|z| z.norm_sqr()).sum();
        let dead = fro2 * 1e-28;
        for p in 0..n {
            for q in p + 1..n {
                let app: f64 = b[p].iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = b[q].iter().map(|z| z.norm_sqr()).sum();
                if app <= dead || aqq <= dead {
                    continue;
                }
                let apq: Complex64 = b[p].iter().zip(&b[q]).map(|(x, y)| x.conj() * y).sum();
                let r = apq.norm();
                if r <= ORTH_TOL * (app * aqq).sqrt() || r == 0.0 {
                    continue;
                }
                rotated = true;
                // absorb the phase so the pair behaves like a real 2x2 problem
                let w = (apq / r).conj();
                let tau = (aqq - app) / (2.0 * r);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut b, p, q, c, s, w);
                rotate_pair(&mut v, p, q, c, s, w);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms: Vec<f64> = b.iter().map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    let b: Vec<Vec<Complex64>> = order.iter().map(|&j| b[j].clone()).collect();
    let v: Vec<Vec<Complex64>> = order.iter().map(|&j| v[j].clone()).collect();
    norms = order.iter().map(|_| 0.0).collect();
    for (j, col) in b.iter().enumerate() {
        norms[j] = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }

    // normalize to U, completing an orthonormal basis over null columns
    let tiny = norms[0].max(1.0) * 1e-306;
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        if norms[j] > tiny {
            u_cols.push(b[j].iter().map(|&z| z / norms[j]).collect());
        } else {
            norms[j] = 0.0;
            u_cols.push(orthonormal_completion(&u_cols, m));
        }
    }

    let u = DenseMatrix::from_fn(m, n, |i, j| u_cols[j][i]);
    let v = DenseMatrix::from_fn(n, n, |i, j| v[j][i]);
    Ok(Svd { u, s: norms, v })
}

fn rotate_pair(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, w: Complex64) {
    let len = cols[p].len();
    for i in 0..len {
        let xp = cols[p][i];
        let xq = cols[q][i] * w;
        cols[p][i] = c * xp - s * xq;
        cols[q][i] = s * xp + c * xq;
    }
}

/// A unit vector orthogonal to all given orthonormal columns.
fn orthonormal_completion(existing: &[Vec<Complex64>], m: usize) -> Vec<Complex64> {
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for k in 0..m {
        let mut cand = vec![Complex64::new(0.0, 0.0); m];
        cand[k] = Complex64::new(1.0, 0.0);
        for col in existing {
            let proj: Complex64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
            for i in 0..m {
                cand[i] -= proj * col[i];
            }
        }
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if best.as_ref().map_or(true, |(n, _)| norm > *n) {
            best = Some((norm, cand));
        }
        if norm > 0.5 {
            break;
        }
    }
    let (norm, mut cand) = best.unwrap();
    for z in &mut cand {
        *z /= norm;
    }
    cand
}

/// Smallest k >= 1 with S[k]/S[k-1] < epsilon; the full length if no ratio
/// drops; 0 if the leading value is below the absolute floor 1e-12.
pub fn numerical_rank(s: &[f64], epsilon: f64) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::Input("empty singular value list".into()));
    }
    if !(0.0 < epsilon && epsilon < 1.0) {
        return Err(Error::Input("epsilon must lie in (0, 1)".into()));
    }
    if s.windows(2).any(|w| w[0] < w[1]) || s.iter().any(|&x| x < 0.0) {
        return Err(Error::Input(
            "singular values must be nonnegative and descending".into(),
        ));
    }
    if s[0] <= 1e-12 {
        return Ok(0);
    }
    for k in 1..s.len() {
        if s[k] == 0.0 || s[k] / s[k - 1] < epsilon {
            return Ok(k);
        }
    }
    Ok(s.len())
}
