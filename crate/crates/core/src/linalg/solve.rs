//! Linear solves: LU with partial pivoting for square systems, SVD-based
//! least squares for overdetermined ones, and Cholesky for Hermitian
//! positive definite matrices.

use super::svd::svd;
use super::DenseMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

pub struct Solved {
    pub x: Vec<Complex64>,
    /// Rough condition estimate when it exceeds 1e12, else None.
    pub condition_warning: Option<f64>,
}

/// Solves A x = b: exactly for square A, in the least-squares sense for
/// tall A. Ill-conditioning is reported, exact singularity is an error.
pub fn solve(a: &DenseMatrix, b: &[Complex64]) -> Result<Solved> {
    if a.rows() != b.len() {
        return Err(Error::Input("right-hand side length mismatch".into()));
    }
    if a.rows() < a.cols() {
        return Err(Error::Input("underdetermined system".into()));
    }
    if a.is_square() {
        let lu = LuFactor::new(a)?;
        let cond = lu.condition_estimate();
        Ok(Solved {
            x: lu.solve(b),
            condition_warning: if cond > 1e12 { Some(cond) } else { None },
        })
    } else {
        lstsq(a, b)
    }
}

/// Minimum-norm least-squares solution through the SVD pseudoinverse.
pub fn lstsq(a: &DenseMatrix, b: &[Complex64]) -> Result<Solved> {
    let f = svd(a)?;
    let k = f.s.len();
    let cutoff = f.s[0].max(1e-300) * 1e-13;
    let uhb: Vec<Complex64> = (0..k)
        .map(|j| {
            (0..a.rows())
                .map(|i| f.u[(i, j)].conj() * b[i])
                .sum::<Complex64>()
        })
        .collect();
    let mut x = vec![Complex64::new(0.0, 0.0); a.cols()];
    let mut smin = f64::INFINITY;
    for j in 0..k {
        if f.s[j] > cutoff {
            smin = smin.min(f.s[j]);
            let coef = uhb[j] / f.s[j];
            for i in 0..a.cols() {
                x[i] += coef * f.v[(i, j)];
            }
        }
    }
    let cond = if smin.is_finite() { f.s[0] / smin } else { f64::INFINITY };
    Ok(Solved {
        x,
        condition_warning: if cond > 1e12 { Some(cond) } else { None },
    })
}

struct LuFactor {
    lu: DenseMatrix,
    piv: Vec<usize>,
}

impl LuFactor {
    fn new(a: &DenseMatrix) -> Result<Self> {
        let n = a.rows();
        let mut lu = a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let scale = a.max_abs().max(1e-300);
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= 1e-300 * scale {
                return Err(Error::Solve("matrix is singular to working precision".into()));
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                piv.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let t = factor * lu[(k, j)];
                    lu[(i, j)] -= t;
                }
            }
        }
        Ok(LuFactor { lu, piv })
    }

    fn condition_estimate(&self) -> f64 {
        let n = self.lu.rows();
        let mut dmax: f64 = 0.0;
        let mut dmin = f64::INFINITY;
        for i in 0..n {
            let d = self.lu[(i, i)].norm();
            dmax = dmax.max(d);
            dmin = dmin.min(d);
        }
        dmax / dmin.max(1e-300)
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.rows();
        let mut x: Vec<Complex64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        x
    }
}

/// Lower-triangular Cholesky factor of a Hermitian positive definite matrix.
pub struct CholeskyFactor {
    l: DenseMatrix,
}

pub fn cholesky(a: &DenseMatrix) -> Result<CholeskyFactor> {
    if !a.is_square() {
        return Err(Error::Input("cholesky needs a square matrix".into()));
    }
    let n = a.rows();
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)].conj();
            }
            if i == j {
                if sum.re <= 0.0 {
                    return Err(Error::Numerical(format!(
                        "cholesky pivot {} is not positive ({:.3e})",
                        i, sum.re
                    )));
                }
                l[(i, i)] = Complex64::new(sum.re.sqrt(), 0.0);
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Ok(CholeskyFactor { l })
}

impl CholeskyFactor {
    pub fn l(&self) -> &DenseMatrix {
        &self.l
    }

    pub fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.l.rows();
        let mut y = b.to_vec();
        for i in 0..n {
            let mut acc = y[i];
            for j in 0..i {
                acc -= self.l[(i, j)] * y[j];
            }
            y[i] = acc / self.l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in i + 1..n {
                acc -= self.l[(j, i)].conj() * y[j];
            }
            y[i] = acc / self.l[(i, i)];
        }
        y
    }

    /// A^{-1} via forward/backward substitution on identity columns.
    pub fn inverse(&self) -> DenseMatrix {
        let n = self.l.rows();
        let mut inv = DenseMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            let col = self.solve_vec(&e);
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}
