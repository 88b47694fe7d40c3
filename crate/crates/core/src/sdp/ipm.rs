//! Primal-dual interior-point solver for block-diagonal Hermitian
//! semidefinite programs, Mehrotra predictor-corrector with the HKM search
//! direction and an infeasible start.
//!
//! Problem pair, for Hermitian data F_0, F_i and real c:
//!   minimize   c'u          s.t.  S = F_0 + sum_i u_i F_i >= 0
//!   maximize  -tr(F_0 X)    s.t.  tr(F_i X) = c_i,  X >= 0

use crate::error::{Error, Result};
use crate::linalg::{cholesky, eig_hermitian, DenseMatrix};
use num_complex::Complex64;

/// Sparse Hermitian block-diagonal matrix; each block lists its explicit
/// entries (both triangles, diagonal real).
#[derive(Debug, Clone)]
pub struct SparseBlockMat {
    pub blocks: Vec<(usize, Vec<(usize, usize, Complex64)>)>,
}

impl SparseBlockMat {
    pub fn empty() -> Self {
        SparseBlockMat { blocks: Vec::new() }
    }

    pub fn push(&mut self, block: usize, row: usize, col: usize, value: Complex64) {
        match self.blocks.iter_mut().find(|(b, _)| *b == block) {
            Some((_, entries)) => entries.push((row, col, value)),
            None => self.blocks.push((block, vec![(row, col, value)])),
        }
    }

    /// Adds the entry and, when off-diagonal, its conjugate mirror.
    pub fn push_hermitian(&mut self, block: usize, row: usize, col: usize, value: Complex64) {
        self.push(block, row, col, value);
        if row != col {
            self.push(block, col, row, value.conj());
        }
    }
}

#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub block_dims: Vec<usize>,
    /// Constant term per block.
    pub f0: Vec<DenseMatrix>,
    /// Coefficient matrix per scalar variable.
    pub constraints: Vec<SparseBlockMat>,
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct IpmConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for IpmConfig {
    fn default() -> Self {
        IpmConfig {
            tolerance: 1e-8,
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdpStatus {
    Converged,
    IterLimit,
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub u: Vec<f64>,
    pub x: Vec<DenseMatrix>,
    pub s: Vec<DenseMatrix>,
    /// c'u.
    pub objective: f64,
    /// -tr(F_0 X).
    pub primal_objective: f64,
    pub gap: f64,
    pub iterations: usize,
    pub status: SdpStatus,
}

impl SdpProblem {
    pub fn validate(&self) -> Result<()> {
        if self.f0.len() != self.block_dims.len() {
            return Err(Error::Input("constant term block count mismatch".into()));
        }
        for (b, m) in self.f0.iter().enumerate() {
            if m.rows() != self.block_dims[b] || m.cols() != self.block_dims[b] {
                return Err(Error::Input(format!("constant block {} has a wrong size", b)));
            }
        }
        if self.constraints.len() != self.c.len() {
            return Err(Error::Input("objective length != variable count".into()));
        }
        for (i, f) in self.constraints.iter().enumerate() {
            for (b, entries) in &f.blocks {
                if *b >= self.block_dims.len() {
                    return Err(Error::Input(format!("variable {} names a missing block", i)));
                }
                let dim = self.block_dims[*b];
                if entries.iter().any(|&(r, c, _)| r >= dim || c >= dim) {
                    return Err(Error::Input(format!("variable {} has out-of-range entries", i)));
                }
            }
        }
        Ok(())
    }
}

/// tr(F A) for sparse Hermitian F against a dense block set.
fn trace_sparse(f: &SparseBlockMat, a: &[DenseMatrix]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, entries) in &f.blocks {
        let ab = &a[*b];
        for &(r, c, v) in entries {
            acc += v * ab[(c, r)];
        }
    }
    acc
}

/// X F S^{-1} accumulated per block the variable touches.
fn x_f_sinv(
    f: &SparseBlockMat,
    x: &[DenseMatrix],
    sinv: &[DenseMatrix],
) -> Vec<(usize, DenseMatrix)> {
    let mut out = Vec::with_capacity(f.blocks.len());
    for (b, entries) in &f.blocks {
        let xb = &x[*b];
        let sb = &sinv[*b];
        let dim = xb.rows();
        let mut t = DenseMatrix::zeros(dim, dim);
        for &(r, c, v) in entries {
            // rank-one update v * x[:, r] * sinv[c, :]
            for i in 0..dim {
                let xv = xb[(i, r)] * v;
                if xv.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..dim {
                    t[(i, j)] += xv * sb[(c, j)];
                }
            }
        }
        out.push((*b, t));
    }
    out
}

fn add_scaled_sparse(target: &mut [DenseMatrix], f: &SparseBlockMat, factor: f64) {
    for (b, entries) in &f.blocks {
        let t = &mut target[*b];
        for &(r, c, v) in entries {
            t[(r, c)] += v * factor;
        }
    }
}

/// In-place Cholesky solve for a dense real symmetric system, with ridge
/// retries when the factorization stalls.
fn solve_real_spd(m: &[f64], dim: usize, rhs: &[f64]) -> Result<Vec<f64>> {
    let diag_scale = (0..dim)
        .map(|i| m[i * dim + i].abs())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    for &ridge in &[0.0, 1e-12, 1e-9, 1e-6] {
        let mut l = m.to_vec();
        if ridge > 0.0 {
            for i in 0..dim {
                l[i * dim + i] += ridge * diag_scale;
            }
        }
        let mut ok = true;
        'fact: for i in 0..dim {
            for j in 0..=i {
                let mut sum = l[i * dim + j];
                for k in 0..j {
                    sum -= l[i * dim + k] * l[j * dim + k];
                }
                if i == j {
                    if sum <= 0.0 {
                        ok = false;
                        break 'fact;
                    }
                    l[i * dim + i] = sum.sqrt();
                } else {
                    l[i * dim + j] = sum / l[j * dim + j];
                }
            }
        }
        if !ok {
            continue;
        }
        let mut y = rhs.to_vec();
        for i in 0..dim {
            for k in 0..i {
                let t = l[i * dim + k] * y[k];
                y[i] -= t;
            }
            y[i] /= l[i * dim + i];
        }
        for i in (0..dim).rev() {
            for k in i + 1..dim {
                let t = l[k * dim + i] * y[k];
                y[i] -= t;
            }
            y[i] /= l[i * dim + i];
        }
        return Ok(y);
    }
    Err(Error::Numerical(
        "normal-equation matrix is not positive definite".into(),
    ))
}

/// Largest t with M + t dM >= 0, through the smallest eigenvalue of
/// L^{-1} dM L^{-H}; infinity when the direction never leaves the cone.
fn max_step(m: &DenseMatrix, dm: &DenseMatrix) -> Result<f64> {
    let dim = m.rows();
    let factor = match cholesky(m) {
        Ok(f) => f,
        Err(_) => {
            // iterate drifted to the cone boundary; rescue with a jitter
            let jitter = m.trace().re.abs().max(1e-12) / dim as f64 * 1e-10;
            let jolted = m.add(&DenseMatrix::identity(dim).scaled(Complex64::new(jitter, 0.0)));
            cholesky(&jolted)?
        }
    };
    let l = factor.l();
    // W = L^{-1} dM L^{-H}
    let y = forward_substitute(l, dm);
    let w = forward_substitute(l, &y.adjoint()).adjoint();
    let (values, _) = eig_hermitian(&w.hermitianized())?;
    let lambda_min = values[0];
    let scale = values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    if lambda_min >= -1e-13 * scale {
        Ok(f64::INFINITY)
    } else {
        Ok(-1.0 / lambda_min)
    }
}

/// Solves L Y = B columnwise for lower-triangular L.
fn forward_substitute(l: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let n = l.rows();
    let cols = b.cols();
    let mut y = b.clone();
    for j in 0..cols {
        for i in 0..n {
            let mut acc = y[(i, j)];
            for k in 0..i {
                acc -= l[(i, k)] * y[(k, j)];
            }
            y[(i, j)] = acc / l[(i, i)];
        }
    }
    y
}

fn hermitian_part(a: &DenseMatrix) -> DenseMatrix {
    a.add(&a.adjoint()).scaled(Complex64::new(0.5, 0.0))
}

pub fn solve_sdp(problem: &SdpProblem, config: &IpmConfig) -> Result<SdpSolution> {
    problem.validate()?;
    let nblocks = problem.block_dims.len();
    let m = problem.c.len();
    let total_dim: usize = problem.block_dims.iter().sum();
    if total_dim == 0 || m == 0 {
        return Err(Error::Input("empty semidefinite program".into()));
    }

    let f0_scale = problem
        .f0
        .iter()
        .fold(0.0f64, |a, b| a.max(b.max_abs()));
    let c_scale = problem.c.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let tau = (2.0 * f0_scale).max(2.0 * c_scale).max(10.0);

    let mut x: Vec<DenseMatrix> = problem
        .block_dims
        .iter()
        .map(|&d| DenseMatrix::identity(d).scaled(Complex64::new(tau, 0.0)))
        .collect();
    let mut s = x.clone();
    let mut u = vec![0.0; m];

    let c_norm = (problem.c.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let f0_norm = problem.f0.iter().map(|b| b.frobenius_norm()).sum::<f64>();

    let mut status = SdpStatus::IterLimit;
    let mut iterations = 0;
    for _ in 0..config.max_iterations {
        // residuals
        let mut rd: Vec<DenseMatrix> = problem
            .f0
            .iter()
            .zip(&s)
            .map(|(f, sb)| f.sub(sb))
            .collect();
        for (i, f) in problem.constraints.iter().enumerate() {
            add_scaled_sparse(&mut rd, f, u[i]);
        }
        let rp: Vec<f64> = problem
            .constraints
            .iter()
            .zip(&problem.c)
            .map(|(f, &ci)| ci - trace_sparse(f, &x).re)
            .collect();

        let dual_obj: f64 = problem.c.iter().zip(&u).map(|(a, b)| a * b).sum();
        let primal_obj: f64 = -problem
            .f0
            .iter()
            .zip(&x)
            .map(|(f, xb)| f.matmul(xb).trace().re)
            .sum::<f64>();
        let gap = (dual_obj - primal_obj).abs() / (1.0 + dual_obj.abs() + primal_obj.abs());
        let pinf = (rp.iter().map(|v| v * v).sum::<f64>()).sqrt() / (1.0 + c_norm);
        let dinf = rd.iter().map(|b| b.frobenius_norm()).sum::<f64>() / (1.0 + f0_norm);
        if gap <= config.tolerance && pinf <= config.tolerance && dinf <= config.tolerance {
            status = SdpStatus::Converged;
            break;
        }
        iterations += 1;

        let mu: f64 = x
            .iter()
            .zip(&s)
            .map(|(xb, sb)| xb.matmul(sb).trace().re)
            .sum::<f64>()
            / total_dim as f64;

        let sinv: Vec<DenseMatrix> = s
            .iter()
            .map(|sb| Ok(cholesky(sb)?.inverse()))
            .collect::<Result<_>>()?;

        // Schur complement M_ij = Re tr(F_i X F_j S^{-1}); real symmetric PD
        let mut schur = vec![0.0f64; m * m];
        for j in 0..m {
            let tj = x_f_sinv(&problem.constraints[j], &x, &sinv);
            for i in 0..m {
                let mut acc = 0.0;
                for (b, entries) in &problem.constraints[i].blocks {
                    if let Some((_, t)) = tj.iter().find(|(tb, _)| tb == b) {
                        for &(r, c, v) in entries {
                            acc += (v * t[(c, r)]).re;
                        }
                    }
                }
                schur[i * m + j] += acc;
            }
        }
        // symmetrize against accumulation noise
        for i in 0..m {
            for j in 0..i {
                let v = 0.5 * (schur[i * m + j] + schur[j * m + i]);
                schur[i * m + j] = v;
                schur[j * m + i] = v;
            }
        }

        let t_vec: Vec<f64> = problem
            .constraints
            .iter()
            .map(|f| trace_sparse(f, &sinv).re)
            .collect();

        // h_i = Re tr(F_i (X Rd) S^{-1}) for the predictor
        let xrd_sinv: Vec<DenseMatrix> = (0..nblocks)
            .map(|b| x[b].matmul(&rd[b]).matmul(&sinv[b]))
            .collect();
        let h: Vec<f64> = problem
            .constraints
            .iter()
            .map(|f| trace_sparse(f, &xrd_sinv).re)
            .collect();

        // predictor: sigma = 0
        let rhs_aff: Vec<f64> = (0..m).map(|i| -problem.c[i] - h[i]).collect();
        let du_aff = solve_real_spd(&schur, m, &rhs_aff)?;
        let mut ds_aff = rd.clone();
        for (i, f) in problem.constraints.iter().enumerate() {
            add_scaled_sparse(&mut ds_aff, f, du_aff[i]);
        }
        let dx_aff: Vec<DenseMatrix> = (0..nblocks)
            .map(|b| {
                let t = x[b].matmul(&ds_aff[b]).matmul(&sinv[b]);
                hermitian_part(&x[b].scaled(Complex64::new(-1.0, 0.0)).sub(&t))
            })
            .collect();

        let mut ap_aff = 1.0f64;
        let mut ad_aff = 1.0f64;
        for b in 0..nblocks {
            ap_aff = ap_aff.min(max_step(&x[b], &dx_aff[b])?);
            ad_aff = ad_aff.min(max_step(&s[b], &ds_aff[b])?);
        }
        let mu_aff: f64 = (0..nblocks)
            .map(|b| {
                let xa = x[b].add(&dx_aff[b].scaled(Complex64::new(ap_aff, 0.0)));
                let sa = s[b].add(&ds_aff[b].scaled(Complex64::new(ad_aff, 0.0)));
                xa.matmul(&sa).trace().re
            })
            .sum::<f64>()
            / total_dim as f64;
        let sigma = ((mu_aff / mu).max(0.0).powi(3)).clamp(1e-10, 1.0);

        // corrector: include the second-order term dX_aff dS_aff
        let corr_sinv: Vec<DenseMatrix> = (0..nblocks)
            .map(|b| {
                x[b].matmul(&rd[b])
                    .add(&dx_aff[b].matmul(&ds_aff[b]))
                    .matmul(&sinv[b])
            })
            .collect();
        let h_corr: Vec<f64> = problem
            .constraints
            .iter()
            .map(|f| trace_sparse(f, &corr_sinv).re)
            .collect();
        let rhs: Vec<f64> = (0..m)
            .map(|i| sigma * mu * t_vec[i] - problem.c[i] - h_corr[i])
            .collect();
        let du = solve_real_spd(&schur, m, &rhs)?;
        let mut ds = rd.clone();
        for (i, f) in problem.constraints.iter().enumerate() {
            add_scaled_sparse(&mut ds, f, du[i]);
        }
        let dx: Vec<DenseMatrix> = (0..nblocks)
            .map(|b| {
                let t = x[b]
                    .matmul(&ds[b])
                    .add(&dx_aff[b].matmul(&ds_aff[b]))
                    .matmul(&sinv[b]);
                let target = sinv[b].scaled(Complex64::new(sigma * mu, 0.0));
                hermitian_part(&target.sub(&x[b]).sub(&t))
            })
            .collect();

        let mut ap = f64::INFINITY;
        let mut ad = f64::INFINITY;
        for b in 0..nblocks {
            ap = ap.min(max_step(&x[b], &dx[b])?);
            ad = ad.min(max_step(&s[b], &ds[b])?);
        }
        let ap = (0.99 * ap).min(1.0);
        let ad = (0.99 * ad).min(1.0);

        for b in 0..nblocks {
            x[b] = hermitian_part(&x[b].add(&dx[b].scaled(Complex64::new(ap, 0.0))));
            s[b] = hermitian_part(&s[b].add(&ds[b].scaled(Complex64::new(ad, 0.0))));
        }
        for i in 0..m {
            u[i] += ad * du[i];
        }
    }

    let dual_obj: f64 = problem.c.iter().zip(&u).map(|(a, b)| a * b).sum();
    let primal_obj: f64 = -problem
        .f0
        .iter()
        .zip(&x)
        .map(|(f, xb)| f.matmul(xb).trace().re)
        .sum::<f64>();
    Ok(SdpSolution {
        u,
        x,
        s,
        objective: dual_obj,
        primal_objective: primal_obj,
        gap: (dual_obj - primal_obj).abs() / (1.0 + dual_obj.abs() + primal_obj.abs()),
        iterations,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_block(v: f64) -> DenseMatrix {
        DenseMatrix::from_real(1, 1, &[v])
    }

    fn var(entries: Vec<(usize, Vec<(usize, usize, Complex64)>)>) -> SparseBlockMat {
        SparseBlockMat { blocks: entries }
    }

    #[test]
    fn scalar_bound() {
        // min u s.t. u - 1 >= 0
        let p = SdpProblem {
            block_dims: vec![1],
            f0: vec![scalar_block(-1.0)],
            constraints: vec![var(vec![(0, vec![(0, 0, Complex64::new(1.0, 0.0))])])],
            c: vec![1.0],
        };
        let sol = solve_sdp(&p, &IpmConfig::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Converged);
        assert!((sol.u[0] - 1.0).abs() < 1e-6, "u = {}", sol.u[0]);
        assert!(sol.gap < 1e-7);
    }

    #[test]
    fn two_scalar_blocks() {
        // min u1 + u2 s.t. u1 >= 1, u2 >= 2 as two blocks
        let p = SdpProblem {
            block_dims: vec![1, 1],
            f0: vec![scalar_block(-1.0), scalar_block(-2.0)],
            constraints: vec![
                var(vec![(0, vec![(0, 0, Complex64::new(1.0, 0.0))])]),
                var(vec![(1, vec![(0, 0, Complex64::new(1.0, 0.0))])]),
            ],
            c: vec![1.0, 1.0],
        };
        let sol = solve_sdp(&p, &IpmConfig::default()).unwrap();
        assert!((sol.objective - 3.0).abs() < 1e-6);
    }

    #[test]
    fn smallest_diagonal_dominating_offdiagonal() {
        // min u s.t. [[u, 1], [1, u]] >= 0 -> u = 1
        let mut f0 = DenseMatrix::zeros(2, 2);
        f0[(0, 1)] = Complex64::new(1.0, 0.0);
        f0[(1, 0)] = Complex64::new(1.0, 0.0);
        let mut c1 = SparseBlockMat::empty();
        c1.push_hermitian(0, 0, 0, Complex64::new(1.0, 0.0));
        c1.push_hermitian(0, 1, 1, Complex64::new(1.0, 0.0));
        let p = SdpProblem {
            block_dims: vec![2],
            f0: vec![f0],
            constraints: vec![c1],
            c: vec![1.0],
        };
        let sol = solve_sdp(&p, &IpmConfig::default()).unwrap();
        assert_eq!(sol.status, SdpStatus::Converged);
        assert!((sol.u[0] - 1.0).abs() < 1e-6, "u = {}", sol.u[0]);
        // primal feasibility: tr(F1 X) = c1
        assert!((sol.x[0].trace().re - 1.0).abs() < 1e-6);
    }

    #[test]
    fn complex_offdiagonal() {
        // min u s.t. [[u, i], [-i, u]] >= 0 -> u = 1
        let mut f0 = DenseMatrix::zeros(2, 2);
        f0[(0, 1)] = Complex64::new(0.0, 1.0);
        f0[(1, 0)] = Complex64::new(0.0, -1.0);
        let mut c1 = SparseBlockMat::empty();
        c1.push_hermitian(0, 0, 0, Complex64::new(1.0, 0.0));
        c1.push_hermitian(0, 1, 1, Complex64::new(1.0, 0.0));
        let p = SdpProblem {
            block_dims: vec![2],
            f0: vec![f0],
            constraints: vec![c1],
            c: vec![1.0],
        };
        let sol = solve_sdp(&p, &IpmConfig::default()).unwrap();
        assert!((sol.u[0] - 1.0).abs() < 1e-6, "u = {}", sol.u[0]);
    }

    #[test]
    fn interior_optimum_at_zero() {
        // min u s.t. I + u E >= 0 has optimum on the boundary u where
        // eigenvalue hits zero: 1 - |u| >= 0, minimize u -> u = -1
        let mut c1 = SparseBlockMat::empty();
        c1.push_hermitian(0, 0, 0, Complex64::new(1.0, 0.0));
        let p = SdpProblem {
            block_dims: vec![1],
            f0: vec![scalar_block(1.0)],
            constraints: vec![c1],
            c: vec![1.0],
        };
        let sol = solve_sdp(&p, &IpmConfig::default()).unwrap();
        assert!((sol.u[0] + 1.0).abs() < 1e-6, "u = {}", sol.u[0]);
    }

    #[test]
    fn rejects_inconsistent_problem() {
        let p = SdpProblem {
            block_dims: vec![1],
            f0: vec![scalar_block(0.0)],
            constraints: vec![],
            c: vec![1.0],
        };
        assert!(solve_sdp(&p, &IpmConfig::default()).is_err());
    }
}
