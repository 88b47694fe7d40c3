//! L1-minimization recovery: interpolate a sparse polynomial from point
//! evaluations (`naive_lp`) or from torus moments over an index scheme
//! (`rigorous_lp`), with dual certificates for optimality checks.

mod simplex;

pub use simplex::{solve_standard, LpStatus, StandardLp, StandardSolution};

use crate::base_point::BasePoint;
use crate::error::{Error, Result};
use crate::moments::{IndexScheme, MomentSequence};
use crate::multi_index::{natural_up_to, MultiIndex};
use crate::oracle::EvaluationOracle;
use crate::poly::SparsePolynomial;
use num_complex::Complex64;

/// Hard cap on the candidate monomial grid; larger grids are rejected as a
/// configuration error rather than attempted.
pub const MAX_CANDIDATES: u128 = 5_000_000;

/// Candidate exponent grid for the recovered polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateGrid {
    /// All exponents with every coordinate in 0..=bound.
    Box { bound: i64 },
    /// All exponents of total degree <= bound.
    Simplex { bound: i64 },
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

impl CandidateGrid {
    pub fn count(&self, dimension: usize) -> u128 {
        match *self {
            CandidateGrid::Box { bound } => {
                let base = (bound.max(0) as u128) + 1;
                let mut acc: u128 = 1;
                for _ in 0..dimension {
                    acc = acc.saturating_mul(base);
                    if acc > MAX_CANDIDATES {
                        return acc;
                    }
                }
                acc
            }
            CandidateGrid::Simplex { bound } => {
                binomial(dimension as u128 + bound.max(0) as u128, dimension as u128)
            }
        }
    }

    /// Materializes the grid, or fails when it exceeds `MAX_CANDIDATES`.
    pub fn candidates(&self, dimension: usize) -> Result<Vec<MultiIndex>> {
        let count = self.count(dimension);
        if count > MAX_CANDIDATES {
            return Err(Error::Config(format!(
                "candidate grid has {} exponents, above the limit {}",
                count, MAX_CANDIDATES
            )));
        }
        match *self {
            CandidateGrid::Box { bound } => {
                if bound < 0 {
                    return Err(Error::Config("grid bound must be nonnegative".into()));
                }
                let mut out = vec![Vec::new()];
                for _ in 0..dimension {
                    let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
                    for prefix in &out {
                        for v in 0..=bound {
                            let mut p = prefix.clone();
                            p.push(v);
                            next.push(p);
                        }
                    }
                    out = next;
                }
                let mut idx: Vec<MultiIndex> = out.into_iter().map(MultiIndex::new).collect();
                idx.sort();
                Ok(idx)
            }
            CandidateGrid::Simplex { bound } => {
                if bound < 0 {
                    return Err(Error::Config("grid bound must be nonnegative".into()));
                }
                Ok(natural_up_to(dimension, bound))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Signed coefficient per candidate exponent (plus minus minus part).
    pub coefficients: Vec<f64>,
    /// Dual value per built row, in row order.
    pub dual: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

/// One linear constraint row of the recovery program, tagged by the moment
/// index it came from and whether it matches the real or imaginary part.
#[derive(Debug, Clone)]
pub struct MomentRow {
    pub alpha: MultiIndex,
    pub imaginary: bool,
}

#[derive(Debug, Clone)]
pub struct LpOutcome {
    pub polynomial: SparsePolynomial,
    pub solution: LpSolution,
    pub candidates: Vec<MultiIndex>,
    pub rows: Vec<MomentRow>,
}

/// Builds and solves `min ||x||_1 s.t. rows * x = rhs` (or within the noise
/// box when `noise` is set) with x split into nonnegative parts.
fn solve_l1(
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    candidates: Vec<MultiIndex>,
    row_tags: Vec<MomentRow>,
    noise: Option<f64>,
    dimension: usize,
) -> Result<LpOutcome> {
    let ncand = candidates.len();
    let m_base = rows.len();
    let (m, nslack) = match noise {
        None => (m_base, 0),
        Some(_) => (2 * m_base, 2 * m_base),
    };
    let n = 2 * ncand + nslack;
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..ncand {
        for sign in [1.0f64, -1.0] {
            let mut col = vec![0.0; m];
            for (i, row) in rows.iter().enumerate() {
                match noise {
                    None => col[i] = sign * row[j],
                    Some(_) => {
                        // row . x <= b + eta  and  -(row . x) <= -(b - eta)
                        col[2 * i] = sign * row[j];
                        col[2 * i + 1] = -sign * row[j];
                    }
                }
            }
            cols.push(col);
        }
    }
    let mut b = Vec::with_capacity(m);
    match noise {
        None => b.extend_from_slice(&rhs),
        Some(eta) => {
            for &v in &rhs {
                b.push(v + eta);
                b.push(-(v - eta));
            }
        }
    }
    if noise.is_some() {
        for i in 0..m {
            let mut col = vec![0.0; m];
            col[i] = 1.0;
            cols.push(col);
        }
    }
    let mut c = vec![1.0; 2 * ncand];
    c.extend(vec![0.0; nslack]);

    let std = StandardLp {
        m,
        n,
        cols,
        b,
        c,
        neg_pairs: ncand,
    };
    let sol = solve_standard(&std)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solve(format!(
            "l1 recovery program terminated with status {:?}",
            sol.status
        )));
    }
    let coefficients: Vec<f64> = (0..ncand).map(|j| sol.x[2 * j] - sol.x[2 * j + 1]).collect();
    // the noise-box duals live on the doubled inequality rows; fold each pair
    // back onto its originating moment row
    let dual: Vec<f64> = match noise {
        None => sol.y.clone(),
        Some(_) => (0..m_base).map(|i| sol.y[2 * i] - sol.y[2 * i + 1]).collect(),
    };
    let maxc = coefficients.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let drop = 1e-9 * maxc.max(1.0);
    let terms: Vec<(MultiIndex, f64)> = candidates
        .iter()
        .zip(&coefficients)
        .filter(|(_, &v)| v.abs() > drop)
        .map(|(a, &v)| (a.clone(), v))
        .collect();
    let polynomial = SparsePolynomial::new(dimension, terms)?;
    Ok(LpOutcome {
        polynomial,
        solution: LpSolution {
            status: sol.status,
            coefficients,
            dual,
            objective: sol.objective,
            iterations: sol.iterations,
        },
        candidates,
        rows: row_tags,
    })
}

fn real_monomial(point: &[f64], alpha: &MultiIndex) -> f64 {
    point
        .iter()
        .zip(alpha.entries())
        .map(|(&x, &a)| x.powi(a as i32))
        .product()
}

fn torus_monomial(point: &[Complex64], alpha: &MultiIndex) -> Complex64 {
    point
        .iter()
        .zip(alpha.entries())
        .map(|(&z, &a)| z.powi(a as i32))
        .product()
}

/// Direct interpolation from evaluations at explicit real sample points: one
/// equality row per point, candidates from the box grid.
pub fn naive_lp(
    oracle: &EvaluationOracle,
    points: &[Vec<f64>],
    degree_bound: i64,
) -> Result<LpOutcome> {
    if points.is_empty() {
        return Err(Error::Input("no sample points given".into()));
    }
    let dimension = oracle.dimension();
    if points.iter().any(|p| p.len() != dimension) {
        return Err(Error::Input("sample point dimension mismatch".into()));
    }
    let candidates = CandidateGrid::Box {
        bound: degree_bound,
    }
    .candidates(dimension)?;
    let mut rows = Vec::with_capacity(points.len());
    let mut rhs = Vec::with_capacity(points.len());
    let mut tags = Vec::with_capacity(points.len());
    for p in points {
        let z: Vec<Complex64> = p.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let value = oracle.evaluate(&z)?;
        rows.push(candidates.iter().map(|a| real_monomial(p, a)).collect());
        rhs.push(value.re);
        tags.push(MomentRow {
            alpha: MultiIndex::zero(dimension),
            imaginary: false,
        });
    }
    solve_l1(rows, rhs, candidates, tags, None, dimension)
}

/// Recovery from torus moments: rows are the real and imaginary parts of the
/// collected moments over the scheme's canonical indices; the variable for
/// candidate beta enters row alpha with weight (phi^beta)^alpha.
pub fn rigorous_lp(
    seq: &MomentSequence,
    phi: &BasePoint,
    scheme: &IndexScheme,
    grid: &CandidateGrid,
    noise_box: Option<f64>,
) -> Result<LpOutcome> {
    if !phi.is_torus() {
        return Err(Error::Config(
            "moment-based recovery needs a torus base point".into(),
        ));
    }
    let dimension = phi.dimension();
    if scheme.dimension != dimension || seq.dimension() != dimension {
        return Err(Error::Input("scheme, sequence and base point dimensions differ".into()));
    }
    if let Some(eta) = noise_box {
        if eta < 0.0 {
            return Err(Error::Input("noise box must be nonnegative".into()));
        }
    }
    let candidates = grid.candidates(dimension)?;
    // per-candidate torus node phi^beta
    let nodes: Vec<Vec<Complex64>> = candidates
        .iter()
        .map(|b| phi.power(b))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut tags = Vec::new();
    for alpha in scheme.canonical_indices() {
        let sigma = seq.get(&alpha)?;
        let values: Vec<Complex64> = nodes.iter().map(|z| torus_monomial(z, &alpha)).collect();
        rows.push(values.iter().map(|v| v.re).collect());
        rhs.push(sigma.re);
        tags.push(MomentRow {
            alpha: alpha.clone(),
            imaginary: false,
        });
        if !alpha.is_zero() {
            rows.push(values.iter().map(|v| v.im).collect());
            rhs.push(sigma.im);
            tags.push(MomentRow {
                alpha,
                imaginary: true,
            });
        }
    }
    solve_l1(rows, rhs, candidates, tags, noise_box, dimension)
}

/// Evaluates the dual functional at each candidate exponent. At an optimum
/// of the noiseless program its absolute value stays within 1 and it matches
/// the coefficient sign on the recovered support.
pub fn dual_certificate(outcome: &LpOutcome, phi: &BasePoint) -> Result<Vec<(MultiIndex, f64)>> {
    let mut out = Vec::with_capacity(outcome.candidates.len());
    for beta in &outcome.candidates {
        let node = phi.power(beta)?;
        let mut acc = 0.0;
        for (row, &lambda) in outcome.rows.iter().zip(&outcome.solution.dual) {
            let v = torus_monomial(&node, &row.alpha);
            acc += lambda * if row.imaginary { v.im } else { v.re };
        }
        out.push((beta.clone(), acc));
    }
    Ok(out)
}

/// Same functional for the point-evaluation program, where the dual lives on
/// the sample points directly.
pub fn naive_dual_certificate(
    outcome: &LpOutcome,
    points: &[Vec<f64>],
) -> Vec<(MultiIndex, f64)> {
    outcome
        .candidates
        .iter()
        .map(|beta| {
            let acc: f64 = points
                .iter()
                .zip(&outcome.solution.dual)
                .map(|(p, &lambda)| lambda * real_monomial(p, beta))
                .sum();
            (beta.clone(), acc)
        })
        .collect()
}
