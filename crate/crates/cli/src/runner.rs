//! Method dispatch and the minimum-evaluation search.
//!
//! Every approach consumes a black-box oracle and produces a polynomial
//! estimate plus the number of distinct evaluation points it spent. The
//! moment-based methods fix their own index sets: the Toeplitz pipeline reads
//! the signed difference set, the Hankel pipeline the nonnegative simplex,
//! and the torus LP and the hierarchy follow the configured scheme.

use crate::config::{Method, SchemeChoice};
use interp_core::base_point::BasePoint;
use interp_core::error::{Error, Result};
use interp_core::linalg::{lstsq, DenseMatrix};
use interp_core::lp::{rigorous_lp, naive_lp, CandidateGrid};
use interp_core::moments::{collect_moments, IndexScheme, SchemeKind};
use interp_core::multi_index::MultiIndex;
use interp_core::oracle::EvaluationOracle;
use interp_core::poly::SparsePolynomial;
use interp_core::prony::{advanced_prony, hankel_prony, toeplitz_prony, PronyConfig, PronyVariant};
use interp_core::recover::{decode_exponents_lossy, relative_error};
use interp_core::sdp::{super_resolution, SuperResolutionConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Degree scan cap for the minimum-evaluation search.
pub const DEGREE_CAP: i64 = 12;
/// A run counts as exact when the percentage error stays below this.
pub const EXACT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy)]
pub struct MethodSettings {
    /// Singular-value ratio threshold for rank detection.
    pub rank_threshold: f64,
    /// Seed for the internal random draws (operator combinations, sample
    /// points); not the noise seed.
    pub seed: u64,
    /// LP box half-width or hierarchy ball radius; None solves the exact
    /// equalities.
    pub relaxation: Option<f64>,
}

impl Default for MethodSettings {
    fn default() -> Self {
        MethodSettings {
            rank_threshold: 0.1,
            seed: 0,
            relaxation: None,
        }
    }
}

/// One completed run of a method at a fixed scheme degree.
#[derive(Debug, Clone)]
pub struct MethodRun {
    pub estimate: SparsePolynomial,
    pub evaluations: usize,
    /// Scheme degree the run consumed; None for the fixed-term-bound
    /// variants which have no degree knob.
    pub degree: Option<i64>,
    /// Atoms that could not be decoded to exponents (noisy runs).
    pub dropped_atoms: usize,
}

/// Standard torus base point for moment collection: angle 1 rad per
/// coordinate.
pub fn torus_point(n: usize) -> Result<BasePoint> {
    BasePoint::unit_angles(n)
}

/// Base point for the torus LP: the same unit-angle point the other torus
/// methods use. One radian is irrational modulo 2*pi, so distinct candidate
/// exponents map to distinct grid nodes and no two nodes are antipodal;
/// either failure would break uniqueness of the one-norm minimizer.
pub fn lp_base_point(n: usize, _degree_bound: i64) -> Result<BasePoint> {
    BasePoint::unit_angles(n)
}

/// Candidate exponent grid for the torus LP: the full residue box for the
/// signed/box schemes, the simplex for the nonnegative scheme.
pub fn lp_candidate_grid(scheme: SchemeChoice, degree_bound: i64) -> CandidateGrid {
    match scheme {
        SchemeChoice::A2 => CandidateGrid::Simplex {
            bound: degree_bound,
        },
        _ => CandidateGrid::Box {
            bound: degree_bound,
        },
    }
}

fn prony_config(settings: &MethodSettings) -> PronyConfig {
    PronyConfig {
        rank_threshold: settings.rank_threshold,
        rng_seed: settings.seed,
        known_rank: None,
    }
}

/// Least-squares refit of the coefficients on a fixed support against the
/// collected moments; consumes no new oracle points (all indices were
/// already queried by the run that produced the support).
pub fn refit_coefficients(
    support: &[MultiIndex],
    oracle: &EvaluationOracle,
    phi: &BasePoint,
    indices: &[MultiIndex],
) -> Result<SparsePolynomial> {
    let n = phi.dimension();
    if support.is_empty() {
        return Ok(SparsePolynomial::zero(n));
    }
    let nodes: Vec<Vec<Complex64>> = support.iter().map(|b| phi.power(b)).collect::<Result<_>>()?;
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(2 * indices.len());
    let mut rhs: Vec<Complex64> = Vec::with_capacity(2 * indices.len());
    for alpha in indices {
        let sigma = oracle.evaluate(&phi.power(alpha)?)?;
        let entries: Vec<Complex64> = nodes
            .iter()
            .map(|z| {
                z.iter()
                    .zip(alpha.entries())
                    .map(|(&c, &a)| c.powi(a as i32))
                    .product()
            })
            .collect();
        rows.push(entries.iter().map(|v| Complex64::new(v.re, 0.0)).collect());
        rhs.push(Complex64::new(sigma.re, 0.0));
        rows.push(entries.iter().map(|v| Complex64::new(v.im, 0.0)).collect());
        rhs.push(Complex64::new(sigma.im, 0.0));
    }
    let a = DenseMatrix::from_rows(rows)?;
    let solved = lstsq(&a, &rhs)?;
    let scale = solved.x.iter().map(|c| c.re.abs()).fold(0.0f64, f64::max);
    let terms: Vec<(MultiIndex, f64)> = support
        .iter()
        .zip(&solved.x)
        .filter(|(_, c)| c.re.abs() > 1e-9 * scale.max(1.0))
        .map(|(b, c)| (b.clone(), c.re))
        .collect();
    SparsePolynomial::new(n, terms)
}

/// Runs one method at scheme degree `degree` against the given oracle.
///
/// `degree_bound` bounds the true exponents and sizes the LP candidate grid
/// and the decoding table; `term_bound` is the known sparsity consumed by
/// the fixed-term-bound variants.
pub fn run_method(
    method: Method,
    oracle: &EvaluationOracle,
    degree_bound: i64,
    degree: i64,
    term_bound: usize,
    scheme: SchemeChoice,
    settings: &MethodSettings,
) -> Result<MethodRun> {
    let n = oracle.dimension();
    match method {
        Method::ToeplitzProny => {
            let phi = torus_point(n)?;
            let idx = IndexScheme::new(SchemeKind::OneNormSigned, degree, n);
            let seq = collect_moments(oracle, &phi, &idx)?;
            let out = toeplitz_prony(&seq, degree, &prony_config(settings))?;
            let (estimate, dropped) =
                decode_exponents_lossy(&out.measure, &phi, degree_bound, None)?;
            Ok(MethodRun {
                estimate,
                evaluations: oracle.evaluation_count(),
                degree: Some(degree),
                dropped_atoms: dropped,
            })
        }
        Method::HankelProny => {
            let phi = torus_point(n)?;
            let idx = IndexScheme::new(SchemeKind::OneNormNatural, degree, n);
            let seq = collect_moments(oracle, &phi, &idx)?;
            let out = hankel_prony(&seq, degree, &prony_config(settings))?;
            let (estimate, dropped) =
                decode_exponents_lossy(&out.measure, &phi, degree_bound, None)?;
            Ok(MethodRun {
                estimate,
                evaluations: oracle.evaluation_count(),
                degree: Some(degree),
                dropped_atoms: dropped,
            })
        }
        Method::AdvancedT | Method::AdvancedH => {
            let phi = torus_point(n)?;
            let variant = if method == Method::AdvancedT {
                PronyVariant::Toeplitz
            } else {
                PronyVariant::Hankel
            };
            let out = advanced_prony(oracle, &phi, term_bound, variant, &prony_config(settings))?;
            let (estimate, dropped) =
                decode_exponents_lossy(&out.measure, &phi, degree_bound, None)?;
            Ok(MethodRun {
                estimate,
                evaluations: oracle.evaluation_count(),
                degree: None,
                dropped_atoms: dropped,
            })
        }
        Method::RigorousLp => {
            let grid = lp_candidate_grid(scheme, degree_bound);
            // fail on an oversized grid before spending any evaluations
            let candidates = grid.candidates(n)?;
            let _ = candidates;
            let phi = lp_base_point(n, degree_bound)?;
            let idx = IndexScheme::new(scheme.kind(), degree, n);
            let seq = collect_moments(oracle, &phi, &idx)?;
            let outcome = rigorous_lp(&seq, &phi, &idx, &grid, settings.relaxation)?;
            Ok(MethodRun {
                estimate: outcome.polynomial,
                evaluations: oracle.evaluation_count(),
                degree: Some(degree),
                dropped_atoms: 0,
            })
        }
        Method::NaiveLp => {
            // as many random real points as the simplex of the current scan
            // degree holds
            let count = interp_core::multi_index::natural_up_to(n, degree).len();
            let mut rng = ChaCha20Rng::seed_from_u64(settings.seed.wrapping_add(0x6e61_6976));
            let points: Vec<Vec<f64>> = (0..count)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let outcome = naive_lp(oracle, &points, degree_bound)?;
            Ok(MethodRun {
                estimate: outcome.polynomial,
                evaluations: oracle.evaluation_count(),
                degree: Some(degree),
                dropped_atoms: 0,
            })
        }
        Method::Superres => {
            let phi = torus_point(n)?;
            let cfg = SuperResolutionConfig {
                rank_epsilon: settings.rank_threshold,
                prony_seed: settings.seed,
                ..SuperResolutionConfig::default()
            };
            let sr = super_resolution(
                oracle,
                &phi,
                scheme.kind(),
                degree,
                degree,
                settings.relaxation,
                &cfg,
            )?;
            let (estimate, dropped) =
                decode_exponents_lossy(&sr.measure, &phi, degree_bound, None)?;
            Ok(MethodRun {
                estimate,
                evaluations: sr.final_order_evaluations,
                degree: Some(degree),
                dropped_atoms: dropped,
            })
        }
    }
}

/// Result of the minimum-evaluation search for one method on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinEvalOutcome {
    Recovered {
        evaluations: usize,
        degree: Option<i64>,
    },
    /// The method's construction guard refused the instance (e.g. the
    /// candidate grid would exceed the variable cap).
    NotApplicable,
    /// No exact recovery up to the degree cap.
    NotRecovered,
}

fn is_exact(estimate: &SparsePolynomial, truth: &SparsePolynomial) -> bool {
    matches!(relative_error(estimate, truth), Ok(e) if e <= EXACT_TOL)
}

/// Scans the scheme degree from the method's minimum upward and returns the
/// first degree with exact recovery, together with the distinct evaluation
/// count spent at that degree.
pub fn find_min_evaluations(
    truth: &SparsePolynomial,
    degree_bound: i64,
    method: Method,
    scheme: SchemeChoice,
    settings: &MethodSettings,
) -> Result<MinEvalOutcome> {
    let n = truth.dimension();
    match method {
        Method::AdvancedT | Method::AdvancedH => {
            let oracle = EvaluationOracle::new(truth.clone(), None);
            match run_method(
                method,
                &oracle,
                degree_bound,
                0,
                truth.sparsity(),
                scheme,
                settings,
            ) {
                Ok(run) if is_exact(&run.estimate, truth) => Ok(MinEvalOutcome::Recovered {
                    evaluations: run.evaluations,
                    degree: None,
                }),
                Ok(_) => Ok(MinEvalOutcome::NotRecovered),
                Err(Error::Config(_)) => Ok(MinEvalOutcome::NotApplicable),
                Err(_) => Ok(MinEvalOutcome::NotRecovered),
            }
        }
        Method::Superres => {
            let phi = torus_point(n)?;
            let cfg = SuperResolutionConfig {
                rank_epsilon: settings.rank_threshold,
                prony_seed: settings.seed,
                ..SuperResolutionConfig::default()
            };
            for d in 0..=DEGREE_CAP {
                let oracle = EvaluationOracle::new(truth.clone(), None);
                let sr = match super_resolution(&oracle, &phi, scheme.kind(), d, d, None, &cfg) {
                    Ok(sr) => sr,
                    Err(Error::Config(_)) => return Ok(MinEvalOutcome::NotApplicable),
                    Err(_) => continue,
                };
                let Ok((decoded, _)) = decode_exponents_lossy(&sr.measure, &phi, degree_bound, None)
                else {
                    continue;
                };
                // the extracted measure itself must match at solver accuracy
                // before the weights are polished: a least-squares refit on a
                // too-large decoded support could otherwise reproduce the
                // truth from a measure that is not the minimizer
                match relative_error(&decoded, truth) {
                    Ok(coarse) if coarse <= 0.1 => {}
                    _ => continue,
                }
                let support: Vec<MultiIndex> = decoded.terms().keys().cloned().collect();
                let indices = IndexScheme::new(scheme.kind(), d, n).canonical_indices();
                let refit = refit_coefficients(&support, &oracle, &phi, &indices)?;
                if is_exact(&refit, truth) {
                    return Ok(MinEvalOutcome::Recovered {
                        evaluations: sr.final_order_evaluations,
                        degree: Some(d),
                    });
                }
            }
            Ok(MinEvalOutcome::NotRecovered)
        }
        _ => {
            let d_min = match method {
                Method::ToeplitzProny | Method::HankelProny => 1,
                _ => 0,
            };
            for d in d_min..=DEGREE_CAP {
                let oracle = EvaluationOracle::new(truth.clone(), None);
                match run_method(
                    method,
                    &oracle,
                    degree_bound,
                    d,
                    truth.sparsity(),
                    scheme,
                    settings,
                ) {
                    Ok(run) if is_exact(&run.estimate, truth) => {
                        return Ok(MinEvalOutcome::Recovered {
                            evaluations: run.evaluations,
                            degree: Some(d),
                        })
                    }
                    Ok(_) => {}
                    Err(Error::Config(_)) => return Ok(MinEvalOutcome::NotApplicable),
                    Err(_) => {}
                }
            }
            Ok(MinEvalOutcome::NotRecovered)
        }
    }
}
