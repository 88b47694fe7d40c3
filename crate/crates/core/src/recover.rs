//! Decoding atoms back to monomial exponents, and the percentage error used
//! to score a recovered polynomial against the truth.

use crate::base_point::{BasePoint, PointScheme};
use crate::error::{Error, Result};
use crate::measure::AtomicMeasure;
use crate::multi_index::MultiIndex;
use crate::poly::SparsePolynomial;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

/// Atoms lighter than this are treated as numerical debris, not terms.
pub const WEIGHT_FLOOR: f64 = 1e-6;
/// An atom this far off the unit circle cannot be trusted to decode.
const MODULUS_SLACK: f64 = 0.2;
/// Default angular tolerance for integer-angle decoding (radians).
const ANGLE_TOL: f64 = 0.14;

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn decode_atom(
    point: &[Complex64],
    phi: &BasePoint,
    degree_bound: i64,
    tolerance: Option<f64>,
) -> Result<MultiIndex> {
    let mut exponents = Vec::with_capacity(point.len());
    for (j, z) in point.iter().enumerate() {
        let modulus = z.norm();
        if (modulus - 1.0).abs() > MODULUS_SLACK {
            return Err(Error::Decode(format!(
                "atom coordinate {} has modulus {:.3}, too far from the unit circle",
                j, modulus
            )));
        }
        let angle = (z / modulus).arg().rem_euclid(TAU);
        let e = match phi.scheme() {
            PointScheme::RootsOfUnity(orders) => {
                let nj = orders[j] as f64;
                let spacing = TAU / nj;
                let tol = tolerance.unwrap_or(PI / nj);
                let k = (angle / spacing).round().rem_euclid(nj);
                if circular_distance(angle, k * spacing) > tol {
                    return Err(Error::Decode(format!(
                        "coordinate {} angle {:.4} is not near a root of unity",
                        j, angle
                    )));
                }
                (k as i64).rem_euclid(orders[j] as i64)
            }
            PointScheme::IntegerAngles(thetas) => {
                let tol = tolerance.unwrap_or(ANGLE_TOL);
                let theta = thetas[j];
                let (best_k, best_d) = (0..=degree_bound)
                    .map(|k| (k, circular_distance(angle, (k as f64 * theta).rem_euclid(TAU))))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .ok_or_else(|| Error::Input("negative degree bound".into()))?;
                if best_d > tol {
                    return Err(Error::Decode(format!(
                        "coordinate {} angle {:.4} misses every admissible power by {:.4}",
                        j, angle, best_d
                    )));
                }
                best_k
            }
            PointScheme::RealBox(_) => {
                return Err(Error::Decode(
                    "exponent decoding is undefined for real base points".into(),
                ))
            }
        };
        exponents.push(e);
    }
    Ok(MultiIndex::new(exponents))
}

fn decode_impl(
    mu: &AtomicMeasure,
    phi: &BasePoint,
    degree_bound: i64,
    tolerance: Option<f64>,
    lossy: bool,
) -> Result<(SparsePolynomial, usize)> {
    if mu.dimension() != phi.dimension() {
        return Err(Error::Input("measure and base point dimensions differ".into()));
    }
    if degree_bound < 0 {
        return Err(Error::Input("degree bound must be nonnegative".into()));
    }
    let mut coeffs: BTreeMap<MultiIndex, f64> = BTreeMap::new();
    let mut dropped = 0usize;
    for atom in mu.atoms() {
        if atom.weight.abs() < WEIGHT_FLOOR {
            continue;
        }
        match decode_atom(&atom.point, phi, degree_bound, tolerance) {
            Ok(beta) => *coeffs.entry(beta).or_insert(0.0) += atom.weight,
            Err(e) => {
                if lossy {
                    dropped += 1;
                } else {
                    return Err(e);
                }
            }
        }
    }
    let g = SparsePolynomial::new(mu.dimension(), coeffs)?;
    Ok((g, dropped))
}

/// Maps every substantial atom to a monomial exponent; any undecodable atom
/// is a hard error.
pub fn decode_exponents(
    mu: &AtomicMeasure,
    phi: &BasePoint,
    degree_bound: i64,
    tolerance: Option<f64>,
) -> Result<SparsePolynomial> {
    decode_impl(mu, phi, degree_bound, tolerance, false).map(|(g, _)| g)
}

/// Same decoding, but skips atoms that fail and reports how many were lost.
/// Used on noisy data where a spurious atom should not void the whole run.
pub fn decode_exponents_lossy(
    mu: &AtomicMeasure,
    phi: &BasePoint,
    degree_bound: i64,
    tolerance: Option<f64>,
) -> Result<(SparsePolynomial, usize)> {
    decode_impl(mu, phi, degree_bound, tolerance, true)
}

/// Percentage coefficient error `100 * ||estimate - truth||_2 / ||truth||_2`
/// over the union of supports.
pub fn relative_error(estimate: &SparsePolynomial, truth: &SparsePolynomial) -> Result<f64> {
    if estimate.dimension() != truth.dimension() {
        return Err(Error::Input("polynomial dimensions differ".into()));
    }
    let denom = truth.two_norm();
    if denom == 0.0 {
        return Err(Error::Input("reference polynomial is zero".into()));
    }
    let mut keys: Vec<&MultiIndex> = estimate.terms().keys().collect();
    keys.extend(truth.terms().keys());
    keys.sort();
    keys.dedup();
    let diff: f64 = keys
        .iter()
        .map(|k| {
            let d = estimate.coefficient(k) - truth.coefficient(k);
            d * d
        })
        .sum::<f64>()
        .sqrt();
    Ok(100.0 * diff / denom)
}
