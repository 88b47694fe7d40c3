//! Atomic measures `mu = sum_i w_i delta_{xi_i}` and the bridge from a
//! polynomial to the measure whose moments are the polynomial's evaluations.

use crate::base_point::BasePoint;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::SparsePolynomial;
use num_complex::Complex64;

const COLLISION_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Atom {
    pub point: Vec<Complex64>,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct AtomicMeasure {
    dimension: usize,
    atoms: Vec<Atom>,
}

fn atom_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

impl AtomicMeasure {
    /// Strict constructor: atoms must be pairwise distinct.
    pub fn new(dimension: usize, atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if a.point.len() != dimension {
                return Err(Error::Input("atom dimension mismatch".into()));
            }
        }
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                if atom_distance(&atoms[i].point, &atoms[j].point) <= COLLISION_TOL {
                    return Err(Error::Config(format!(
                        "atoms {} and {} coincide within {:.0e}",
                        i, j, COLLISION_TOL
                    )));
                }
            }
        }
        Ok(AtomicMeasure { dimension, atoms })
    }

    /// Merging constructor: atoms closer than the collision tolerance are
    /// combined by summing weights; atoms whose merged weight vanishes are
    /// dropped. Used when assembling solver output.
    pub fn merged(dimension: usize, atoms: Vec<Atom>) -> Result<Self> {
        let mut kept: Vec<Atom> = Vec::new();
        for a in atoms {
            if a.point.len() != dimension {
                return Err(Error::Input("atom dimension mismatch".into()));
            }
            match kept
                .iter_mut()
                .find(|k| atom_distance(&k.point, &a.point) <= COLLISION_TOL)
            {
                Some(k) => k.weight += a.weight,
                None => kept.push(a),
            }
        }
        kept.retain(|a| a.weight.abs() > 1e-14);
        Ok(AtomicMeasure {
            dimension,
            atoms: kept,
        })
    }

    pub fn empty(dimension: usize) -> Self {
        AtomicMeasure {
            dimension,
            atoms: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total-variation norm: sum of absolute weights.
    pub fn tv_norm(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight.abs()).sum()
    }

    /// The moment `sum_i w_i xi_i^alpha` for a signed index; requires all
    /// atom coordinates nonzero when alpha has negative entries.
    pub fn moment(&self, alpha: &MultiIndex) -> Result<Complex64> {
        if alpha.dim() != self.dimension {
            return Err(Error::Input("moment index dimension mismatch".into()));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for a in &self.atoms {
            let mut mono = Complex64::new(1.0, 0.0);
            for (j, &e) in alpha.entries().iter().enumerate() {
                let z = a.point[j];
                if e < 0 && z.norm() < 1e-14 {
                    return Err(Error::Input(format!(
                        "negative power of a zero coordinate in {}",
                        alpha
                    )));
                }
                mono *= z.powi(e as i32);
            }
            acc += a.weight * mono;
        }
        Ok(acc)
    }

    /// Flips all weights.
    pub fn negated(mut self) -> Self {
        for a in &mut self.atoms {
            a.weight = -a.weight;
        }
        self
    }
}

/// The measure `sum_beta g_beta delta_{phi^beta}` whose alpha-th moment is
/// g(phi^alpha). Exponents mapping to the same torus point are a hard error:
/// they indicate a root order too small for the degree, not mergeable data.
pub fn measure_from_polynomial(g: &SparsePolynomial, phi: &BasePoint) -> Result<AtomicMeasure> {
    if g.dimension() != phi.dimension() {
        return Err(Error::Input("polynomial and base point dimensions differ".into()));
    }
    let supports: Vec<&MultiIndex> = g.terms().keys().collect();
    let mut atoms = Vec::with_capacity(supports.len());
    for beta in &supports {
        atoms.push(Atom {
            point: phi.power(beta)?,
            weight: g.coefficient(beta),
        });
    }
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            if atom_distance(&atoms[i].point, &atoms[j].point) <= COLLISION_TOL {
                return Err(Error::Config(format!(
                    "exponents {} and {} map to the same point; increase the root order",
                    supports[i], supports[j]
                )));
            }
        }
    }
    AtomicMeasure::new(g.dimension(), atoms)
}
