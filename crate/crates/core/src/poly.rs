//! Sparse multivariate polynomials with real coefficients, plus the JSON
//! instance format used by the harness.

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `g(z) = sum_beta g_beta z^beta` with finitely many nonzero real `g_beta`
/// and componentwise nonnegative exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePolynomial {
    dimension: usize,
    terms: BTreeMap<MultiIndex, f64>,
}

impl SparsePolynomial {
    /// Builds a polynomial, dropping exact-zero coefficients.
    pub fn new(dimension: usize, terms: impl IntoIterator<Item = (MultiIndex, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (beta, c) in terms {
            if beta.dim() != dimension {
                return Err(Error::Input(format!(
                    "exponent {} has dimension {}, expected {}",
                    beta,
                    beta.dim(),
                    dimension
                )));
            }
            if !beta.is_nonnegative() {
                return Err(Error::Input(format!("exponent {} has a negative entry", beta)));
            }
            if c != 0.0 {
                *map.entry(beta).or_insert(0.0) += c;
            }
        }
        map.retain(|_, c| *c != 0.0);
        Ok(SparsePolynomial { dimension, terms: map })
    }

    pub fn zero(dimension: usize) -> Self {
        SparsePolynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, f64> {
        &self.terms
    }

    /// Number of nonzero terms (the sparsity r).
    pub fn sparsity(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, beta: &MultiIndex) -> f64 {
        self.terms.get(beta).copied().unwrap_or(0.0)
    }

    /// Sum of absolute coefficients.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn two_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Largest one-norm over the support, 0 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|b| b.one_norm()).max().unwrap_or(0)
    }

    /// Largest single-coordinate exponent over the support.
    pub fn max_coordinate_degree(&self) -> i64 {
        self.terms.keys().map(|b| b.inf_norm()).max().unwrap_or(0)
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.dimension {
            return Err(Error::Input(format!(
                "evaluation point has dimension {}, expected {}",
                point.len(),
                self.dimension
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (beta, &c) in &self.terms {
            let mut mono = Complex64::new(1.0, 0.0);
            for (j, &e) in beta.entries().iter().enumerate() {
                mono *= point[j].powi(e as i32);
            }
            acc += c * mono;
        }
        Ok(acc)
    }
}

/// On-disk problem instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Instance {
    pub dimension: usize,
    pub degree_bound: i64,
    pub terms: Vec<InstanceTerm>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceTerm {
    pub exponent: Vec<i64>,
    pub coefficient: f64,
}

impl Instance {
    pub fn from_polynomial(g: &SparsePolynomial, degree_bound: i64, seed: u64) -> Self {
        Instance {
            dimension: g.dimension(),
            degree_bound,
            terms: g
                .terms()
                .iter()
                .map(|(b, &c)| InstanceTerm {
                    exponent: b.entries().to_vec(),
                    coefficient: c,
                })
                .collect(),
            seed,
        }
    }

    pub fn polynomial(&self) -> Result<SparsePolynomial> {
        SparsePolynomial::new(
            self.dimension,
            self.terms
                .iter()
                .map(|t| (MultiIndex::new(t.exponent.clone()), t.coefficient)),
        )
    }
}
