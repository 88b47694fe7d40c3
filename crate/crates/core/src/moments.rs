//! Index schemes, moment collection from the oracle, and the Hankel and
//! Toeplitz moment matrices.

use crate::base_point::BasePoint;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::multi_index::{box_up_to, natural_up_to, signed_differences, MultiIndex};
use crate::oracle::EvaluationOracle;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The three evaluation index families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Signed box {|alpha|_inf <= d}, cardinality (2d+1)^n.
    InfNorm,
    /// Differences of two simplex indices of one-norm <= d each.
    OneNormSigned,
    /// Nonnegative simplex {|alpha|_1 <= d}, cardinality C(n+d, n).
    OneNormNatural,
}

impl SchemeKind {
    pub fn label(&self) -> &'static str {
        match self {
            SchemeKind::InfNorm => "inf",
            SchemeKind::OneNormSigned => "a1",
            SchemeKind::OneNormNatural => "a2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexScheme {
    pub kind: SchemeKind,
    pub degree: i64,
    pub dimension: usize,
}

impl IndexScheme {
    pub fn new(kind: SchemeKind, degree: i64, dimension: usize) -> Self {
        IndexScheme {
            kind,
            degree,
            dimension,
        }
    }

    /// All indices of the scheme in the fixed deterministic order.
    pub fn indices(&self) -> Vec<MultiIndex> {
        match self.kind {
            SchemeKind::InfNorm => box_up_to(self.dimension, self.degree),
            SchemeKind::OneNormSigned => signed_differences(self.dimension, self.degree),
            SchemeKind::OneNormNatural => natural_up_to(self.dimension, self.degree),
        }
    }

    /// The representatives actually queried (one per conjugate pair).
    pub fn canonical_indices(&self) -> Vec<MultiIndex> {
        self.indices()
            .into_iter()
            .filter(|a| a.is_canonical())
            .collect()
    }
}

/// Map from signed indices to moments sigma_alpha. On torus data each stored
/// index also stores its mirror with the conjugate value.
#[derive(Debug, Clone)]
pub struct MomentSequence {
    dimension: usize,
    values: BTreeMap<MultiIndex, Complex64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentRecord {
    pub alpha: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

impl MomentSequence {
    pub fn new(dimension: usize) -> Self {
        MomentSequence {
            dimension,
            values: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Stores sigma_alpha together with the conjugate mirror at -alpha.
    pub fn insert_conjugate_pair(&mut self, alpha: MultiIndex, value: Complex64) {
        self.values.insert(-&alpha, value.conj());
        self.values.insert(alpha, value);
    }

    /// Stores a single value with no mirror (non-torus data).
    pub fn insert_plain(&mut self, alpha: MultiIndex, value: Complex64) {
        self.values.insert(alpha, value);
    }

    pub fn get(&self, alpha: &MultiIndex) -> Result<Complex64> {
        self.values
            .get(alpha)
            .copied()
            .ok_or_else(|| Error::Input(format!("missing moment at index {}", alpha)))
    }

    pub fn contains(&self, alpha: &MultiIndex) -> bool {
        self.values.contains_key(alpha)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.values.iter()
    }

    pub fn records(&self) -> Vec<MomentRecord> {
        self.values
            .iter()
            .map(|(a, v)| MomentRecord {
                alpha: a.entries().to_vec(),
                re: v.re,
                im: v.im,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records()).unwrap()
    }

    pub fn from_records(dimension: usize, records: &[MomentRecord]) -> Self {
        let mut seq = MomentSequence::new(dimension);
        for r in records {
            seq.insert_plain(MultiIndex::new(r.alpha.clone()), Complex64::new(r.re, r.im));
        }
        seq
    }
}

/// Queries the oracle over a scheme. On the torus only the canonical
/// representative of each conjugate pair is evaluated; the mirror value is
/// derived by conjugation and is not an oracle call.
pub fn collect_moments(
    oracle: &EvaluationOracle,
    phi: &BasePoint,
    scheme: &IndexScheme,
) -> Result<MomentSequence> {
    collect_indices(oracle, phi, &scheme.indices())
}

/// Same as `collect_moments` for an explicit index list.
pub fn collect_indices(
    oracle: &EvaluationOracle,
    phi: &BasePoint,
    indices: &[MultiIndex],
) -> Result<MomentSequence> {
    if oracle.dimension() != phi.dimension() {
        return Err(Error::Input("oracle and base point dimensions differ".into()));
    }
    let mut seq = MomentSequence::new(phi.dimension());
    for alpha in indices {
        if seq.contains(alpha) {
            continue;
        }
        if phi.is_torus() {
            let (rep, flipped) = alpha.canonical();
            let value = oracle.evaluate(&phi.power(&rep)?)?;
            seq.insert_conjugate_pair(rep, value);
            debug_assert!(seq.contains(alpha));
            let _ = flipped;
        } else {
            let value = oracle.evaluate(&phi.power(alpha)?)?;
            seq.insert_plain(alpha.clone(), value);
        }
    }
    Ok(seq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMatrixKind {
    Hankel,
    Toeplitz,
}

/// Dense moment matrix with explicit row and column index labels; the entry
/// at (i, j) is sigma_{row_i + col_j + shift}.
#[derive(Debug, Clone)]
pub struct MomentMatrix {
    pub row_indices: Vec<MultiIndex>,
    pub col_indices: Vec<MultiIndex>,
    pub entries: DenseMatrix,
    pub kind: MomentMatrixKind,
}

pub fn moment_matrix(
    seq: &MomentSequence,
    row_indices: Vec<MultiIndex>,
    col_indices: Vec<MultiIndex>,
    shift: &MultiIndex,
    kind: MomentMatrixKind,
) -> Result<MomentMatrix> {
    let mut entries = DenseMatrix::zeros(row_indices.len(), col_indices.len());
    for (i, r) in row_indices.iter().enumerate() {
        for (j, c) in col_indices.iter().enumerate() {
            entries[(i, j)] = seq.get(&(&(r + c) + shift))?;
        }
    }
    Ok(MomentMatrix {
        row_indices,
        col_indices,
        entries,
        kind,
    })
}

/// Hankel matrix: rows {|alpha|_1 <= d1}, columns {|beta|_1 <= d2 - 1},
/// entry sigma_{alpha + beta + shift}.
pub fn hankel_matrix(
    seq: &MomentSequence,
    d1: i64,
    d2: i64,
    shift: &MultiIndex,
) -> Result<MomentMatrix> {
    if d2 < 1 {
        return Err(Error::Input("hankel matrix needs d2 >= 1".into()));
    }
    let n = seq.dimension();
    moment_matrix(
        seq,
        natural_up_to(n, d1),
        natural_up_to(n, d2 - 1),
        shift,
        MomentMatrixKind::Hankel,
    )
}

/// Toeplitz matrix of order d: rows are monomial indices {|alpha|_1 <= d},
/// columns the corresponding anti-monomials, entry (alpha, -beta) is
/// sigma_{alpha - beta + shift}.
pub fn toeplitz_matrix_shifted(
    seq: &MomentSequence,
    d: i64,
    shift: &MultiIndex,
) -> Result<MomentMatrix> {
    let n = seq.dimension();
    let rows = natural_up_to(n, d);
    let cols: Vec<MultiIndex> = rows.iter().map(|b| -b).collect();
    moment_matrix(seq, rows, cols, shift, MomentMatrixKind::Toeplitz)
}

pub fn toeplitz_matrix(seq: &MomentSequence, d: i64) -> Result<MomentMatrix> {
    let n = seq.dimension();
    toeplitz_matrix_shifted(seq, d, &MultiIndex::zero(n))
}
