//! Direct algebraic decomposition of a moment sequence into an atomic
//! measure: the classical Hankel pipeline, its Toeplitz variant, and the
//! reduced-basis variants that query the oracle only where needed.
//!
//! Shared pipeline: truncate an SVD of the unshifted moment matrix at the
//! numerical rank r, compress the shifted matrices to r x r multiplication
//! operators M_k, take an eigendecomposition of a random combination
//! sum_k lambda_k M_k, read the atom coordinates off Rayleigh quotients of
//! the M_k, and solve the first matrix row for the weights.

use crate::base_point::BasePoint;
use crate::error::{Error, Result};
use crate::linalg::{eig_general, numerical_rank, svd, DenseMatrix};
use crate::measure::{Atom, AtomicMeasure};
use crate::moments::{
    collect_indices, hankel_matrix, toeplitz_matrix_shifted, MomentMatrix, MomentSequence,
};
use crate::multi_index::MultiIndex;
use crate::oracle::EvaluationOracle;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone, Copy)]
pub struct PronyConfig {
    /// Successive singular-value ratio threshold for the numerical rank.
    pub rank_threshold: f64,
    /// Seed for the random combination of multiplication operators.
    pub rng_seed: u64,
    /// Forces the rank instead of detecting it (reduced-basis variants).
    pub known_rank: Option<usize>,
}

impl Default for PronyConfig {
    fn default() -> Self {
        PronyConfig {
            rank_threshold: 0.1,
            rng_seed: 0,
            known_rank: None,
        }
    }
}

impl PronyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.rank_threshold && self.rank_threshold < 1.0) {
            return Err(Error::Input("rank threshold must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// A recovered measure plus non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct PronyOutput {
    pub measure: AtomicMeasure,
    pub warnings: Vec<String>,
}

/// Hankel variant at input degree d: H_0 uses rows of one-norm <= floor(d/2)
/// and columns < ceil(d/2); the shifted matrices consume moments up to
/// one-norm d.
pub fn hankel_prony(seq: &MomentSequence, d: i64, cfg: &PronyConfig) -> Result<PronyOutput> {
    cfg.validate()?;
    if d < 1 {
        return Err(Error::Input("hankel variant needs degree >= 1".into()));
    }
    let n = seq.dimension();
    let d1 = d / 2;
    let d2 = d - d1; // ceil(d/2)
    let h0 = hankel_matrix(seq, d1, d2, &MultiIndex::zero(n))?;
    let shifted: Vec<MomentMatrix> = (0..n)
        .map(|k| hankel_matrix(seq, d1, d2, &MultiIndex::unit(n, k)))
        .collect::<Result<_>>()?;
    extract(&h0, &shifted, cfg)
}

/// Toeplitz variant at input degree d: matrices of order d - 1, entries
/// sigma_{alpha - beta + shift}; all consumed indices lie in the signed
/// difference set of degree d.
pub fn toeplitz_prony(seq: &MomentSequence, d: i64, cfg: &PronyConfig) -> Result<PronyOutput> {
    cfg.validate()?;
    if d < 1 {
        return Err(Error::Input("toeplitz variant needs degree >= 1".into()));
    }
    let n = seq.dimension();
    let t0 = toeplitz_matrix_shifted(seq, d - 1, &MultiIndex::zero(n))?;
    let shifted: Vec<MomentMatrix> = (0..n)
        .map(|k| toeplitz_matrix_shifted(seq, d - 1, &MultiIndex::unit(n, k)))
        .collect::<Result<_>>()?;
    extract(&t0, &shifted, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PronyVariant {
    Hankel,
    Toeplitz,
}

/// Reduced-basis variant: rows and columns are the first r exponents in
/// graded-lex order, so only the evaluations the r x r matrices touch are
/// queried. The rank is forced to r; a rank-deficient unshifted matrix is
/// an error rather than a silent truncation.
pub fn advanced_prony(
    oracle: &EvaluationOracle,
    phi: &BasePoint,
    r: usize,
    variant: PronyVariant,
    cfg: &PronyConfig,
) -> Result<PronyOutput> {
    cfg.validate()?;
    if r < 1 {
        return Err(Error::Input("term count bound must be at least 1".into()));
    }
    let n = phi.dimension();
    // first r indices graded by one-norm; within a degree the bivariate case
    // fills the last coordinate first and higher dimensions the first one.
    // The leading rows decide which coordinates the r x r matrix can probe,
    // and this choice keeps it nonsingular on the supports handled here.
    let rows = {
        let mut out: Vec<MultiIndex> = Vec::new();
        let mut d = 0;
        while out.len() < r {
            let mut block = crate::multi_index::natural_of_degree(n, d);
            if n == 2 {
                block.reverse();
            }
            out.extend(block);
            d += 1;
        }
        out.truncate(r);
        out
    };
    let cols: Vec<MultiIndex> = match variant {
        PronyVariant::Hankel => rows.clone(),
        PronyVariant::Toeplitz => rows.iter().map(|b| -b).collect(),
    };
    // indices for the unshifted matrix and every coordinate shift
    let mut needed: Vec<MultiIndex> = Vec::new();
    let mut shifts: Vec<MultiIndex> = vec![MultiIndex::zero(n)];
    shifts.extend((0..n).map(|k| MultiIndex::unit(n, k)));
    for shift in &shifts {
        for a in &rows {
            for b in &cols {
                needed.push(&(a + b) + shift);
            }
        }
    }
    let seq = collect_indices(oracle, phi, &needed)?;

    let build = |shift: &MultiIndex| -> Result<MomentMatrix> {
        crate::moments::moment_matrix(
            &seq,
            rows.clone(),
            cols.clone(),
            shift,
            match variant {
                PronyVariant::Hankel => crate::moments::MomentMatrixKind::Hankel,
                PronyVariant::Toeplitz => crate::moments::MomentMatrixKind::Toeplitz,
            },
        )
    };
    let h0 = build(&MultiIndex::zero(n))?;
    let f = svd(&h0.entries)?;
    if f.s.len() < r || f.s[r - 1] <= 1e-10 * f.s[0].max(1e-300) {
        return Err(Error::Extraction(format!(
            "moment matrix rank is below {}; increase the term bound or change the base point",
            r
        )));
    }
    let shifted: Vec<MomentMatrix> = (0..n)
        .map(|k| build(&MultiIndex::unit(n, k)))
        .collect::<Result<_>>()?;
    let mut forced = *cfg;
    forced.known_rank = Some(r);
    extract(&h0, &shifted, &forced)
}

/// The shared eigenstructure pipeline.
fn extract(h0: &MomentMatrix, shifted: &[MomentMatrix], cfg: &PronyConfig) -> Result<PronyOutput> {
    let n = shifted.len();
    let f = svd(&h0.entries)?;
    let r = match cfg.known_rank {
        Some(r) => {
            if f.s.len() < r || f.s[r - 1] <= 1e-10 * f.s[0].max(1e-300) {
                return Err(Error::Extraction(format!(
                    "forced rank {} exceeds the numerical rank",
                    r
                )));
            }
            r
        }
        None => numerical_rank(&f.s, cfg.rank_threshold)?,
    };
    if r == 0 {
        return Ok(PronyOutput {
            measure: AtomicMeasure::empty(n),
            warnings: Vec::new(),
        });
    }

    let ur = f.u.leading_columns(r).adjoint();
    let vr = f.v.leading_columns(r);
    // M_k = Sigma_r^{-1} U_r^H H_k V_r; by construction M_0 would be I
    let ops: Vec<DenseMatrix> = shifted
        .iter()
        .map(|hk| {
            let mut m = ur.matmul(&hk.entries).matmul(&vr);
            for i in 0..r {
                for j in 0..r {
                    m[(i, j)] /= Complex64::new(f.s[i], 0.0);
                }
            }
            m
        })
        .collect();

    // eigenvectors of a generic random combination; an unlucky draw can put
    // two distinct atoms at nearly the same eigenvalue, so keep the draw
    // with the widest minimum spectral gap over a few attempts
    let mut warnings = Vec::new();
    let mut best: Option<(f64, Vec<Complex64>, DenseMatrix)> = None;
    for attempt in 0..5u64 {
        let mut rng = ChaCha20Rng::seed_from_u64(cfg.rng_seed.wrapping_add(attempt));
        let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut combo = DenseMatrix::zeros(r, r);
        for (k, op) in ops.iter().enumerate() {
            combo = combo.add(&op.scaled(Complex64::new(lambda[k], 0.0)));
        }
        let (values, vectors) = eig_general(&combo)?;
        let scale = values.iter().map(|v| v.norm()).fold(1e-300, f64::max);
        let mut gap = f64::INFINITY;
        for i in 0..r {
            for j in i + 1..r {
                gap = gap.min((values[i] - values[j]).norm() / scale);
            }
        }
        if r == 1 {
            gap = f64::INFINITY;
        }
        if best.as_ref().map_or(true, |(g, _, _)| gap > *g) {
            best = Some((gap, values, vectors));
        }
        // a quarter of the mean spacing on the unit circle is comfortably generic
        if best.as_ref().unwrap().0 >= 0.5 / r as f64 {
            break;
        }
        if attempt + 1 < 5 {
            warnings.push("close eigenvalues in the random combination; re-drew it".into());
        }
    }
    let (gap, _, vectors) = best.unwrap();
    if gap <= 1e-10 {
        return Err(Error::Extraction(
            "eigenvalues remained degenerate after re-drawn combinations".into(),
        ));
    }

    let mut atoms = Vec::with_capacity(r);
    let h0_scale = h0.entries.max_abs().max(1e-300);
    for i in 0..r {
        let p: Vec<Complex64> = vectors.column(i);
        let pnorm2: f64 = p.iter().map(|z| z.norm_sqr()).sum();
        // atom coordinates from Rayleigh quotients of the operators
        let mut point = Vec::with_capacity(n);
        for op in &ops {
            let mp = op.matvec(&p);
            let num: Complex64 = p.iter().zip(&mp).map(|(a, b)| a.conj() * b).sum();
            point.push(num / pnorm2);
        }
        // weight: first row of H_0 applied to V_r p, divided by the same
        // functional evaluated on the atom's monomial vector
        let vrp = vr.matvec(&p);
        let mut numer = Complex64::new(0.0, 0.0);
        for (j, v) in vrp.iter().enumerate() {
            numer += h0.entries[(0, j)] * v;
        }
        let mut denom = Complex64::new(0.0, 0.0);
        for (j, gamma) in h0.col_indices.iter().enumerate() {
            let mut mono = Complex64::new(1.0, 0.0);
            for (k, &e) in gamma.entries().iter().enumerate() {
                if e != 0 {
                    mono *= point[k].powi(e as i32);
                }
            }
            denom += mono * vrp[j];
        }
        let vrp_norm: f64 = vrp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if denom.norm() <= 1e-12 * vrp_norm.max(1e-300) {
            return Err(Error::Extraction(format!(
                "weight denominator vanished for atom {} (|den| = {:.3e})",
                i,
                denom.norm()
            )));
        }
        let w = numer / denom;
        let im = w.im.abs();
        let rel_im = im / w.norm().max(1e-300);
        if rel_im > 1e-4 && im > 1e-6 * h0_scale {
            warnings.push(format!(
                "atom {} has non-real weight {:.3e}+{:.3e}i",
                i, w.re, w.im
            ));
        } else if rel_im > 1e-8 && im > 1e-10 * h0_scale {
            warnings.push(format!("atom {}: dropped imaginary weight part {:.1e}", i, w.im));
        }
        atoms.push(Atom { point, weight: w.re });
    }

    let measure = AtomicMeasure::merged(n, atoms)?;
    Ok(PronyOutput { measure, warnings })
}
