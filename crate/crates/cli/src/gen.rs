//! Random problem instances: distinct exponents from the degree-d simplex,
//! coefficients uniform in [-10, 10] bounded away from zero.

use interp_core::error::{Error, Result};
use interp_core::multi_index::natural_up_to;
use interp_core::poly::{Instance, SparsePolynomial};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Coefficients are re-drawn until their magnitude clears this floor, so the
/// instance's sparsity is well defined under the rank threshold.
pub const COEFFICIENT_FLOOR: f64 = 0.1;

fn simplex_size(n: usize, d: i64) -> u128 {
    // C(n + d, n) with saturation
    let mut acc: u128 = 1;
    for k in 1..=n as u128 {
        acc = acc.saturating_mul(d as u128 + k);
        acc /= k;
    }
    acc
}

/// Draws `sparsity` distinct exponents uniformly from the one-norm simplex
/// of degree `degree` and pairs them with nonzero uniform coefficients;
/// deterministic per seed.
pub fn generate_instance(
    n: usize,
    degree: i64,
    sparsity: usize,
    seed: u64,
) -> Result<SparsePolynomial> {
    if n == 0 {
        return Err(Error::Input("dimension must be positive".into()));
    }
    if degree < 0 {
        return Err(Error::Input("degree must be nonnegative".into()));
    }
    if sparsity == 0 {
        return Err(Error::Input("sparsity must be positive".into()));
    }
    let size = simplex_size(n, degree);
    if (sparsity as u128) > size {
        return Err(Error::Input(format!(
            "sparsity {} exceeds the {} exponents of one-norm degree <= {}",
            sparsity, size, degree
        )));
    }
    if size > 5_000_000 {
        return Err(Error::Input(
            "exponent simplex too large to enumerate for sampling".into(),
        ));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let pool = natural_up_to(n, degree);
    let chosen = pool.choose_multiple(&mut rng, sparsity).cloned();
    let mut terms = Vec::with_capacity(sparsity);
    for beta in chosen {
        let c = loop {
            let c: f64 = rng.gen_range(-10.0..=10.0);
            if c.abs() >= COEFFICIENT_FLOOR {
                break c;
            }
        };
        terms.push((beta, c));
    }
    SparsePolynomial::new(n, terms)
}

/// Same draw packaged for serialization; the degree bound is the requested
/// simplex degree.
pub fn generate_instance_record(n: usize, degree: i64, sparsity: usize, seed: u64) -> Result<Instance> {
    let g = generate_instance(n, degree, sparsity, seed)?;
    Ok(Instance::from_polynomial(&g, degree, seed))
}
