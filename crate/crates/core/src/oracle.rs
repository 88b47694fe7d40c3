//! The black-box evaluation oracle: caches distinct query points, counts
//! them, and optionally perturbs values with bounded uniform noise.

use crate::error::Result;
use crate::poly::SparsePolynomial;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::collections::HashMap;
use std::sync::Mutex;

/// Uniform complex noise: Re and Im drawn i.i.d. on [-amplitude, amplitude].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub amplitude: f64,
    pub rng_seed: u64,
}

impl NoiseModel {
    pub fn new(amplitude: f64, rng_seed: u64) -> Self {
        NoiseModel { amplitude, rng_seed }
    }
}

/// Stable fingerprint of an evaluation point, used both as the cache key and
/// to derive the per-point noise stream (so noise is reproducible and does
/// not depend on query order).
fn point_key(point: &[Complex64]) -> Vec<u64> {
    point
        .iter()
        .flat_map(|z| [z.re.to_bits(), z.im.to_bits()])
        .collect()
}

fn fnv1a(words: &[u64]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for w in words {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

struct OracleState {
    cache: HashMap<Vec<u64>, Complex64>,
    counter: usize,
}

/// Black-box access to a hidden polynomial. Evaluations are cached per
/// distinct point; repeated queries neither re-randomize noise nor increment
/// the counter.
pub struct EvaluationOracle {
    target: SparsePolynomial,
    noise: Option<NoiseModel>,
    state: Mutex<OracleState>,
}

impl EvaluationOracle {
    pub fn new(target: SparsePolynomial, noise: Option<NoiseModel>) -> Self {
        EvaluationOracle {
            target,
            noise,
            state: Mutex::new(OracleState {
                cache: HashMap::new(),
                counter: 0,
            }),
        }
    }

    pub fn dimension(&self) -> usize {
        self.target.dimension()
    }

    /// Number of distinct evaluation points queried so far.
    pub fn evaluation_count(&self) -> usize {
        self.state.lock().unwrap().counter
    }

    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        let key = point_key(point);
        {
            let state = self.state.lock().unwrap();
            if let Some(&v) = state.cache.get(&key) {
                return Ok(v);
            }
        }
        let mut value = self.target.evaluate(point)?;
        if let Some(noise) = &self.noise {
            let mut rng = ChaCha20Rng::seed_from_u64(noise.rng_seed ^ fnv1a(&key));
            let re: f64 = rng.gen_range(-noise.amplitude..=noise.amplitude);
            let im: f64 = rng.gen_range(-noise.amplitude..=noise.amplitude);
            value += Complex64::new(re, im);
        }
        let mut state = self.state.lock().unwrap();
        // a racing thread may have inserted meanwhile; keep the first value
        if !state.cache.contains_key(&key) {
            state.counter += 1;
            state.cache.insert(key.clone(), value);
        }
        Ok(state.cache[&key])
    }
}
