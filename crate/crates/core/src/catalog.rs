//! Ten bundled benchmark polynomials spanning one to ten variables, indexed
//! 1 through 10. Every instance carries the same degree bound of 10: the
//! benchmark treats only the number of variables and that common upper bound
//! as known, never the true degree.

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::poly::{Instance, SparsePolynomial};

fn poly(dimension: usize, terms: &[(&[i64], f64)]) -> SparsePolynomial {
    SparsePolynomial::new(
        dimension,
        terms
            .iter()
            .map(|&(e, c)| (MultiIndex::new(e.to_vec()), c))
            .collect::<Vec<_>>(),
    )
    .expect("catalog entries are well formed")
}

/// All bundled polynomials in index order.
pub fn bundled_polynomials() -> Vec<SparsePolynomial> {
    vec![
        // univariate
        poly(1, &[(&[4], -1.2), (&[7], 6.7)]),
        poly(1, &[(&[6], 2.3), (&[3], 5.6), (&[2], -1.5)]),
        poly(
            1,
            &[(&[3], -2.1), (&[2], 5.4), (&[1], -2.0), (&[5], 6.2), (&[0], -5.2)],
        ),
        // bivariate
        poly(2, &[(&[1, 1], 0.8), (&[1, 2], -1.0)]),
        poly(
            2,
            &[(&[2, 2], -5.8), (&[2, 3], -8.2), (&[3, 1], 5.5), (&[0, 0], 1.1)],
        ),
        poly(
            2,
            &[
                (&[1, 2], -7.2),
                (&[3, 2], 1.8),
                (&[4, 5], 2.6),
                (&[1, 5], 6.2),
                (&[1, 0], 2.5),
            ],
        ),
        // three variables
        poly(3, &[(&[0, 0, 0], -3.5), (&[3, 1, 1], 8.1)]),
        poly(
            3,
            &[(&[2, 2, 3], -1.2), (&[2, 1, 0], 7.3), (&[0, 1, 0], -2.4)],
        ),
        // five and ten variables
        poly(
            5,
            &[
                (&[2, 0, 0, 0, 1], -6.1),
                (&[0, 1, 0, 1, 0], 2.5),
                (&[0, 0, 1, 0, 0], 4.8),
            ],
        ),
        poly(
            10,
            &[
                (&[0, 1, 1, 0, 0, 0, 0, 0, 4, 1], 2.9),
                (&[1, 0, 0, 2, 0, 0, 1, 0, 0, 0], -5.6),
                (&[0, 0, 1, 0, 1, 3, 0, 1, 0, 0], -4.1),
            ],
        ),
    ]
}

/// Shared degree bound under which every bundled instance is interpolated.
pub const BUNDLED_DEGREE_BOUND: i64 = 10;

/// Bundled instance by 1-based index.
pub fn bundled_instance(index: usize) -> Result<Instance> {
    let polys = bundled_polynomials();
    if index == 0 || index > polys.len() {
        return Err(Error::Input(format!(
            "instance index {} out of range 1..={}",
            index,
            polys.len()
        )));
    }
    let g = &polys[index - 1];
    Ok(Instance::from_polynomial(g, BUNDLED_DEGREE_BOUND, index as u64))
}

pub fn bundled_count() -> usize {
    bundled_polynomials().len()
}
