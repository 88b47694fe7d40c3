//! Sparse polynomial interpolation from black-box evaluations.
//!
//! The unknown polynomial `g` is only accessible through point evaluations.
//! On the torus, evaluations at powers of a base point are moments of the
//! atomic measure whose atoms encode the support of `g`; every method here
//! recovers that measure and decodes it back to a polynomial:
//!
//! * Prony eigenstructure methods (Hankel, Toeplitz, and reduced-basis
//!   "advanced" variants) — [`prony`];
//! * l1-minimization linear programs over candidate exponent grids — [`lp`];
//! * a total-variation-minimizing semidefinite hierarchy with flat-extension
//!   certificates — [`sdp`].
//!
//! Shared infrastructure: multi-indices and index schemes ([`multi_index`],
//! [`moments`]), polynomials/measures/oracles ([`poly`], [`measure`],
//! [`oracle`]), dense complex linear algebra ([`linalg`]), and exponent
//! decoding plus error scoring ([`recover`]).

pub mod base_point;
pub mod catalog;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod measure;
pub mod moments;
pub mod multi_index;
pub mod oracle;
pub mod poly;
pub mod prony;
pub mod recover;
pub mod sdp;

pub use base_point::{BasePoint, PointScheme};
pub use error::{Error, Result};
pub use measure::AtomicMeasure;
pub use moments::{IndexScheme, MomentSequence, SchemeKind};
pub use multi_index::MultiIndex;
pub use oracle::{EvaluationOracle, NoiseModel};
pub use poly::SparsePolynomial;

pub use num_complex::Complex64;
