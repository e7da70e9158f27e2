//! Exact value-distribution machinery for generalized Gauss maps of
//! minimal surfaces on annular ends.
//!
//! The crate keeps two layers strictly apart:
//!
//! * an **exact layer** over the Gaussian rationals (Laurent polynomials,
//!   Wronskian ladders, hyperplane position predicates, Nochka weights,
//!   divisor orders, the exponent pipeline) where every number is a
//!   `BigRational` and every identity is checked by exact equality;
//! * a **numeric layer** (root localization, contact functions, metric
//!   densities, flatness and divergence probes) where floats appear only at
//!   the evaluation boundary, fed by the exact layer.
//!
//! Polynomials are generic over the coefficient scalar; the two
//! instantiations used throughout are [`ExactPoly`] (exact) and [`NumPoly`]
//! (complex f64, for grids and probes).

pub mod error;
pub mod exactnum;
pub mod metriclab;
pub mod minsurf;
pub mod nochka;
pub mod position;
pub mod util;
pub mod verifier;
pub mod wronskian;

pub use error::{Error, Result};
pub use exactnum::{Gaussian, LaurentPoly, Multiplicity, RootInAnnulus, RootPolicy};

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;
/// Complex double, the numeric-evaluation scalar.
pub type Complex64 = num_complex::Complex<f64>;
/// Laurent polynomial over the exact coefficient field.
pub type ExactPoly = LaurentPoly<Gaussian>;
/// Laurent polynomial over complex doubles.
pub type NumPoly = LaurentPoly<Complex64>;

/// Default cap on subset enumeration (desk scale by contract).
pub const DEFAULT_SUBSET_CAP: u128 = 1_000_000;

pub(crate) fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
