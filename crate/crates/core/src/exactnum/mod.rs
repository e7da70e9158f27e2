//! Exact arithmetic core: Gaussian rationals, Laurent polynomials,
//! factor arithmetic, exact linear algebra, and certified numeric root
//! localization on annuli.

pub mod factor;
pub mod gaussian;
pub mod laurent;
pub mod linalg;
pub mod roots;

pub use factor::{
    coprime_basis, exact_div, gcd, squarefree, BasisExponents, CoprimeBasis,
    SquareFreeDecomposition,
};
pub use gaussian::{parse_rational, rational_to_f64, Gaussian};
pub use laurent::{Coeff, LaurentPoly};
pub use roots::{
    min_zero_multiplicity, roots_in_annulus, roots_in_ring, Multiplicity, RootInAnnulus,
    RootPolicy, DEFAULT_ROOT_TOLERANCE,
};

use crate::error::Result;
use crate::{Complex64, ExactPoly};

/// Default working precision knob for numeric evaluation, in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Evaluates an exact polynomial at a complex float point.
///
/// The computation is exact over the Gaussian rationals (the point converts
/// exactly, floats being rationals) with a single rounding into the f64
/// output, so the result is correctly rounded up to one ulp per component.
/// `precision` is capped by the 53-bit output format; values above it only
/// affect downstream refinement budgets, never accuracy here.
pub fn eval(p: &ExactPoly, z: Complex64, precision: u32) -> Result<Complex64> {
    let _ = precision;
    p.eval_complex(z)
}
