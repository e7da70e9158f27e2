//! Numeric root localization for exact Laurent polynomials, restricted to
//! annuli A = {1/r < |z| < r}. Multiplicities come from the exact
//! square-free decomposition; only root positions are floating point.
//!
//! Each square-free factor is solved by a Durand-Kerner sweep followed by
//! Newton refinement against the exact polynomial. A root is certified when
//! its refinement radius stays clear of both boundary circles by more than
//! the configured tolerance; strict mode turns an uncertified root into an
//! error, lenient mode reports it flagged.

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::factor::{split_monomial, squarefree};
use crate::exactnum::gaussian::rational_to_f64;
use crate::{Complex64, ExactPoly, NumPoly, Rational};

/// Default tolerance for boundary certification.
pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-9;

/// Zero order of a pairing on the annulus: finite, or infinite when the
/// function has no zeros there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    /// True when m > k (the profile-keeping predicate; infinity passes).
    pub fn exceeds(&self, k: usize) -> bool {
        match self {
            Multiplicity::Finite(m) => (*m as usize) > k,
            Multiplicity::Infinite => true,
        }
    }

    /// 1 - k/m, with the convention 1 - k/inf = 1. Exact.
    pub fn one_minus_ratio(&self, k: usize) -> Rational {
        match self {
            Multiplicity::Finite(m) => {
                Rational::one() - Rational::new((k as i64).into(), (*m as i64).into())
            }
            Multiplicity::Infinite => Rational::one(),
        }
    }

    /// 1/m with 1/inf = 0. Exact.
    pub fn reciprocal(&self) -> Rational {
        match self {
            Multiplicity::Finite(m) => Rational::new(1.into(), (*m as i64).into()),
            Multiplicity::Infinite => Rational::zero(),
        }
    }
}

impl std::fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(m) => s.serialize_u32(*m),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json_value::Value::deserialize(d)?;
        match v {
            serde_json_value::Value::U64(m) => Ok(Multiplicity::Finite(m as u32)),
            serde_json_value::Value::Str(s) if s == "inf" => Ok(Multiplicity::Infinite),
            _ => Err(D::Error::custom("expected a positive integer or \"inf\"")),
        }
    }
}

// tiny self-contained stand-in so the core crate does not depend on serde_json
mod serde_json_value {
    use serde::Deserialize;

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum Value {
        U64(u64),
        Str(String),
    }
}

/// Strictness for boundary-ambiguous roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootPolicy {
    Strict,
    #[default]
    Lenient,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootInAnnulus {
    pub re: f64,
    pub im: f64,
    pub multiplicity: u32,
    pub certified: bool,
}

impl RootInAnnulus {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// All complex roots of a square-free ordinary polynomial (order 0),
/// with a refinement-radius estimate per root.
pub fn complex_roots_squarefree(factor: &ExactPoly) -> Vec<(Complex64, f64)> {
    let (ord, poly) = split_monomial(factor);
    debug_assert_eq!(ord, 0, "caller strips monomials");
    let deg = poly.degree().unwrap_or(0);
    if deg <= 0 {
        return Vec::new();
    }
    let n = deg as usize;
    // monic float coefficients, ascending and dense
    let lead = poly.leading().unwrap();
    let inv = lead.inv().expect("nonzero leading coefficient");
    let monic = poly.scale(&inv);
    let num: NumPoly = monic.to_num();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    for (e, c) in num.terms() {
        coeffs[e as usize] = *c;
    }
    let radius = 1.0
        + coeffs
            .iter()
            .take(n)
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);

    let eval_dense = |w: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * w + c;
        }
        acc
    };

    // Durand-Kerner from a slightly rotated circle of start points
    let mut ws: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= ws[i] - ws[j];
                }
            }
            if denom.norm() == 0.0 {
                ws[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval_dense(ws[i]) / denom;
            ws[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius.max(1.0) {
            break;
        }
    }

    // Newton polish against the exact polynomial (evaluated exactly, rounded
    // once), plus a residual-based radius
    let dmonic = monic.derivative();
    ws.into_iter()
        .map(|mut w| {
            let mut radius_est = f64::INFINITY;
            for _ in 0..8 {
                let pv = monic.eval_complex(w).unwrap_or(Complex64::new(f64::NAN, 0.0));
                let dv = dmonic.eval_complex(w).unwrap_or(Complex64::new(0.0, 0.0));
                if !pv.is_finite() || dv.norm() == 0.0 {
                    break;
                }
                let step = pv / dv;
                radius_est = step.norm();
                if radius_est < 1e-16 * (1.0 + w.norm()) {
                    w -= step;
                    break;
                }
                w -= step;
            }
            let err = 4.0 * radius_est + 1e-14 * (1.0 + w.norm());
            (w, err)
        })
        .collect()
}

/// Roots of p inside the open ring {inner < |z| < outer}, with exact
/// multiplicities and boundary certification flags.
pub fn roots_in_ring(
    p: &ExactPoly,
    inner: &Rational,
    outer: &Rational,
    tol: f64,
    policy: RootPolicy,
) -> Result<Vec<RootInAnnulus>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if inner >= outer {
        return Err(Error::InvalidRegion {
            detail: "ring inner radius must be below outer radius".to_string(),
        });
    }
    let inner_f = rational_to_f64(inner);
    let outer_f = rational_to_f64(outer);
    let dec = squarefree(p)?;
    let mut found = Vec::new();
    for (factor, mult) in &dec.parts {
        if factor == &ExactPoly::variable() {
            continue; // origin is never in a ring with inner >= 0
        }
        for (w, err) in complex_roots_squarefree(factor) {
            let rho = w.norm();
            let near_inner = (rho - inner_f).abs() <= tol + err && inner_f > 0.0;
            let near_outer = (rho - outer_f).abs() <= tol + err;
            let certified = !(near_inner || near_outer);
            let inside = rho > inner_f && rho < outer_f;
            if !certified {
                match policy {
                    RootPolicy::Strict => {
                        let boundary = if near_inner { inner_f } else { outer_f };
                        return Err(Error::BoundaryAmbiguous {
                            modulus: rho,
                            boundary,
                        });
                    }
                    RootPolicy::Lenient => {
                        if inside {
                            found.push(RootInAnnulus {
                                re: w.re,
                                im: w.im,
                                multiplicity: *mult,
                                certified: false,
                            });
                        }
                        continue;
                    }
                }
            }
            if inside {
                found.push(RootInAnnulus {
                    re: w.re,
                    im: w.im,
                    multiplicity: *mult,
                    certified: true,
                });
            }
        }
    }
    found.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(found)
}

/// Roots inside the open annulus A = {1/r < |z| < r}, r > 1.
pub fn roots_in_annulus(
    p: &ExactPoly,
    r: &Rational,
    tol: f64,
    policy: RootPolicy,
) -> Result<Vec<RootInAnnulus>> {
    if *r <= Rational::one() {
        return Err(Error::InvalidAnnulus { r: r.to_string() });
    }
    let inner = Rational::one() / r.clone();
    roots_in_ring(p, &inner, r, tol, policy)
}

/// Minimum zero multiplicity of p on the open annulus; Infinite if p has no
/// zeros there.
pub fn min_zero_multiplicity(
    p: &ExactPoly,
    r: &Rational,
    tol: f64,
    policy: RootPolicy,
) -> Result<Multiplicity> {
    let roots = roots_in_annulus(p, r, tol, policy)?;
    Ok(roots
        .iter()
        .map(|rt| Multiplicity::Finite(rt.multiplicity))
        .min()
        .unwrap_or(Multiplicity::Infinite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = ExactPoly;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn roots_basic_examples() {
        // 1 - z^2 on r=2: roots +-1, multiplicity 1
        let p = P::from_int_coeffs(&[(0, 1), (2, -1)]);
        let roots = roots_in_annulus(&p, &rat(2), 1e-9, RootPolicy::Strict).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.multiplicity == 1 && r.certified));
        assert!(roots.iter().any(|r| (r.value() - Complex64::new(1.0, 0.0)).norm() < 1e-10));
        assert!(roots.iter().any(|r| (r.value() + Complex64::new(1.0, 0.0)).norm() < 1e-10));

        // 2z: origin excluded
        let p = P::from_int_coeffs(&[(1, 2)]);
        assert!(roots_in_annulus(&p, &rat(2), 1e-9, RootPolicy::Strict)
            .unwrap()
            .is_empty());

        // (z-3)^2: no roots in annulus
        let p = P::from_int_coeffs(&[(0, 9), (1, -6), (2, 1)]);
        assert!(roots_in_annulus(&p, &rat(2), 1e-9, RootPolicy::Strict)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn min_multiplicity_examples() {
        let p = P::from_int_coeffs(&[(0, 1), (2, -1)]);
        assert_eq!(
            min_zero_multiplicity(&p, &rat(2), 1e-9, RootPolicy::Strict).unwrap(),
            Multiplicity::Finite(1)
        );
        // (z-1)^3 (z-5): root 5 excluded
        let zm1 = P::from_int_coeffs(&[(0, -1), (1, 1)]);
        let zm5 = P::from_int_coeffs(&[(0, -5), (1, 1)]);
        let p = &zm1.pow(3) * &zm5;
        assert_eq!(
            min_zero_multiplicity(&p, &rat(2), 1e-9, RootPolicy::Strict).unwrap(),
            Multiplicity::Finite(3)
        );
        let p = P::from_int_coeffs(&[(1, 2)]);
        assert_eq!(
            min_zero_multiplicity(&p, &rat(2), 1e-9, RootPolicy::Strict).unwrap(),
            Multiplicity::Infinite
        );
    }

    #[test]
    fn boundary_ambiguity_strict_vs_lenient() {
        // root exactly on |z| = 2
        let p = P::from_int_coeffs(&[(0, -2), (1, 1)]);
        let err = roots_in_annulus(&p, &rat(2), 1e-6, RootPolicy::Strict);
        assert!(matches!(err, Err(Error::BoundaryAmbiguous { .. })));
        let ok = roots_in_annulus(&p, &rat(2), 1e-6, RootPolicy::Lenient).unwrap();
        assert!(ok.is_empty() || !ok[0].certified);
    }

    #[test]
    fn high_degree_factor_roots() {
        // product of (z - j/2) for j=1..6, squarefree sextic
        let mut p = P::one();
        for j in 1..=6i64 {
            let lin = P::from_terms(vec![
                (0, crate::Gaussian::new(Rational::new((-j).into(), 2.into()), Rational::zero())),
                (1, crate::Gaussian::from_int(1)),
            ]);
            p = &p * &lin;
        }
        let roots = roots_in_annulus(&p, &rat(2), 1e-9, RootPolicy::Strict).unwrap();
        // j/2 in (1/2, 2) for j = 2, 3 -> roots 1.0, 1.5
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|r| (r.re - 1.0).abs() < 1e-9));
        assert!(roots.iter().any(|r| (r.re - 1.5).abs() < 1e-9));
    }

    #[test]
    fn multiplicity_enum_arithmetic() {
        assert_eq!(
            Multiplicity::Finite(3).one_minus_ratio(2),
            Rational::new(1.into(), 3.into())
        );
        assert_eq!(Multiplicity::Infinite.one_minus_ratio(5), Rational::one());
        assert_eq!(Multiplicity::Infinite.reciprocal(), Rational::zero());
        assert!(Multiplicity::Infinite.exceeds(1000));
        assert!(Multiplicity::Finite(3).exceeds(2));
        assert!(!Multiplicity::Finite(2).exceeds(2));
        assert!(Multiplicity::Finite(7) < Multiplicity::Infinite);
    }
}
