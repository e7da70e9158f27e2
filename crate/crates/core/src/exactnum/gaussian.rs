//! Gaussian rationals: exact complex numbers with rational real and
//! imaginary parts. This is the coefficient field for everything exact in
//! the crate. `num_rational::BigRational` keeps each part in lowest terms
//! with a positive denominator, so the type's invariants hold by
//! construction.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::{Complex64, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    pub fn from_rational(re: Rational) -> Self {
        Gaussian::new(re, Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    /// |a|^2 = re^2 + im^2, exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Gaussian::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Gaussian::new(&self.re * r, &self.im * r)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Exact conversion from an f64 pair (every finite float is rational).
    pub fn from_complex_exact(z: Complex64) -> Option<Self> {
        Some(Gaussian::new(
            Rational::from_float(z.re)?,
            Rational::from_float(z.im)?,
        ))
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::from_int(1)
    }
}

impl FromPrimitive for Gaussian {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Gaussian::from_int(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Gaussian::from_rational(Rational::from_integer(BigInt::from(
            n,
        ))))
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a Gaussian> for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &'a Gaussian) -> Gaussian {
        Gaussian::new(self.re + &rhs.re, self.im + &rhs.im)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, rhs: Gaussian) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign for Gaussian {
    fn sub_assign(&mut self, rhs: Gaussian) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        (&self).mul(&rhs)
    }
}

impl<'a, 'b> Mul<&'b Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &'b Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl MulAssign for Gaussian {
    fn mul_assign(&mut self, rhs: Gaussian) {
        *self = (&*self).mul(&rhs);
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    fn div(self, rhs: Gaussian) -> Gaussian {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        (&self).mul(&inv)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            first = false;
        }
        if !self.im.is_zero() {
            if first {
                if self.im == Rational::one() {
                    write!(f, "i")?;
                } else if self.im == -Rational::one() {
                    write!(f, "-i")?;
                } else {
                    write!(f, "{}i", self.im)?;
                }
            } else if self.im.is_positive() {
                if self.im == Rational::one() {
                    write!(f, "+i")?;
                } else {
                    write!(f, "+{}i", self.im)?;
                }
            } else if self.im == -Rational::one() {
                write!(f, "-i")?;
            } else {
                write!(f, "{}i", self.im)?;
            }
        }
        Ok(())
    }
}

/// Parses "p/q" or "p" into an exact rational. Rejects zero denominators.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational string".to_string());
    }
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}"))?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let num = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
            let den = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Rounds a big rational to the nearest f64, robust to operands far outside
/// the f64 exponent range (both parts are shifted together before dividing).
pub fn rational_to_f64(r: &Rational) -> f64 {
    bigint_ratio_to_f64(r.numer(), r.denom())
}

pub fn bigint_ratio_to_f64(numer: &BigInt, denom: &BigInt) -> f64 {
    if numer.is_zero() {
        return 0.0;
    }
    debug_assert!(!denom.is_zero());
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    // keep both operands comfortably inside the f64 exponent range
    let shift = nb.max(db) - 512;
    if shift > 0 {
        let s = shift as u64;
        if db <= shift {
            // ratio magnitude is at least 2^(nb-db) with nb-db >= ~512: saturate
            return if numer.sign() == denom.sign() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        let n = numer >> s;
        let d = denom >> s;
        if n.is_zero() {
            return 0.0;
        }
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    } else {
        numer.to_f64().unwrap_or(f64::NAN) / denom.to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for Gaussian {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            re: String,
            im: String,
            #[serde(skip)]
            _p: std::marker::PhantomData<&'a ()>,
        }
        Repr {
            re: self.re.to_string(),
            im: self.im.to_string(),
            _p: std::marker::PhantomData,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Gaussian {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            re: String,
            #[serde(default)]
            im: Option<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let re = parse_rational(&repr.re).map_err(D::Error::custom)?;
        let im = match repr.im {
            Some(s) => parse_rational(&s).map_err(D::Error::custom)?,
            None => Rational::zero(),
        };
        Ok(Gaussian::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::new(
            Rational::from_integer(BigInt::from(re)),
            Rational::from_integer(BigInt::from(im)),
        )
    }

    #[test]
    fn conjugation_is_involution() {
        let a = g(3, -7);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn field_arithmetic() {
        let a = g(1, 2);
        let b = g(3, -1);
        assert_eq!(a.clone() * b.clone(), g(5, 5));
        let inv = b.inv().unwrap();
        assert_eq!((&b).mul(&inv), Gaussian::one());
        assert_eq!(a.clone() / a.clone(), Gaussian::one());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(parse_rational("-4").unwrap(), Rational::from_integer(BigInt::from(-4)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(2, 3).to_string(), "2+3i");
        assert_eq!(Gaussian::zero().to_string(), "0");
    }

    #[test]
    fn rational_f64_roundtrip() {
        let r = Rational::new(BigInt::from(1), BigInt::from(3));
        assert!((rational_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
        // huge operands with moderate ratio
        let big = BigInt::from(7) << 2000u32;
        let r = Rational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
