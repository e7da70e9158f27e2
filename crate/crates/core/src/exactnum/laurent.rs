//! Laurent polynomials: finitely supported maps from integer exponents to
//! coefficients, generic over the scalar. The exact pipeline instantiates
//! the coefficient at [`Gaussian`]; numeric grid work instantiates it at
//! `Complex64` (see the `ExactPoly` / `NumPoly` aliases at the crate root).
//!
//! Invariant: no zero coefficient is ever stored, so the zero polynomial
//! has empty support and `order`/`degree` are well defined on nonzero
//! elements.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::gaussian::Gaussian;
use crate::{Complex64, Rational};

/// Coefficient scalar for [`LaurentPoly`]. Both instantiations used by the
/// crate are fields, so an inverse is part of the contract.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + FromPrimitive
{
    fn inv(&self) -> Option<Self>;
}

impl Coeff for Gaussian {
    fn inv(&self) -> Option<Self> {
        Gaussian::inv(self).ok()
    }
}

impl Coeff for Complex64 {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// c * z^pow
    pub fn monomial(pow: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(pow, c);
        }
        LaurentPoly { terms }
    }

    /// z
    pub fn variable() -> Self {
        Self::monomial(1, C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, pow: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&pow) {
            None => {
                self.terms.insert(pow, c);
            }
            Some(old) => {
                let mut sum = old;
                sum = add_c(sum, c);
                if !sum.is_zero() {
                    self.terms.insert(pow, sum);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Minimal exponent of the support (None for the zero polynomial).
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Maximal exponent of the support.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, pow: i64) -> C {
        self.terms.get(&pow).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    /// True when the support is a single exponent (units of the Laurent ring).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.terms.len() == 1 && self.terms.contains_key(&0))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e, mul_c(a.clone(), c.clone())))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, pow: i64, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e + pow, mul_c(a.clone(), c.clone())))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// Term-wise formal derivative; the derivative of zero is zero.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if *e == 0 {
                continue;
            }
            let factor = C::from_i64(*e).expect("small integer fits the scalar");
            out.add_term(*e - 1, mul_c(c.clone(), factor));
        }
        out
    }

    /// p(1/z): exponent-wise negation of the support. An exact involution.
    pub fn substitute_inverse(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-*e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Horner evaluation. Negative exponents need z != 0.
    pub fn eval(&self, z: &C) -> Result<C> {
        if self.is_zero() {
            return Ok(C::zero());
        }
        let ord = self.order().unwrap();
        if ord < 0 && z.is_zero() {
            return Err(Error::EvalAtOrigin);
        }
        // Horner over descending exponents of p / z^ord, then multiply z^ord.
        let mut acc = C::zero();
        let mut prev: Option<i64> = None;
        for (e, c) in self.terms.iter().rev() {
            if let Some(pe) = prev {
                let gap = (pe - e) as u32;
                acc = mul_c(acc, pow_c(z.clone(), gap));
            }
            acc = add_c(acc, c.clone());
            prev = Some(*e);
        }
        // acc now equals p(z) / z^ord
        if ord >= 0 {
            Ok(mul_c(acc, pow_c(z.clone(), ord as u32)))
        } else {
            let zi = z.inv().ok_or(Error::EvalAtOrigin)?;
            Ok(mul_c(acc, pow_c(zi, (-ord) as u32)))
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

fn add_c<C: Coeff>(a: C, b: C) -> C {
    a + b
}

fn mul_c<C: Coeff>(a: C, b: C) -> C {
    a * b
}

fn pow_c<C: Coeff>(base: C, mut n: u32) -> C {
    let mut acc = C::one();
    let mut b = base;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_c(acc, b.clone());
        }
        b = mul_c(b.clone(), b);
        n >>= 1;
    }
    acc
}

impl<'a, 'b, C: Coeff> Add<&'b LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &'b LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        (&self).add(&rhs)
    }
}

impl<'a, 'b, C: Coeff> Sub<&'b LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &'b LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        (&self).sub(&rhs)
    }
}

impl<'a, 'b, C: Coeff> Mul<&'b LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &'b LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, mul_c(c1.clone(), c2.clone()));
            }
        }
        out
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        (&self).mul(&rhs)
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

// --- exact instantiation conveniences ---

impl LaurentPoly<Gaussian> {
    pub fn from_int_coeffs(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|(e, c)| (*e, Gaussian::from_int(*c))))
    }

    pub fn to_num(&self) -> LaurentPoly<Complex64> {
        self.map_coeffs(Gaussian::to_complex)
    }

    /// Exact evaluation at a complex float point: the point is converted
    /// exactly (finite floats are rationals), the Horner recursion runs over
    /// the Gaussian rationals, and a single rounding happens at the end.
    /// The relative error is therefore one f64 rounding per component,
    /// regardless of degree or conditioning.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidInput {
                detail: "evaluation point is not finite".to_string(),
            });
        }
        let zg = Gaussian::from_complex_exact(z).ok_or(Error::InvalidInput {
            detail: "evaluation point is not finite".to_string(),
        })?;
        Ok(self.eval(&zg)?.to_complex())
    }

    /// Exact evaluation at an exact point.
    pub fn eval_exact(&self, z: &Gaussian) -> Result<Gaussian> {
        self.eval(z)
    }

    /// Content: the common rational scale of all coefficients is not
    /// canonicalized here; this returns the leading coefficient so callers
    /// can build monic associates.
    pub fn leading(&self) -> Option<Gaussian> {
        self.leading_coeff().cloned()
    }

    /// Sum of |coeff|^2, used for float-side normalizations.
    pub fn coeff_norm_sqr(&self) -> Rational {
        let mut acc = Rational::zero();
        for (_, c) in self.terms() {
            acc += c.norm_sqr();
        }
        acc
    }
}

impl fmt::Display for LaurentPoly<Gaussian> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let needs_parens = cs.contains('+') || (cs.rfind('-').unwrap_or(0) > 0);
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *e == 0 {
                write!(f, "{cs}")?;
            } else {
                let var = if *e == 1 {
                    "z".to_string()
                } else {
                    format!("z^{e}")
                };
                if cs == "1" {
                    write!(f, "{var}")?;
                } else if cs == "-1" {
                    write!(f, "-{var}")?;
                } else if needs_parens {
                    write!(f, "({cs})*{var}")?;
                } else {
                    write!(f, "{cs}*{var}")?;
                }
            }
        }
        Ok(())
    }
}

// --- serde: array of {"pow": int, "c": Gaussian} ---

impl Serialize for LaurentPoly<Gaussian> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            pow: i64,
            c: &'a Gaussian,
        }
        let v: Vec<Term> = self.terms.iter().map(|(e, c)| Term { pow: *e, c }).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly<Gaussian> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            pow: i64,
            c: Gaussian,
        }
        let v = Vec::<Term>::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        for t in v {
            if t.pow.abs() > 1_000_000 {
                return Err(D::Error::custom(format!("exponent {} out of range", t.pow)));
            }
            p.add_term(t.pow, t.c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<Gaussian>;

    #[test]
    fn derivative_examples() {
        // z^-1 -> -z^-2
        let p = P::from_int_coeffs(&[(-1, 1)]);
        assert_eq!(p.derivative(), P::from_int_coeffs(&[(-2, -1)]));
        // constant 5 -> 0
        assert!(P::from_int_coeffs(&[(0, 5)]).derivative().is_zero());
        // 1 - z^2 -> -2z
        let p = P::from_int_coeffs(&[(0, 1), (2, -1)]);
        assert_eq!(p.derivative(), P::from_int_coeffs(&[(1, -2)]));
    }

    #[test]
    fn substitute_inverse_examples() {
        let p = P::from_int_coeffs(&[(2, 1)]);
        assert_eq!(p.substitute_inverse(), P::from_int_coeffs(&[(-2, 1)]));
        let p = P::from_int_coeffs(&[(0, 1), (2, -1)]);
        assert_eq!(
            p.substitute_inverse(),
            P::from_int_coeffs(&[(0, 1), (-2, -1)])
        );
        assert_eq!(p.substitute_inverse().substitute_inverse(), p);
    }

    #[test]
    fn eval_examples() {
        let p = P::from_int_coeffs(&[(0, 1), (2, -1)]); // 1 - z^2
        let v = p.eval_complex(Complex64::new(2.0, 0.0)).unwrap();
        assert_eq!(v, Complex64::new(-3.0, 0.0));
        let p = P::from_int_coeffs(&[(-1, 1)]);
        let v = p.eval_complex(Complex64::new(2.0, 0.0)).unwrap();
        assert_eq!(v, Complex64::new(0.5, 0.0));
        assert!(matches!(
            p.eval_complex(Complex64::new(0.0, 0.0)),
            Err(Error::EvalAtOrigin)
        ));
        // 2z at i -> 2i
        let p = P::from_int_coeffs(&[(1, 2)]);
        let v = p.eval_complex(Complex64::new(0.0, 1.0)).unwrap();
        assert_eq!(v, Complex64::new(0.0, 2.0));
    }

    #[test]
    fn ring_ops() {
        let a = P::from_int_coeffs(&[(0, 1), (1, 1)]);
        let b = P::from_int_coeffs(&[(0, -1), (1, 1)]);
        assert_eq!(&a * &b, P::from_int_coeffs(&[(0, -1), (2, 1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.pow(2), P::from_int_coeffs(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn display_readable() {
        let p = P::from_terms(vec![
            (2, Gaussian::i()),
            (0, Gaussian::from_int(1)),
            (-1, Gaussian::from_int(-2)),
        ]);
        assert_eq!(p.to_string(), "i*z^2 + 1 + -2*z^-1");
    }
}
