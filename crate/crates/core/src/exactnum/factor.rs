//! Exact factor arithmetic over the Gaussian rationals: division, gcd,
//! Yun square-free decomposition, and gcd-free (coprime) bases.
//!
//! Monomials c*z^k are units here: the working domain is the punctured
//! plane, so gcds are computed on the ordinary-polynomial parts after
//! factoring the monomial unit out, and results are monic.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::gaussian::Gaussian;
use crate::ExactPoly;

/// Splits p = z^ord * q with q(0) != 0. Requires p != 0.
pub fn split_monomial(p: &ExactPoly) -> (i64, ExactPoly) {
    debug_assert!(!p.is_zero());
    let ord = p.order().unwrap();
    (ord, p.mul_monomial(-ord, &Gaussian::one()))
}

/// Monic associate of the ordinary-polynomial part of p (monomial unit
/// stripped). Requires p != 0.
pub fn monic_poly_part(p: &ExactPoly) -> ExactPoly {
    let (_, q) = split_monomial(p);
    let lead = q.leading().unwrap();
    q.scale(&lead.inv().expect("leading coefficient nonzero"))
}

/// Euclidean division on ordinary polynomials (orders >= 0, b != 0).
pub fn divrem(a: &ExactPoly, b: &ExactPoly) -> Result<(ExactPoly, ExactPoly)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    debug_assert!(a.is_zero() || a.order().unwrap() >= 0);
    debug_assert!(b.order().unwrap() >= 0);
    let db = b.degree().unwrap();
    let lead_inv = b.leading().unwrap().inv()?;
    let mut rem = a.clone();
    let mut quot = ExactPoly::zero();
    while !rem.is_zero() && rem.degree().unwrap() >= db {
        let dr = rem.degree().unwrap();
        let c = &rem.coeff(dr) * &lead_inv;
        let t = ExactPoly::monomial(dr - db, c);
        rem = &rem - &(&t * b);
        quot = &quot + &t;
    }
    Ok((quot, rem))
}

/// Exact quotient when b divides a in the Laurent ring (monomial units are
/// invertible, so any orders are fine). None when the division is inexact.
pub fn exact_div(a: &ExactPoly, b: &ExactPoly) -> Option<ExactPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(ExactPoly::zero());
    }
    let (oa, pa) = split_monomial(a);
    let (ob, pb) = split_monomial(b);
    let (q, r) = divrem(&pa, &pb).ok()?;
    if !r.is_zero() {
        return None;
    }
    Some(q.mul_monomial(oa - ob, &Gaussian::one()))
}

/// Monic gcd of the polynomial parts; monomials are treated as units.
/// gcd(p, 0) is the monic associate of p. Both-zero input is rejected.
pub fn gcd(p: &ExactPoly, q: &ExactPoly) -> Result<ExactPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    if p.is_zero() {
        return Ok(monic_poly_part(q));
    }
    if q.is_zero() {
        return Ok(monic_poly_part(p));
    }
    let mut a = monic_poly_part(p);
    let mut b = monic_poly_part(q);
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let (_, mut r) = divrem(&a, &b)?;
        if !r.is_zero() {
            // strip any z^j picked up by cancellation, keep remainders monic
            r = monic_poly_part(&r);
        }
        a = b;
        b = r;
    }
    Ok(a)
}

/// Square-free decomposition unit * prod parts[i].0 ^ parts[i].1.
///
/// Factors are monic, pairwise coprime, square-free and nonconstant. A
/// positive power of z stays in the parts (its zero sits at the origin and
/// region filters exclude it); a negative power joins the unit, which is a
/// genuine unit of the Laurent ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFreeDecomposition {
    pub unit: ExactPoly,
    pub parts: Vec<(ExactPoly, u32)>,
}

impl SquareFreeDecomposition {
    pub fn reconstruct(&self) -> ExactPoly {
        let mut acc = self.unit.clone();
        for (f, m) in &self.parts {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Smallest multiplicity over the (nonconstant) parts; None when there
    /// are no parts, i.e. no zeros in the punctured plane.
    pub fn min_multiplicity(&self) -> Option<u32> {
        self.parts.iter().map(|(_, m)| *m).min()
    }
}

/// Yun's algorithm over the exact field (characteristic zero).
pub fn squarefree(p: &ExactPoly) -> Result<SquareFreeDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (ord, q) = split_monomial(p);
    let lead = q.leading().unwrap();
    let f = q.scale(&lead.inv()?);

    let mut parts: Vec<(ExactPoly, u32)> = Vec::new();
    if !f.is_constant() {
        let fp = f.derivative();
        let a0 = gcd(&f, &fp)?;
        let mut b = exact_div(&f, &a0).expect("gcd divides");
        let mut c = exact_div(&fp, &a0).expect("gcd divides");
        let mut i: u32 = 1;
        while !b.is_constant() {
            let d = &c - &b.derivative();
            let pi = gcd(&b, &d)?;
            if !pi.is_constant() {
                parts.push((pi.clone(), i));
            }
            b = exact_div(&b, &pi).expect("factor divides");
            c = exact_div(&d, &pi).expect("factor divides");
            i += 1;
        }
    }

    // monomial bookkeeping: z^ord with ord > 0 is a factor, ord < 0 a unit
    let mut unit_pow = 0;
    if ord > 0 {
        parts.push((ExactPoly::variable(), ord as u32));
    } else {
        unit_pow = ord;
    }
    parts.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_poly(&a.0, &b.0)));
    let unit = ExactPoly::monomial(unit_pow, lead);
    let dec = SquareFreeDecomposition { unit, parts };
    debug_assert_eq!(&dec.reconstruct(), p);
    Ok(dec)
}

/// Deterministic total order on exact polynomials (degree, then support and
/// coefficients), used to canonicalize factor lists.
pub fn cmp_poly(a: &ExactPoly, b: &ExactPoly) -> Ordering {
    let da = a.degree().unwrap_or(i64::MIN);
    let db = b.degree().unwrap_or(i64::MIN);
    da.cmp(&db).then_with(|| {
        let ta: Vec<_> = a.terms().collect();
        let tb: Vec<_> = b.terms().collect();
        for ((ea, ca), (eb, cb)) in ta.iter().zip(tb.iter()) {
            match ea.cmp(eb) {
                Ordering::Equal => {}
                o => return o,
            }
            match ca.re.cmp(&cb.re).then(ca.im.cmp(&cb.im)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        ta.len().cmp(&tb.len())
    })
}

/// Per-input factorization over a [`CoprimeBasis`]: unit * prod basis[i]^exps[i].
#[derive(Clone, Debug)]
pub struct BasisExponents {
    /// Monomial unit c * z^k.
    pub unit: ExactPoly,
    pub exps: Vec<i64>,
}

/// A gcd-free basis: pairwise coprime square-free monic polynomials such
/// that every input is a monomial unit times a product of basis powers.
#[derive(Clone, Debug)]
pub struct CoprimeBasis {
    pub basis: Vec<ExactPoly>,
    pub exponents: Vec<BasisExponents>,
}

impl CoprimeBasis {
    pub fn reconstruct(&self, i: usize) -> ExactPoly {
        let mut acc = self.exponents[i].unit.clone();
        for (b, e) in self.basis.iter().zip(self.exponents[i].exps.iter()) {
            debug_assert!(*e >= 0);
            acc = &acc * &b.pow(*e as u32);
        }
        acc
    }

    /// Exponent of basis element `b` in input `i`.
    pub fn exponent(&self, input: usize, b: usize) -> i64 {
        self.exponents[input].exps[b]
    }
}

/// Builds a gcd-free basis of the square-free parts of the inputs, then
/// expresses every input over it. All inputs must be nonzero.
pub fn coprime_basis(ps: &[ExactPoly]) -> Result<CoprimeBasis> {
    for p in ps {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    // collect square-free candidate factors (z excluded: it joins the units)
    let mut pending: Vec<ExactPoly> = Vec::new();
    for p in ps {
        let dec = squarefree(p)?;
        for (f, _) in dec.parts {
            if f == ExactPoly::variable() {
                continue;
            }
            pending.push(f);
        }
    }

    let mut basis: Vec<ExactPoly> = Vec::new();
    while let Some(mut f) = pending.pop() {
        if f.is_constant() {
            continue;
        }
        let mut i = 0;
        while i < basis.len() && !f.is_constant() {
            let g = gcd(&f, &basis[i])?;
            if g.is_constant() {
                i += 1;
                continue;
            }
            if g == basis[i] {
                // basis element divides f: strip it and continue
                f = exact_div(&f, &g).expect("gcd divides");
                f = if f.is_constant() { f } else { monic_poly_part(&f) };
                continue;
            }
            // split basis[i] into g and the cofactor, requeue the pieces
            let cof = exact_div(&basis[i], &g).expect("gcd divides");
            basis[i] = g.clone();
            if !cof.is_constant() {
                pending.push(monic_poly_part(&cof));
            }
            f = exact_div(&f, &g).expect("gcd divides");
            if !f.is_constant() {
                f = monic_poly_part(&f);
            }
            // recheck against the refined element
        }
        if !f.is_constant() {
            basis.push(monic_poly_part(&f));
        }
    }
    basis.sort_by(cmp_poly);
    basis.dedup();

    // express each input over the basis by trial division
    let mut exponents = Vec::with_capacity(ps.len());
    for p in ps {
        let (ord, mut q) = split_monomial(p);
        let mut exps = vec![0i64; basis.len()];
        for (bi, b) in basis.iter().enumerate() {
            loop {
                match exact_div(&q, b) {
                    Some(next) => {
                        exps[bi] += 1;
                        q = next;
                    }
                    None => break,
                }
            }
        }
        if !q.is_constant() {
            return Err(Error::InternalAssertion {
                what: format!("coprime basis residual {q} is not constant"),
            });
        }
        let unit = ExactPoly::monomial(ord, q.coeff(0));
        exponents.push(BasisExponents { unit, exps });
    }
    let out = CoprimeBasis { basis, exponents };
    for (i, p) in ps.iter().enumerate() {
        debug_assert_eq!(&out.reconstruct(i), p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = ExactPoly;

    fn zpow(k: i64) -> P {
        P::from_int_coeffs(&[(k, 1)])
    }

    #[test]
    fn gcd_examples() {
        // (z^2-1, z^2-2z+1) -> z-1
        let a = P::from_int_coeffs(&[(0, -1), (2, 1)]);
        let b = P::from_int_coeffs(&[(0, 1), (1, -2), (2, 1)]);
        assert_eq!(gcd(&a, &b).unwrap(), P::from_int_coeffs(&[(0, -1), (1, 1)]));
        // (z, z^3) -> 1: monomials are units
        assert_eq!(gcd(&zpow(1), &zpow(3)).unwrap(), P::one());
        // gcd(p, 0) -> monic associate of p: 2z(1 - z^2) -> z^2 - 1
        let p = P::from_int_coeffs(&[(1, 2), (3, -2)]);
        let g = gcd(&p, &P::zero()).unwrap();
        assert_eq!(g, P::from_int_coeffs(&[(0, -1), (2, 1)]));
        assert!(matches!(gcd(&P::zero(), &P::zero()), Err(Error::BothZero)));
    }

    #[test]
    fn gcd_exposes_multiple_part() {
        // gcd(p, p') exposes exactly the multiplicity >= 2 part
        let zm1 = P::from_int_coeffs(&[(0, -1), (1, 1)]);
        let zp1 = P::from_int_coeffs(&[(0, 1), (1, 1)]);
        let p = &zm1.pow(3) * &zp1;
        let g = gcd(&p, &p.derivative()).unwrap();
        assert_eq!(g, zm1.pow(2));
    }

    #[test]
    fn squarefree_examples() {
        // (z-1)^2 (z+1)
        let zm1 = P::from_int_coeffs(&[(0, -1), (1, 1)]);
        let zp1 = P::from_int_coeffs(&[(0, 1), (1, 1)]);
        let p = &zm1.pow(2) * &zp1;
        let dec = squarefree(&p).unwrap();
        assert_eq!(dec.parts, vec![(zp1.clone(), 1), (zm1.clone(), 2)]);
        assert_eq!(dec.reconstruct(), p);

        // 2z keeps z as a factor with unit 2
        let p = P::from_int_coeffs(&[(1, 2)]);
        let dec = squarefree(&p).unwrap();
        assert_eq!(dec.parts, vec![(P::variable(), 1)]);
        assert_eq!(dec.unit, P::constant(Gaussian::from_int(2)));

        // z^4 + 2z^2 + 1 = (z^2+1)^2
        let p = P::from_int_coeffs(&[(0, 1), (2, 2), (4, 1)]);
        let dec = squarefree(&p).unwrap();
        let z2p1 = P::from_int_coeffs(&[(0, 1), (2, 1)]);
        assert_eq!(dec.parts, vec![(z2p1, 2)]);

        // negative order goes to the unit
        let p = P::from_int_coeffs(&[(-2, 3), (-1, 3)]); // 3 z^-2 (1 + z)
        let dec = squarefree(&p).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.unit.order(), Some(-2));
        assert_eq!(dec.reconstruct(), p);

        assert!(matches!(squarefree(&P::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn coprime_basis_examples() {
        let zm1 = P::from_int_coeffs(&[(0, -1), (1, 1)]);
        let zp1 = P::from_int_coeffs(&[(0, 1), (1, 1)]);
        // [z-1, (z-1)(z+1)] -> basis {z-1, z+1}, exponents [(1,0),(1,1)]
        let inputs = vec![zm1.clone(), &zm1 * &zp1];
        let cb = coprime_basis(&inputs).unwrap();
        assert_eq!(cb.basis, vec![zm1.clone(), zp1.clone()]);
        assert_eq!(cb.exponents[0].exps, vec![1, 0]);
        assert_eq!(cb.exponents[1].exps, vec![1, 1]);

        // [z^2-1, z^2-2z+1, z+1] -> basis {z-1, z+1}
        let a = P::from_int_coeffs(&[(0, -1), (2, 1)]);
        let b = &zm1 * &zm1;
        let cb = coprime_basis(&[a.clone(), b.clone(), zp1.clone()]).unwrap();
        assert_eq!(cb.basis, vec![zm1.clone(), zp1.clone()]);
        for i in 0..3 {
            assert_eq!(cb.reconstruct(i), [a.clone(), b.clone(), zp1.clone()][i]);
        }

        assert!(coprime_basis(&[P::zero()]).is_err());
    }

    #[test]
    fn exact_div_with_monomial_units() {
        let p = P::from_int_coeffs(&[(-1, 2), (1, 2)]); // 2 z^-1 (1 + z^2)
        let q = P::from_int_coeffs(&[(0, 1), (2, 1)]);
        let d = exact_div(&p, &q).unwrap();
        assert_eq!(d, P::from_int_coeffs(&[(-1, 2)]));
        assert!(exact_div(&q, &p).is_some()); // units invert
        assert!(exact_div(&q, &P::from_int_coeffs(&[(0, 1), (1, 1)])).is_none());
    }
}
