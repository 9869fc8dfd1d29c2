use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::BigRational;
use num::One;

use super::poly::{poly_gcd, ExactPoly};
use crate::error::{Error, Result};

/// Rational function in canonical form: numerator and denominator are
/// coprime and the denominator is monic (its leading scalar is absorbed
/// into the numerator). The zero function is `0/1`.
///
/// Canonical form makes equality decidable; [`PartialEq`] nevertheless
/// compares by cross-multiplication so that equality never depends on the
/// canonicalization having happened.
#[derive(Clone)]
pub struct RatFun {
    num: ExactPoly,
    den: ExactPoly,
}

impl RatFun {
    /// Build `num/den` in canonical form. Fails on a zero denominator.
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: ExactPoly, den: ExactPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                num,
                den: ExactPoly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading_coeff().expect("non-zero denominator").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: ExactPoly) -> Self {
        RatFun {
            num: p,
            den: ExactPoly::one(),
        }
    }

    pub fn from_int(k: i64) -> Self {
        RatFun::from_poly(ExactPoly::from_integers(&[k]))
    }

    pub fn zero() -> Self {
        RatFun::from_poly(ExactPoly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(ExactPoly::one())
    }

    pub fn num(&self) -> &ExactPoly {
        &self.num
    }

    pub fn den(&self) -> &ExactPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the canonical denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The numerator, when the canonical denominator is 1.
    pub fn as_polynomial(&self) -> Option<&ExactPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Exact field division. Fails when `rhs` is the zero function.
    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::canonical(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    /// Quotient-rule derivative, canonicalized.
    pub fn derivative(&self) -> RatFun {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFun::canonical(num, den)
    }

    pub fn scale(&self, c: &BigRational) -> RatFun {
        RatFun::canonical(self.num.scale(c), self.den.clone())
    }

    pub fn scale_int(&self, k: i64) -> RatFun {
        RatFun::canonical(self.num.scale_int(k), self.den.clone())
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFun::canonical(num, &self.den * &rhs.den)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> ExactPoly {
        ExactPoly::from_integers(cs)
    }

    #[test]
    fn canonicalization_reduces_and_makes_monic() {
        // (x²−1)/(x−1) → x+1
        let r = RatFun::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.as_polynomial().unwrap(), &p(&[1, 1]));
        // (2x)/(4x²): denominator becomes monic, scalar moves to numerator.
        let r = RatFun::new(p(&[0, 2]), p(&[0, 0, 4])).unwrap();
        assert_eq!(r.num(), &ExactPoly::constant(BigRational::new(1.into(), 2.into())));
        assert_eq!(r.den(), &p(&[0, 1]));
        assert!(RatFun::new(p(&[1]), ExactPoly::zero()).is_err());
    }

    #[test]
    fn one_over_x_arithmetic() {
        let inv_x = RatFun::new(p(&[1]), p(&[0, 1])).unwrap();
        // 1/x + 1/x = 2/x
        let two_over_x = RatFun::new(p(&[2]), p(&[0, 1])).unwrap();
        assert_eq!(&inv_x + &inv_x, two_over_x);
        // derivative of 1/x = −1/x²
        let expected = RatFun::new(p(&[-1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(inv_x.derivative(), expected);
    }

    #[test]
    fn division_and_zero() {
        let a = RatFun::new(p(&[1, 1]), p(&[0, 1])).unwrap();
        let b = RatFun::new(p(&[1, 1]), p(&[1])).unwrap();
        let q = a.div(&b).unwrap();
        assert_eq!(q, RatFun::new(p(&[1]), p(&[0, 1])).unwrap());
        assert!(a.div(&RatFun::zero()).is_err());
        assert!((&a - &a).is_zero());
        assert_eq!(RatFun::zero().den(), &ExactPoly::one());
    }
}
