use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial with arbitrary-precision rational coefficients.
///
/// `coeffs[i]` holds the coefficient of `x^i`. The highest stored
/// coefficient is always non-zero; the zero polynomial stores nothing, and
/// its degree is the distinguished sentinel `None` ("minus infinity") so the
/// sentinel can never be confused with a valid degree.
///
/// ```
/// use xhermite::exactpoly::ExactPoly;
///
/// let p = ExactPoly::from_integers(&[-2, 0, 4]); // 4x² − 2
/// assert_eq!(p.degree(), Some(2));
/// assert_eq!(p.derivative(), ExactPoly::from_integers(&[0, 8]));
/// assert_eq!(ExactPoly::zero().degree(), None);
/// ```
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    /// The zero polynomial (degree "minus infinity").
    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        ExactPoly::constant(BigRational::one())
    }

    /// The monomial x.
    pub fn x() -> Self {
        ExactPoly::from_integers(&[0, 1])
    }

    /// A constant polynomial.
    pub fn constant(c: BigRational) -> Self {
        ExactPoly::from_coeffs(vec![c])
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    /// Build from ascending integer coefficients (test and doc convenience).
    pub fn from_integers(coeffs: &[i64]) -> Self {
        ExactPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The monomial c·x^k.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        ExactPoly { coeffs }
    }

    /// Ascending coefficients, highest non-zero (empty for the zero
    /// polynomial).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// d/dx. The degree drops by exactly one for non-constant input.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        ExactPoly::from_coeffs(coeffs)
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by an integer scalar.
    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Long division: returns (quotient, remainder) with
    /// `self = q·d + r` and `deg r < deg d`.
    pub fn div_rem(&self, d: &ExactPoly) -> Result<(ExactPoly, ExactPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / lead;
            if !q.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &q * dc;
                    rem[k + i] -= t;
                }
            }
            quot[k] = q;
            // The top coefficient cancels exactly by construction.
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        Ok((ExactPoly::from_coeffs(quot), ExactPoly { coeffs: rem }))
    }

    /// Division known to be exact (used by fraction-free elimination, where
    /// exactness is a theorem). Panics on a non-zero remainder, which would
    /// be a programming error, not a data error.
    pub fn div_exact(&self, d: &ExactPoly) -> ExactPoly {
        let (q, r) = self.div_rem(d).expect("div_exact by zero polynomial");
        assert!(r.is_zero(), "div_exact left a non-zero remainder");
        q
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

/// Human-readable form: descending powers with explicit signs, e.g.
/// `16x^4 + 12` or `8x^3 - 12x`. Non-integer coefficients are parenthesized:
/// `(3/2)x^2`.
impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let coeff_str = rational_to_string(&a);
            if k == 0 {
                write!(f, "{coeff_str}")?;
            } else {
                if !a.is_one() {
                    if a.denom().is_one() {
                        write!(f, "{coeff_str}")?;
                    } else {
                        write!(f, "({coeff_str})")?;
                    }
                }
                if k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        ExactPoly::from_coeffs(coeffs)
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        ExactPoly::from_coeffs(coeffs)
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ExactPoly::from_coeffs(coeffs)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Canonical string for an exact rational: `"p"` when the denominator is 1,
/// `"p/q"` otherwise (decimal integers, reduced, denominator positive).
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`rational_to_string`]; also accepts anything
/// `BigRational::from_str` does.
pub fn rational_from_string(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::InvalidArgument(format!("bad rational {s:?}: {e}")))
}

// ---------------------------------------------------------------------------
// Polynomial gcd via a primitive polynomial remainder sequence over the
// integers. Rational inputs are scaled to primitive integer polynomials
// first; the result is returned monic. Working over Z with content removal
// keeps coefficient growth linear-ish, where naive rational Euclid explodes.
// ---------------------------------------------------------------------------

fn to_primitive_int(p: &ExactPoly) -> Vec<BigInt> {
    // Clear denominators, then divide out the integer content.
    let mut denom_lcm = BigInt::one();
    for c in p.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let content = int_content(&ints);
    if content.is_one() {
        ints
    } else {
        ints.iter().map(|c| c / &content).collect()
    }
}

fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

/// Pseudo-remainder of integer polynomials: `lc(b)^(deg a − deg b + 1) · a`
/// reduced modulo `b`. Requires `deg a ≥ deg b ≥ 0`. The sign of the result
/// is irrelevant to gcd computation.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(!b.is_empty() && a.len() >= b.len());
    let lead = b.last().unwrap().clone();
    let mut rem: Vec<BigInt> = a.to_vec();
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &top * bc;
        }
        debug_assert!(rem.last().unwrap().is_zero());
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem
}

/// Monic greatest common divisor over the rationals.
///
/// `poly_gcd(p, 0) = monic(p)`, `poly_gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
    fn monic_from_int(v: &[BigInt]) -> ExactPoly {
        let lead = v.last().expect("non-empty").clone();
        ExactPoly::from_coeffs(
            v.iter()
                .map(|c| BigRational::new(c.clone(), lead.clone()))
                .collect(),
        )
    }
    if a.is_zero() && b.is_zero() {
        return ExactPoly::zero();
    }
    if a.is_zero() || b.is_zero() {
        let p = if a.is_zero() { b } else { a };
        let lead = p.leading_coeff().unwrap().clone();
        return p.scale(&lead.recip());
    }
    let mut u = to_primitive_int(a);
    let mut v = to_primitive_int(b);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let r = int_pseudo_rem(&u, &v);
        if r.is_empty() {
            return monic_from_int(&v);
        }
        let content = int_content(&r);
        let r: Vec<BigInt> = r.iter().map(|c| c / &content).collect();
        u = v;
        v = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> ExactPoly {
        ExactPoly::from_integers(cs)
    }

    #[test]
    fn derivative_power_rule() {
        // 4x² − 2 → 8x
        assert_eq!(p(&[-2, 0, 4]).derivative(), p(&[0, 8]));
        // constant 7 → 0
        assert_eq!(p(&[7]).derivative(), ExactPoly::zero());
        // 8x³ − 12x → 24x² − 12
        assert_eq!(p(&[0, -12, 0, 8]).derivative(), p(&[-12, 0, 24]));
    }

    #[test]
    fn degree_sentinel_is_distinct() {
        assert_eq!(ExactPoly::zero().degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
        assert!(ExactPoly::zero().leading_coeff().is_none());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]), ExactPoly::zero());
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-1, 0, 0, 5]);
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        let m = &a * &b;
        let (q, r) = m.div_rem(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn div_rem_with_remainder() {
        // x³ + 1 = (x² )·x + 1... precisely: divide x³+1 by x²: q = x, r = 1.
        let (q, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[0, 0, 1])).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[1]));
        assert!(p(&[1]).div_rem(&ExactPoly::zero()).is_err());
    }

    #[test]
    fn gcd_basics() {
        // gcd(x²−1, x−1) = x−1 (monic)
        let g = poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(g, p(&[-1, 1]));
        // Coprime inputs give 1.
        let g = poly_gcd(&p(&[1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(g, ExactPoly::one());
        // Scalars are normalized away: gcd(2x+2, 4x+4) = x+1.
        let g = poly_gcd(&p(&[2, 2]), &p(&[4, 4]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn display_descending_with_signs() {
        assert_eq!(p(&[12, 0, 0, 0, 16]).to_string(), "16x^4 + 12");
        assert_eq!(p(&[0, -12, 0, 8]).to_string(), "8x^3 - 12x");
        assert_eq!(p(&[2, 0, 4]).to_string(), "4x^2 + 2");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(ExactPoly::zero().to_string(), "0");
        let half = ExactPoly::from_coeffs(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(2)),
        ]);
        assert_eq!(half.to_string(), "-(3/2)x + 1/2");
    }

    #[test]
    fn rational_strings() {
        let r = BigRational::new(BigInt::from(-3), BigInt::from(6));
        assert_eq!(rational_to_string(&r), "-1/2");
        assert_eq!(rational_from_string("-1/2").unwrap(), r);
        let five = BigRational::from_integer(BigInt::from(5));
        assert_eq!(rational_to_string(&five), "5");
        assert_eq!(rational_from_string("5").unwrap(), five);
        assert!(rational_from_string("five").is_err());
    }
}
