use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

use super::poly::{poly_gcd, ExactPoly};
use crate::error::{Error, Result};

/// Exact number of *distinct* real roots of a non-zero polynomial, by a
/// Sturm-sequence sign-variation count over (−∞, ∞).
///
/// The input is first replaced by its square-free part `p / gcd(p, p′)`, so
/// multiplicities never disturb the count. Variation counts at ±∞ read off
/// leading-coefficient signs, so no interval arithmetic is needed. Zero-free
/// certificates produced here are proofs, not float heuristics: they gate
/// the Krein–Adler admissibility of the weight.
///
/// ```
/// use xhermite::exactpoly::{count_real_roots, ExactPoly};
///
/// let p = ExactPoly::from_integers(&[-1, 0, 1]); // x² − 1
/// assert_eq!(count_real_roots(&p).unwrap(), 2);
/// let q = ExactPoly::from_integers(&[1, 0, 1]);  // x² + 1
/// assert_eq!(count_real_roots(&q).unwrap(), 0);
/// ```
pub fn count_real_roots(p: &ExactPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let square_free = {
        let g = poly_gcd(p, &p.derivative());
        if g.degree() == Some(0) {
            p.clone()
        } else {
            p.div_exact(&g)
        }
    };
    let chain = sturm_chain(&square_free);
    let at_minus_inf = variations(&chain, Sign::MinusInfinity);
    let at_plus_inf = variations(&chain, Sign::PlusInfinity);
    debug_assert!(at_minus_inf >= at_plus_inf);
    Ok(at_minus_inf - at_plus_inf)
}

/// Sturm chain of a square-free polynomial: p₀ = p, p₁ = p′,
/// p_{k+1} = −rem(p_{k−1}, p_k), stopping at the last non-zero member
/// (a constant, since the input is square-free).
///
/// Each member is rescaled by a *positive* rational to primitive integer
/// form; positive scaling preserves every sign the count reads.
fn sturm_chain(p: &ExactPoly) -> Vec<ExactPoly> {
    let mut chain = vec![primitive_positive(p), primitive_positive(&p.derivative())];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() || chain[k - 1].degree() == Some(0) {
            break;
        }
        let (_, r) = chain[k - 2]
            .div_rem(&chain[k - 1])
            .expect("non-zero divisor in Sturm chain");
        if r.is_zero() {
            break;
        }
        chain.push(primitive_positive(&-&r));
    }
    chain
}

/// Rescale by a positive rational so the coefficients become integers with
/// content 1. The zero polynomial passes through unchanged.
fn primitive_positive(p: &ExactPoly) -> ExactPoly {
    use num::Integer;
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = BigInt::from(1);
    for c in p.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    ExactPoly::from_coeffs(
        ints.into_iter()
            .map(|c| BigRational::from_integer(c / &content))
            .collect(),
    )
}

#[derive(Clone, Copy)]
enum Sign {
    MinusInfinity,
    PlusInfinity,
}

/// Sign variations of the chain at ±∞: the sign of p(±∞) is the sign of the
/// leading coefficient, flipped at −∞ for odd degree.
fn variations(chain: &[ExactPoly], at: Sign) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None; // true = positive
    for p in chain {
        let Some(lead) = p.leading_coeff() else {
            continue;
        };
        let deg = p.degree().unwrap();
        let mut positive = lead.is_positive();
        if matches!(at, Sign::MinusInfinity) && deg % 2 == 1 {
            positive = !positive;
        }
        if let Some(prev) = last {
            if prev != positive {
                count += 1;
            }
        }
        last = Some(positive);
    }
    count
}
