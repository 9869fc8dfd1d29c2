//! Classical Hermite polynomials and, for a partition λ, the normalized
//! Wronskian η_λ and the exceptional family H^λ_n.
//!
//! With m_{i,l} = λ_i + l − i (the shifted degrees, strictly decreasing in
//! i) and the positive integer C^λ_l = 2^{l(l−1)/2} ∏_{i<j} (λ_i − λ_j + j − i),
//! the constructions are
//!
//! ```text
//! η_λ   = C^λ_l⁻¹ · Wr(H_{m_l}, …, H_{m_1})                l ≥ ℓ
//! H^λ_n = (2^l C^λ_l π^λ_l(n))⁻¹ · Wr(H_{m_l}, …, H_{m_1}, H_{n−N+l})
//! ```
//!
//! where π^λ_l(n) = ∏_{i=1..l} (n − N − λ_i + i). Both are independent of
//! the representation size l (shift invariance), have exact degree N resp. n,
//! and leading coefficient exactly 2^N resp. 2^n; all three facts are
//! asserted at construction time. Everything here is exact; √π never
//! appears as a float (norming constants carry their rational factor
//! symbolically).

use std::cell::RefCell;
use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{count_real_roots, wronskian, ExactPoly};
use crate::partitions::{DegreeSets, Partition};

/// Classical Hermite polynomial H_n (physicists' normalization), via the
/// three-term recurrence H_{n+1} = 2x·H_n − 2n·H_{n−1}, exactly.
///
/// ```
/// use xhermite::family::hermite;
/// use xhermite::exactpoly::ExactPoly;
///
/// assert_eq!(hermite(0), ExactPoly::one());
/// assert_eq!(hermite(1), ExactPoly::from_integers(&[0, 2]));
/// assert_eq!(hermite(3), ExactPoly::from_integers(&[0, -12, 0, 8]));
/// ```
pub fn hermite(n: usize) -> ExactPoly {
    let two_x = ExactPoly::from_integers(&[0, 2]);
    let mut prev = ExactPoly::one(); // H_0
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone(); // H_1
    for k in 1..n {
        let next = &(&two_x * &cur) - &prev.scale_int(2 * k as i64);
        prev = cur;
        cur = next;
    }
    cur
}

/// The shifted degrees m_{i,l} = λ_i + l − i for i = l..1, i.e. in the
/// ascending order in which they enter the Wronskians. Requires l ≥ ℓ.
pub fn m_degrees(lambda: &Partition, l: usize) -> Result<Vec<usize>> {
    require_size(lambda, l)?;
    Ok((1..=l)
        .rev()
        .map(|i| lambda.part(i) + l - i)
        .collect())
}

fn require_size(lambda: &Partition, l: usize) -> Result<()> {
    if l < lambda.ell() {
        return Err(Error::InvalidArgument(format!(
            "representation size l = {l} is smaller than the partition length {}",
            lambda.ell()
        )));
    }
    Ok(())
}

/// The positive integer C^λ_l = 2^{l(l−1)/2} ∏_{1≤i<j≤l} (λ_i − λ_j + j − i).
/// Every factor is ≥ 1, so the product is a positive integer.
pub fn c_constant(lambda: &Partition, l: usize) -> Result<BigInt> {
    require_size(lambda, l)?;
    let mut c = BigInt::one() << (l * l.saturating_sub(1) / 2);
    for i in 1..=l {
        for j in (i + 1)..=l {
            let factor = lambda.part(i) as i64 - lambda.part(j) as i64 + j as i64 - i as i64;
            debug_assert!(factor >= 1);
            c *= BigInt::from(factor);
        }
    }
    Ok(c)
}

/// π^λ_l(n) = ∏_{i=1..l} (n − N − λ_i + i); zero exactly when n − N + l
/// collides with one of the shifted degrees m_{i,l}.
pub fn pi_factor(lambda: &Partition, l: usize, n: i64) -> Result<BigInt> {
    require_size(lambda, l)?;
    let big_n = lambda.n() as i64;
    let mut pi = BigInt::one();
    for i in 1..=l {
        pi *= BigInt::from(n - big_n - lambda.part(i) as i64 + i as i64);
    }
    Ok(pi)
}

/// The normalized Wronskian η_λ = C^λ_l⁻¹ · Wr(H_{m_l}, …, H_{m_1}),
/// independent of the representation size l ≥ ℓ (default ℓ; independence is
/// asserted whenever l > ℓ). η_∅ = 1. The result has degree N and leading
/// coefficient exactly 2^N.
pub fn eta(lambda: &Partition, l: Option<usize>) -> Result<ExactPoly> {
    let ell = lambda.ell();
    let l = l.unwrap_or(ell);
    require_size(lambda, l)?;
    let result = eta_at_size(lambda, l)?;
    if l > ell {
        let base = eta_at_size(lambda, ell)?;
        if result != base {
            return Err(Error::identity(
                format!("shift invariance of eta at l = {l}"),
                &result - &base,
            ));
        }
    }
    Ok(result)
}

fn eta_at_size(lambda: &Partition, l: usize) -> Result<ExactPoly> {
    let big_n = lambda.n();
    let result = if l == 0 {
        ExactPoly::one()
    } else {
        let polys: Vec<ExactPoly> = m_degrees(lambda, l)?.into_iter().map(hermite).collect();
        let w = wronskian(&polys)?;
        let c = BigRational::from_integer(c_constant(lambda, l)?);
        w.scale(&c.recip())
    };
    check_degree_and_leading(&result, big_n, "eta")?;
    Ok(result)
}

/// The exceptional Hermite polynomial H^λ_n for an allowed degree n, via
/// the (l+1)-sized Wronskian with prefactor (2^l C^λ_l π^λ_l(n))⁻¹.
/// Independent of l ≥ ℓ (asserted when l > ℓ); degree n, leading
/// coefficient exactly 2^n. For λ = ∅ this is the classical H_n.
pub fn exceptional_hermite(lambda: &Partition, n: usize, l: Option<usize>) -> Result<ExactPoly> {
    let ell = lambda.ell();
    let l = l.unwrap_or(ell);
    require_size(lambda, l)?;
    if lambda.degree_sets().is_exceptional(n) {
        return Err(Error::GapDegree { n });
    }
    let result = exceptional_at_size(lambda, n, l)?;
    if l > ell {
        let base = exceptional_at_size(lambda, n, ell)?;
        if result != base {
            return Err(Error::identity(
                format!("shift invariance of H^lambda_{n} at l = {l}"),
                &result - &base,
            ));
        }
    }
    Ok(result)
}

fn exceptional_at_size(lambda: &Partition, n: usize, l: usize) -> Result<ExactPoly> {
    let big_n = lambda.n();
    // Allowed degrees satisfy n ≥ N − ℓ, so the extra row H_{n−N+l} exists.
    let extra = n as i64 - big_n as i64 + l as i64;
    debug_assert!(extra >= 0);
    let mut polys: Vec<ExactPoly> = m_degrees(lambda, l)?.into_iter().map(hermite).collect();
    polys.push(hermite(extra as usize));
    let w = wronskian(&polys)?;
    let pi = pi_factor(lambda, l, n as i64)?;
    assert!(!pi.is_zero(), "pi-factor vanished for an allowed degree");
    let prefactor = BigRational::new(BigInt::one(), (BigInt::one() << l) * c_constant(lambda, l)? * pi);
    let result = w.scale(&prefactor);
    check_degree_and_leading(&result, n, "exceptional Hermite polynomial")?;
    Ok(result)
}

fn check_degree_and_leading(p: &ExactPoly, degree: usize, what: &str) -> Result<()> {
    let expected_lead = BigRational::from_integer(BigInt::one() << degree);
    if p.degree() != Some(degree) || p.leading_coeff() != Some(&expected_lead) {
        return Err(Error::identity(
            format!("{what} must equal 2^{degree} x^{degree} + lower order"),
            p,
        ));
    }
    Ok(())
}

/// Norming constant ⟨H^λ_n, H^λ_n⟩_λ = q·√π with exact rational
/// q = 2^{n−N} n! / π^λ_N(n). √π is never evaluated here; only the
/// quadrature oracle multiplies by a floating-point √π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormingConstant {
    /// The degree n the constant belongs to.
    pub n: usize,
    /// The exact rational factor q in q·√π; positive for every allowed
    /// degree of an even partition.
    pub factor: BigRational,
}

/// Compute the norming constant for an even partition and allowed degree.
pub fn norming_constant(lambda: &Partition, n: usize) -> Result<NormingConstant> {
    if !lambda.is_even() {
        return Err(Error::NotEven(lambda.to_string()));
    }
    if lambda.degree_sets().is_exceptional(n) {
        return Err(Error::GapDegree { n });
    }
    let big_n = lambda.n();
    let pi = pi_factor(lambda, big_n, n as i64)?;
    let mut n_fact = BigInt::one();
    for k in 2..=n {
        n_fact *= BigInt::from(k);
    }
    let factor = BigRational::new((BigInt::one() << n) * n_fact, (BigInt::one() << big_n) * pi);
    if !factor.is_positive() {
        return Err(Error::identity(
            format!("positivity of the norming constant at n = {n}"),
            &factor,
        ));
    }
    Ok(NormingConstant { n, factor })
}

/// A partition together with its cached η_λ, degree bookkeeping, and
/// memoized family members.
///
/// Construction verifies the degree/leading-coefficient laws for η_λ and,
/// for even partitions, the Krein–Adler certificate (η_λ has no real
/// zeros — a Sturm-sequence proof, not a float heuristic). The memoization
/// cell makes a `FamilySpec` single-thread-confined (`!Sync`); every value
/// handed out is immutable.
pub struct FamilySpec {
    lambda: Partition,
    degree_sets: DegreeSets,
    eta: ExactPoly,
    cache: RefCell<BTreeMap<usize, ExactPoly>>,
}

impl FamilySpec {
    pub fn new(lambda: Partition) -> Result<Self> {
        let degree_sets = lambda.degree_sets();
        let eta = eta(&lambda, None)?;
        if lambda.is_even() && count_real_roots(&eta)? != 0 {
            return Err(Error::identity(
                "Krein-Adler: eta of an even partition is zero-free",
                &eta,
            ));
        }
        Ok(FamilySpec {
            lambda,
            degree_sets,
            eta,
            cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn eta(&self) -> &ExactPoly {
        &self.eta
    }

    pub fn degree_sets(&self) -> &DegreeSets {
        &self.degree_sets
    }

    /// The family member H^λ_n (memoized by degree).
    pub fn polynomial(&self, n: usize) -> Result<ExactPoly> {
        if let Some(p) = self.cache.borrow().get(&n) {
            return Ok(p.clone());
        }
        let p = exceptional_hermite(&self.lambda, n, None)?;
        self.cache.borrow_mut().insert(n, p.clone());
        Ok(p)
    }

    pub fn norming_constant(&self, n: usize) -> Result<NormingConstant> {
        norming_constant(&self.lambda, n)
    }

    /// Allowed degrees up to and including the cutoff.
    pub fn allowed_up_to(&self, cutoff: usize) -> Vec<usize> {
        self.degree_sets.allowed_up_to(cutoff)
    }
}
