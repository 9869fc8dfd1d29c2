//! Integer-partition combinatorics: gap sets, sporadic degrees, truncation
//! chains, duality, evenness, and the gap-set inverse.
//!
//! A partition λ = (λ₁ ≥ λ₂ ≥ … ≥ λ_ℓ > 0) of weight N = Σλᵢ selects the
//! exceptional degree set K_λ = {λᵢ + N − i : i = 1..N} (indices beyond ℓ
//! contribute λᵢ = 0). Degrees outside K_λ are "allowed"; the λ₁ smallest
//! allowed degrees are "sporadic" (each lies below some exceptional degree).

use std::fmt;

use crate::error::{Error, Result};

/// Non-increasing finite sequence of positive parts; trailing zeros are
/// never stored, so the length ℓ is structural.
///
/// ```
/// use xhermite::partitions::Partition;
///
/// let lam = Partition::new(&[3, 3, 1, 1, 0, 0]).unwrap();
/// assert_eq!(lam.parts(), &[3, 3, 1, 1]);
/// assert_eq!((lam.n(), lam.ell()), (8, 4));
/// assert!(Partition::new(&[1, 2]).is_err());
/// ```
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validate and build: entries must be non-increasing; trailing zeros
    /// are stripped.
    pub fn new(values: &[usize]) -> Result<Self> {
        for w in values.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be non-increasing, found {} before {}",
                    w[0], w[1]
                )));
            }
        }
        let mut parts = values.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// The empty partition (N = 0, ℓ = 0): the classical Hermite case.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Parse the CLI text form: comma-separated parts, empty string for the
    /// empty partition. Whitespace around parts is tolerated.
    pub fn from_text(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        let mut values = Vec::new();
        for tok in trimmed.split(',') {
            let tok = tok.trim();
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?}")))?;
            if v < 0 {
                return Err(Error::InvalidPartition(format!("negative part {v}")));
            }
            values.push(v as usize);
        }
        Partition::new(&values)
    }

    /// The comma-separated text form; empty string for the empty partition.
    pub fn to_text(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// λ_i with the 1-based indexing of the defining formulas; zero beyond ℓ.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are 1-indexed");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Weight N = Σ λ_i.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of (positive) parts ℓ.
    pub fn ell(&self) -> usize {
        self.parts.len()
    }

    /// Largest part λ₁ (zero for the empty partition).
    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Even partitions pair up equal parts: λ_{2i−1} = λ_{2i} for every i
    /// (so ℓ is even). This is the Krein–Adler condition for η_λ to be
    /// zero-free on the real line.
    pub fn is_even(&self) -> bool {
        self.parts.len().is_multiple_of(2)
            && self.parts.chunks(2).all(|pair| pair[0] == pair[1])
    }

    /// Conjugate (dual) partition: part j of the result counts
    /// `{i : λ_i ≥ j}` — column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let parts: Vec<usize> = (1..=self.first_part())
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// λ^(j): subtract j from every part, clamping at zero. Empty for
    /// j ≥ λ₁.
    pub fn truncate(&self, j: usize) -> Partition {
        let parts: Vec<usize> = self
            .parts
            .iter()
            .map(|&p| p.saturating_sub(j))
            .filter(|&p| p > 0)
            .collect();
        Partition { parts }
    }

    /// Exceptional/allowed/sporadic degree bookkeeping for this partition.
    pub fn degree_sets(&self) -> DegreeSets {
        DegreeSets::new(self)
    }

    /// The truncation-chain table (j, ℓ_j, n_{j+1}) for j = 0..λ₁−1, where
    /// ℓ_j is the length of λ^(j) and n_{j+1} the (j+1)-th smallest allowed
    /// degree. The identity ℓ_j = N − n_{j+1} + j is asserted for every j.
    pub fn chain_lengths(&self) -> Vec<ChainLength> {
        let sporadic = self.degree_sets().sporadic().to_vec();
        let n = self.n();
        (0..self.first_part())
            .map(|j| {
                let ell_j = self.truncate(j).ell();
                let n_next = sporadic[j];
                assert_eq!(
                    ell_j as i64,
                    n as i64 - n_next as i64 + j as i64,
                    "duality identity ell_j = N - n_(j+1) + j failed"
                );
                ChainLength { j, ell_j, n_next }
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// One row of the truncation-chain table: ℓ_j = ℓ(λ^(j)) and the (j+1)-th
/// smallest allowed degree n_{j+1}, tied by ℓ_j = N − n_{j+1} + j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLength {
    pub j: usize,
    pub ell_j: usize,
    pub n_next: usize,
}

/// The exceptional degrees K_λ (size N), their complement I_λ (the allowed
/// degrees, materialized lazily up to a cutoff), and the λ₁ sporadic
/// degrees — the allowed degrees lying below some exceptional one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSets {
    exceptional: Vec<usize>,
    sporadic: Vec<usize>,
    n: usize,
    lambda1: usize,
}

impl DegreeSets {
    fn new(lambda: &Partition) -> Self {
        let n = lambda.n();
        let ell = lambda.ell();
        let lambda1 = lambda.first_part();
        let mut exceptional: Vec<usize> =
            (1..=n).map(|i| lambda.part(i) + n - i).collect();
        exceptional.sort_unstable();
        // Consistency with the two-piece union form
        // K_λ = {0..N−ℓ−1} ∪ {m_{i,ℓ} + N − ℓ}: indices beyond ℓ contribute
        // exactly the initial segment, the rest are the shifted m-degrees.
        let mut union_form: Vec<usize> = (0..n.saturating_sub(ell)).collect();
        union_form.extend((1..=ell).map(|i| (lambda.part(i) + ell - i) + n - ell));
        union_form.sort_unstable();
        assert_eq!(exceptional, union_form, "gap-set union form mismatch");
        if n > 0 {
            assert_eq!(exceptional[n - 1], lambda1 + n - 1);
            assert_eq!(
                exceptional.iter().sum::<usize>(),
                n * (n + 1) / 2,
                "gap-set sum invariant failed"
            );
            assert!(exceptional.windows(2).all(|w| w[0] < w[1]));
        }
        let mut sporadic = Vec::with_capacity(lambda1);
        let mut d = 0;
        while sporadic.len() < lambda1 {
            if exceptional.binary_search(&d).is_err() {
                sporadic.push(d);
            }
            d += 1;
        }
        DegreeSets {
            exceptional,
            sporadic,
            n,
            lambda1,
        }
    }

    /// K_λ, sorted ascending; |K_λ| = N.
    pub fn exceptional(&self) -> &[usize] {
        &self.exceptional
    }

    /// The λ₁ smallest allowed degrees, sorted ascending.
    pub fn sporadic(&self) -> &[usize] {
        &self.sporadic
    }

    pub fn is_exceptional(&self, degree: usize) -> bool {
        self.exceptional.binary_search(&degree).is_ok()
    }

    /// Membership in I_λ = ℕ₀ \ K_λ.
    pub fn is_allowed(&self, degree: usize) -> bool {
        !self.is_exceptional(degree)
    }

    /// The allowed degrees up to and including `cutoff`. Every degree
    /// ≥ λ₁ + N is allowed, so any finite question about I_λ is answered by
    /// a finite cutoff.
    pub fn allowed_up_to(&self, cutoff: usize) -> Vec<usize> {
        (0..=cutoff).filter(|&d| self.is_allowed(d)).collect()
    }

    /// Default enumeration cutoff λ₁ + N + 16: comfortably past the last
    /// exceptional degree λ₁ + N − 1.
    pub fn default_cutoff(&self) -> usize {
        self.lambda1 + self.n + 16
    }
}

/// Invert a gap set: sorts K descending as k₁ > … > k_N and recovers
/// λ_i = k_i + i − N, validating feasibility (distinct entries summing to
/// ½N(N+1)) rather than trusting the caller.
///
/// ```
/// use xhermite::partitions::{partition_from_gapset, Partition};
///
/// let lam = partition_from_gapset(&[0, 1, 4, 5]).unwrap();
/// assert_eq!(lam, Partition::new(&[2, 2]).unwrap());
/// assert!(partition_from_gapset(&[0, 2]).is_err());
/// ```
pub fn partition_from_gapset(k: &[usize]) -> Result<Partition> {
    let n = k.len();
    let mut sorted = k.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InfeasibleGapset(
            "elements are not distinct".to_string(),
        ));
    }
    let sum: usize = sorted.iter().sum();
    if sum != n * (n + 1) / 2 {
        return Err(Error::InfeasibleGapset(format!(
            "sum {} != {}",
            sum,
            n * (n + 1) / 2
        )));
    }
    let mut parts = Vec::with_capacity(n);
    for (idx, &ki) in sorted.iter().enumerate() {
        let i = idx + 1; // 1-based rank, k_1 largest
        let v = ki as i64 + i as i64 - n as i64;
        if v < 0 {
            return Err(Error::InfeasibleGapset(format!(
                "recovered part {v} is negative"
            )));
        }
        parts.push(v as usize);
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InfeasibleGapset(
            "recovered sequence is not non-increasing".to_string(),
        ));
    }
    let lambda = Partition::new(&parts)?;
    // Round-trip check: the recovered partition must reproduce K exactly.
    let mut ascending = sorted;
    ascending.reverse();
    assert_eq!(
        lambda.degree_sets().exceptional(),
        &ascending[..],
        "gap-set round trip failed"
    );
    Ok(lambda)
}

/// All partitions of `n` in descending lexicographic order (the empty
/// partition for n = 0). Small-N enumeration for verification sweeps.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        for p in (1..=top).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}
