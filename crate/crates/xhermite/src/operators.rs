//! The bilinear expression χ and the differential expressions τ_η, α_{ξ,η},
//! β_{η,ξ}, together with exact verification of the eigenvalue relation, the
//! adjoint and Lagrange identities, Darboux factorization chains, the norm
//! identity, and spectrum bookkeeping.
//!
//! Everything acts on exact polynomials and rational functions:
//!
//! ```text
//! χ(f,g)    = f·g″ − 2f′·g′ + f″·g − 2x(f·g′ − f′·g)
//! τ_η y     = χ(η, y)/η
//! α_{ξ,η} y = (ξ·y′ − ξ′·y)/η
//! β_{η,ξ} y = (η·y′ − η′·y − 2x·η·y)/ξ
//! ```
//!
//! β is the Gaussian-conjugated partner of α: conceptually it is α applied
//! to Gaussian-dressed data, but the e^{x²} factors cancel identically, so
//! the closed form above keeps the whole module inside exact rational
//! arithmetic. Verification routines return the residual of an identity and
//! fail with [`Error::IdentityViolation`] if it is not identically zero;
//! the offending residual rides along in the error for diagnosis.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use crate::error::{Error, Result};
use crate::exactpoly::{wronskian, ExactPoly, RatFun};
use crate::family::{self, hermite};
use crate::partitions::Partition;

/// χ(f,g) = f·g″ − 2f′·g′ + f″·g − 2x(f·g′ − f′·g), exactly.
///
/// For g an eigenpolynomial of the η-deformed operator, χ(η, g) is η times
/// a scalar multiple of g; see [`verify_eigen`].
pub fn chi(f: &ExactPoly, g: &ExactPoly) -> ExactPoly {
    let two_x = ExactPoly::from_integers(&[0, 2]);
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let g1 = g.derivative();
    let g2 = g1.derivative();
    let symmetric = &(&(f * &g2) - &(&f1 * &g1).scale_int(2)) + &(&f2 * g);
    let wr = &(f * &g1) - &(&f1 * g);
    &symmetric - &(&two_x * &wr)
}

/// χ(η, h) − ε·η·h: the defect of the eigenvalue relation. Zero exactly
/// when h is an eigenpolynomial with eigenvalue ε for the η-operator.
pub fn eigen_residual(eta: &ExactPoly, h: &ExactPoly, eps: i64) -> ExactPoly {
    &chi(eta, h) - &(eta * h).scale_int(eps)
}

/// τ_η y = χ(η, y)/η as a canonical rational function.
///
/// Errors with a division error when η = 0.
pub fn tau_apply(eta: &ExactPoly, y: &ExactPoly) -> Result<RatFun> {
    RatFun::new(chi(eta, y), eta.clone())
}

/// α_{ξ,η} y = (ξ·y′ − ξ′·y)/η = Wr(ξ, y)/η on rational functions.
///
/// Annihilates ξ itself. Errors with a division error when η = 0.
pub fn alpha_apply(xi: &ExactPoly, eta: &ExactPoly, y: &RatFun) -> Result<RatFun> {
    if eta.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let xi_r = RatFun::from_poly(xi.clone());
    let dxi_r = RatFun::from_poly(xi.derivative());
    let num = &(&xi_r * &y.derivative()) - &(&dxi_r * y);
    num.div(&RatFun::from_poly(eta.clone()))
}

/// β_{η,ξ} y = (η·y′ − η′·y − 2x·η·y)/ξ on rational functions.
///
/// This is the Gaussian-cancelled closed form of the conjugated first-order
/// expression Wr(η·e^{x²}, y)/(ξ·e^{x²}); expanding the Wronskian produces
/// the extra −2x·η·y term and the transcendental factor drops out.
/// Errors with a division error when ξ = 0.
pub fn beta_apply(eta: &ExactPoly, xi: &ExactPoly, y: &RatFun) -> Result<RatFun> {
    if xi.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let eta_r = RatFun::from_poly(eta.clone());
    let deta_r = RatFun::from_poly(eta.derivative());
    let two_x = RatFun::from_poly(ExactPoly::from_integers(&[0, 2]));
    let num = &(&(&eta_r * &y.derivative()) - &(&deta_r * y)) - &(&(&two_x * &eta_r) * y);
    num.div(&RatFun::from_poly(xi.clone()))
}

/// Verify χ(η_λ, H^λ_n) = 2(N−n)·η_λ·H^λ_n exactly and return the scalar
/// 2(N−n). Gap degrees are rejected; a non-zero residual (impossible for a
/// correct build) surfaces as an identity violation carrying the residual.
pub fn verify_eigen(lambda: &Partition, n: usize) -> Result<i64> {
    let eta = family::eta(lambda, None)?;
    let h = family::exceptional_hermite(lambda, n, None)?;
    let eps = 2 * (lambda.n() as i64 - n as i64);
    let residual = eigen_residual(&eta, &h, eps);
    if !residual.is_zero() {
        return Err(Error::identity(
            format!("eigen relation chi(eta, H_{n}) = {eps}*eta*H_{n}"),
            &residual,
        ));
    }
    Ok(eps)
}

fn hermites(degrees: &[usize]) -> Vec<ExactPoly> {
    degrees.iter().map(|&d| hermite(d)).collect()
}

/// Wronskian of Hermite polynomials of the given degrees, in the given
/// order; the empty stack is the constant 1.
fn wr_or_one(degrees: &[usize]) -> Result<ExactPoly> {
    if degrees.is_empty() {
        Ok(ExactPoly::one())
    } else {
        wronskian(&hermites(degrees))
    }
}

fn require_distinct(ms: &[usize], m: usize) -> Result<()> {
    let set: BTreeSet<usize> = ms.iter().copied().collect();
    if set.len() != ms.len() {
        return Err(Error::InvalidArgument(format!(
            "degree list {ms:?} contains repeats"
        )));
    }
    if set.contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "extra degree {m} already occurs in {ms:?}"
        )));
    }
    Ok(())
}

/// Verify the general χ-Wronskian identity: with η the Hermite Wronskian
/// over the distinct degrees `ms` (ascending) and ξ the same stack with H_m
/// appended, χ(η, ξ) = 2(l−m)·η·ξ where l = |ms|. Returns 2(l−m).
///
/// The identity also holds with degree 0 in the stack, and for the empty
/// stack it reduces to the classical Hermite equation.
pub fn verify_chi_general(ms: &[usize], m: usize) -> Result<i64> {
    require_distinct(ms, m)?;
    let mut sorted = ms.to_vec();
    sorted.sort_unstable();
    let eta = wr_or_one(&sorted)?;
    sorted.push(m);
    let xi = wr_or_one(&sorted)?;
    let eps = 2 * (ms.len() as i64 - m as i64);
    let residual = &chi(&eta, &xi) - &(&eta * &xi).scale_int(eps);
    if !residual.is_zero() {
        return Err(Error::identity(
            format!("chi(eta, xi) = {eps}*eta*xi for degrees {ms:?} + {m}"),
            &residual,
        ));
    }
    Ok(eps)
}

/// Which end of the factorization hierarchy a chain walks toward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainMode {
    /// Grow the Wronskian one allowed degree at a time (state-adding).
    Ascending,
    /// Peel the partition by column truncation down to the classical
    /// operator (state-removing).
    Descending,
}

/// Bookkeeping that produced a [`ChainStep`].
#[derive(Clone, Debug)]
pub enum StepMeta {
    /// Descending step from the truncation `lower` = λ^(j) to
    /// `upper` = λ^(j+1); `ell` is the number of parts of `lower`.
    Descending {
        lower: Partition,
        upper: Partition,
        ell: usize,
    },
    /// Ascending step that extends the Wronskian over `base_degrees` by
    /// `added_degree`.
    Ascending {
        base_degrees: Vec<usize>,
        added_degree: usize,
    },
    /// A hand-built step (for example the classical η = ξ = 1 step).
    Custom,
}

/// One Darboux step: a pair of Wronskians (η before, ξ after) together with
/// the factorization constant ε₀ appearing in τ_η = β∘α + ε₀ and
/// τ_ξ = α∘β + ε₀ + 2.
///
/// Construction verifies χ(η, ξ) = ε₀·η·ξ exactly; both polynomials must be
/// non-zero. The invariant is insensitive to non-zero scalar rescaling of
/// either polynomial, so normalized and raw Wronskians may be mixed freely.
#[derive(Clone, Debug)]
pub struct ChainStep {
    j: usize,
    eta_lo: ExactPoly,
    eta_hi: ExactPoly,
    eps0: i64,
    meta: StepMeta,
}

impl ChainStep {
    pub fn new(
        j: usize,
        eta_lo: ExactPoly,
        eta_hi: ExactPoly,
        eps0: i64,
        meta: StepMeta,
    ) -> Result<Self> {
        if eta_lo.is_zero() || eta_hi.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let residual = &chi(&eta_lo, &eta_hi) - &(&eta_lo * &eta_hi).scale_int(eps0);
        if !residual.is_zero() {
            return Err(Error::identity(
                format!("chain-step invariant chi(eta_lo, eta_hi) = {eps0}*eta_lo*eta_hi at step {j}"),
                &residual,
            ));
        }
        Ok(ChainStep {
            j,
            eta_lo,
            eta_hi,
            eps0,
            meta,
        })
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn eta_lo(&self) -> &ExactPoly {
        &self.eta_lo
    }

    pub fn eta_hi(&self) -> &ExactPoly {
        &self.eta_hi
    }

    pub fn eps0(&self) -> i64 {
        self.eps0
    }

    pub fn meta(&self) -> &StepMeta {
        &self.meta
    }
}

/// Build the full factorization chain for an even partition.
///
/// Descending mode produces λ₁ steps through the column truncations
/// λ = λ^(0), λ^(1), …, λ^(λ₁) = ∅ with ε₀ = 2ℓ_j (ℓ_j the number of parts
/// of λ^(j)); the final η is the constant of the classical operator.
/// Ascending mode adds the sporadic degrees of λ one at a time on top of
/// the exceptional-degree Wronskian; see [`build_ascending_chain`] for
/// arbitrary degree lists. The empty partition yields an empty chain.
pub fn build_chain(lambda: &Partition, mode: ChainMode) -> Result<Vec<ChainStep>> {
    if !lambda.is_even() {
        return Err(Error::NotEven(lambda.to_string()));
    }
    match mode {
        ChainMode::Descending => build_descending(lambda),
        ChainMode::Ascending => build_ascending_chain(lambda, lambda.degree_sets().sporadic()),
    }
}

fn build_descending(lambda: &Partition) -> Result<Vec<ChainStep>> {
    let steps_total = lambda.first_part();
    let mut steps = Vec::with_capacity(steps_total);
    for j in 0..steps_total {
        let lower = lambda.truncate(j);
        let upper = lambda.truncate(j + 1);
        let ell = lower.ell();
        let eta_lo = family::eta(&lower, None)?;
        let eta_hi = family::eta(&upper, None)?;
        steps.push(ChainStep::new(
            j,
            eta_lo,
            eta_hi,
            2 * ell as i64,
            StepMeta::Descending { lower, upper, ell },
        )?);
    }
    Ok(steps)
}

/// Build an ascending chain over an arbitrary strictly increasing list of
/// allowed degrees n_1 < n_2 < … (no evenness required): step i extends
/// the Wronskian over K_λ ∪ {n_1, …, n_i} by H_{n_{i+1}}, with
/// ε₀ = 2(N + i − n_{i+1}).
pub fn build_ascending_chain(lambda: &Partition, degrees: &[usize]) -> Result<Vec<ChainStep>> {
    let sets = lambda.degree_sets();
    for pair in degrees.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidArgument(format!(
                "ascending degrees must be strictly increasing, got {degrees:?}"
            )));
        }
    }
    for &n in degrees {
        if sets.is_exceptional(n) {
            return Err(Error::GapDegree { n });
        }
    }
    let big_n = lambda.n() as i64;
    let mut current: Vec<usize> = sets.exceptional().to_vec();
    let mut eta_lo = wr_or_one(&current)?;
    let mut steps = Vec::with_capacity(degrees.len());
    for (i, &added) in degrees.iter().enumerate() {
        let base = current.clone();
        let pos = current.partition_point(|&d| d < added);
        current.insert(pos, added);
        let eta_hi = wr_or_one(&current)?;
        let eps0 = 2 * (big_n + i as i64 - added as i64);
        steps.push(ChainStep::new(
            i,
            eta_lo,
            eta_hi.clone(),
            eps0,
            StepMeta::Ascending {
                base_degrees: base,
                added_degree: added,
            },
        )?);
        eta_lo = eta_hi;
    }
    Ok(steps)
}

/// Verify both composition identities of a Darboux step on a probe
/// polynomial y:
///
/// ```text
/// r₁ = τ_η y − β_{η,ξ}(α_{ξ,η} y) − ε₀·y        (η = eta_lo, ξ = eta_hi)
/// r₂ = τ_ξ y − α_{ξ,η}(β_{η,ξ} y) − (ε₀+2)·y
/// ```
///
/// Both must be the canonical zero; they are returned for reporting.
pub fn verify_factorization(step: &ChainStep, probe: &ExactPoly) -> Result<(RatFun, RatFun)> {
    let eta = step.eta_lo();
    let xi = step.eta_hi();
    let y = RatFun::from_poly(probe.clone());

    let alpha_y = alpha_apply(xi, eta, &y)?;
    let beta_alpha_y = beta_apply(eta, xi, &alpha_y)?;
    let r1 = &(&tau_apply(eta, probe)? - &beta_alpha_y) - &y.scale_int(step.eps0());
    if !r1.is_zero() {
        return Err(Error::identity(
            format!("factorization tau = beta*alpha + {} at step {}", step.eps0(), step.j()),
            &r1,
        ));
    }

    let beta_y = beta_apply(eta, xi, &y)?;
    let alpha_beta_y = alpha_apply(xi, eta, &beta_y)?;
    let r2 = &(&tau_apply(xi, probe)? - &alpha_beta_y) - &y.scale_int(step.eps0() + 2);
    if !r2.is_zero() {
        return Err(Error::identity(
            format!(
                "factorization tau = alpha*beta + {} at step {}",
                step.eps0() + 2,
                step.j()
            ),
            &r2,
        ));
    }
    Ok((r1, r2))
}

/// Residual of the adjoint identity relating α and β. After cancelling the
/// common Gaussian factor the identity is purely rational:
///
/// ```text
/// (α_{ξ,η}f)·g/ξ² + f·(β_{η,ξ}g)/η² = D[f·g/(η·ξ)] − 2x·f·g/(η·ξ)
/// ```
///
/// The residual (left minus right) is returned and must be zero.
pub fn adjoint_identity_residual(
    xi: &ExactPoly,
    eta: &ExactPoly,
    f: &ExactPoly,
    g: &ExactPoly,
) -> Result<RatFun> {
    if xi.is_zero() || eta.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let f_r = RatFun::from_poly(f.clone());
    let g_r = RatFun::from_poly(g.clone());
    let alpha_f = alpha_apply(xi, eta, &f_r)?;
    let beta_g = beta_apply(eta, xi, &g_r)?;
    let term_alpha = (&alpha_f * &g_r).div(&RatFun::from_poly(xi * xi))?;
    let term_beta = (&f_r * &beta_g).div(&RatFun::from_poly(eta * eta))?;
    let fg_over_etaxi = RatFun::new(f * g, eta * xi)?;
    let two_x = RatFun::from_poly(ExactPoly::from_integers(&[0, 2]));
    let residual = &(&(&term_alpha + &term_beta) - &fg_over_etaxi.derivative())
        + &(&two_x * &fg_over_etaxi);
    if !residual.is_zero() {
        return Err(Error::identity("adjoint identity for alpha/beta", &residual));
    }
    Ok(residual)
}

/// Residual of the Lagrange (formal symmetry) identity for τ_η, with
/// Wr(f,g) = f·g′ − f′·g:
///
/// ```text
/// (τ_η f)·g − f·(τ_η g) + η²·D[Wr(f,g)/η²] − 2x·Wr(f,g) = 0
/// ```
///
/// Equivalently, (τ_η f)g − f(τ_η g) = η²e^{x²}·D[Wr(f,g)·e^{−x²}/η²],
/// which is what makes τ_η symmetric in the η-weighted inner product. The
/// residual is returned and must be zero.
pub fn lagrange_identity_residual(
    eta: &ExactPoly,
    f: &ExactPoly,
    g: &ExactPoly,
) -> Result<RatFun> {
    let tau_f = tau_apply(eta, f)?;
    let tau_g = tau_apply(eta, g)?;
    let f_r = RatFun::from_poly(f.clone());
    let g_r = RatFun::from_poly(g.clone());
    let wr = &(f * &g.derivative()) - &(&f.derivative() * g);
    let eta_sq = eta * eta;
    let wr_over_eta_sq = RatFun::new(wr.clone(), eta_sq.clone())?;
    let two_x = ExactPoly::from_integers(&[0, 2]);
    let residual = &(&(&(&tau_f * &g_r) - &(&f_r * &tau_g))
        + &(&RatFun::from_poly(eta_sq) * &wr_over_eta_sq.derivative()))
        - &RatFun::from_poly(&two_x * &wr);
    if !residual.is_zero() {
        return Err(Error::identity("Lagrange identity for tau", &residual));
    }
    Ok(residual)
}

/// One level of the telescoping norm computation: η_i is the Hermite
/// Wronskian over the first i degrees of `ms`, ξ_i the same stack with H_m
/// appended, and ρ_i the accumulated boundary term.
#[derive(Clone, Debug)]
pub struct NormChainState {
    pub index: usize,
    pub xi: ExactPoly,
    pub eta: ExactPoly,
    pub rho: RatFun,
}

/// Build the norm-chain states i = 0..l for distinct degrees `ms` and an
/// extra degree m ∉ ms: ρ_0 = 0 and
/// ρ_{i+1} = ξ_i·ξ_{i+1}/(η_i·η_{i+1}) + 2(m − ms[i])·ρ_i.
pub fn norm_chain_states(ms: &[usize], m: usize) -> Result<Vec<NormChainState>> {
    require_distinct(ms, m)?;
    let mut states: Vec<NormChainState> = Vec::with_capacity(ms.len() + 1);
    for i in 0..=ms.len() {
        let eta = wr_or_one(&ms[..i])?;
        let mut stack = ms[..i].to_vec();
        stack.push(m);
        let xi = wr_or_one(&stack)?;
        let rho = if i == 0 {
            RatFun::zero()
        } else {
            let prev = &states[i - 1];
            let cross = RatFun::new(&prev.xi * &xi, &prev.eta * &eta)?;
            &cross + &prev.rho.scale_int(2 * (m as i64 - ms[i - 1] as i64))
        };
        states.push(NormChainState {
            index: i,
            xi,
            eta,
            rho,
        });
    }
    Ok(states)
}

/// Residual of the telescoped norm identity: with the states above and
/// ξ_0 = H_m,
///
/// ```text
/// (ξ_l/η_l)² − 2^l·∏ᵢ(m − mᵢ)·ξ_0² − (ρ_l′ − 2x·ρ_l) = 0 .
/// ```
///
/// Multiplied by e^{−x²} this says the weighted square of the l-times
/// Darboux-transformed H_m differs from a scalar multiple of H_m²e^{−x²}
/// by an exact derivative — the engine behind the norming constants.
pub fn norm_identity_residual(ms: &[usize], m: usize) -> Result<RatFun> {
    let states = norm_chain_states(ms, m)?;
    let last = states.last().expect("at least the i = 0 state exists");
    let lhs = RatFun::new(&last.xi * &last.xi, &last.eta * &last.eta)?;
    let mut prefactor = BigInt::one() << ms.len();
    for &mi in ms {
        prefactor *= BigInt::from(m as i64 - mi as i64);
    }
    let h_m = &states[0].xi;
    let scaled_sq = RatFun::from_poly((h_m * h_m).scale(&BigRational::from_integer(prefactor)));
    let two_x = RatFun::from_poly(ExactPoly::from_integers(&[0, 2]));
    let boundary = &last.rho.derivative() - &(&two_x * &last.rho);
    let residual = &(&lhs - &scaled_sq) - &boundary;
    if !residual.is_zero() {
        return Err(Error::identity(
            format!("norm identity for degrees {ms:?} + {m}"),
            &residual,
        ));
    }
    Ok(residual)
}

/// The truncated spectrum {2(n − N) : n allowed, n ≤ cutoff}, sorted
/// ascending. This is the Sturm–Liouville sign convention in which the
/// classical spectrum is {0, 2, 4, …}; the factorization bookkeeping of
/// [`chain_spectra`] uses the opposite (operator) sign, 2(N − n), whose
/// level maximum is the factorization constant.
pub fn spectrum(lambda: &Partition, cutoff: usize) -> Vec<i64> {
    let big_n = lambda.n() as i64;
    lambda
        .degree_sets()
        .allowed_up_to(cutoff)
        .into_iter()
        .map(|n| 2 * (n as i64 - big_n))
        .collect()
}

/// Truncated operator-convention spectrum of one chain level.
///
/// Eigenvalues are 2(N_j − n) (the factorization convention, in which the
/// level maximum is the factorization constant 2ℓ_j), sorted descending,
/// and truncated at `floor`; the floors rise by 2 per level so consecutive
/// truncations stay exactly comparable.
#[derive(Clone, Debug)]
pub struct SpectrumLevel {
    pub j: usize,
    pub partition: Partition,
    pub ell: usize,
    pub floor: i64,
    pub eigenvalues: Vec<i64>,
}

/// Truncated spectra of all λ₁ + 1 levels of the descending chain of an
/// even partition, with matched truncation windows: level j keeps
/// eigenvalues ≥ 2(N − cutoff) + 2j. Requires cutoff ≥ λ₁ + N so that even
/// the last (classical) level retains its maximum.
pub fn chain_spectra(lambda: &Partition, cutoff: usize) -> Result<Vec<SpectrumLevel>> {
    if !lambda.is_even() {
        return Err(Error::NotEven(lambda.to_string()));
    }
    let big_n = lambda.n() as i64;
    if (cutoff as i64) < lambda.first_part() as i64 + big_n {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} is below the minimum {} for partition {lambda}",
            lambda.first_part() + lambda.n()
        )));
    }
    let mut levels = Vec::with_capacity(lambda.first_part() + 1);
    for j in 0..=lambda.first_part() {
        let part = lambda.truncate(j);
        let n_j = part.n() as i64;
        let floor = 2 * (big_n - cutoff as i64) + 2 * j as i64;
        // 2(N_j − n) ≥ floor ⟺ n ≤ N_j − N + cutoff − j, which is ≥ 0
        // because cutoff ≥ λ₁ + N ≥ (N − N_j) + j for every level.
        let level_cutoff = (n_j - big_n + cutoff as i64 - j as i64) as usize;
        // Ascending degrees map to descending eigenvalues 2(N_j − n).
        let eigenvalues: Vec<i64> = part
            .degree_sets()
            .allowed_up_to(level_cutoff)
            .into_iter()
            .map(|n| 2 * (n_j - n as i64))
            .collect();
        levels.push(SpectrumLevel {
            j,
            ell: part.ell(),
            partition: part,
            floor,
            eigenvalues,
        });
    }
    Ok(levels)
}

/// Verify the spectral bookkeeping of the descending chain: at every level
/// the truncated maximum equals the factorization constant 2ℓ_j, and the
/// next level's spectrum shifted by −2 equals this level's spectrum with
/// its maximum removed. Returns the levels for reporting.
pub fn verify_spectrum_removal(lambda: &Partition, cutoff: usize) -> Result<Vec<SpectrumLevel>> {
    let levels = chain_spectra(lambda, cutoff)?;
    for level in &levels {
        let expected_max = 2 * level.ell as i64;
        if level.eigenvalues.first() != Some(&expected_max) {
            return Err(Error::identity(
                format!("maximum eigenvalue at chain level {}", level.j),
                format!(
                    "expected {expected_max}, spectrum starts {:?}",
                    level.eigenvalues.first()
                ),
            ));
        }
    }
    for pair in levels.windows(2) {
        let shifted: Vec<i64> = pair[1].eigenvalues.iter().map(|e| e - 2).collect();
        let removed: Vec<i64> = pair[0].eigenvalues[1..].to_vec();
        if shifted != removed {
            return Err(Error::identity(
                format!("spectrum removal rule at step {}", pair[0].j),
                format!("shifted next level {shifted:?} vs maximum-removed {removed:?}"),
            ));
        }
    }
    Ok(levels)
}
