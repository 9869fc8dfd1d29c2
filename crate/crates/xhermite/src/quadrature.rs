//! Independent floating-point oracle: Gauss–Hermite rules, evaluation of
//! the deformed weights, numeric inner products and Gram matrices, and the
//! Darboux norm cross-check.
//!
//! Everything exact lives elsewhere; this module deliberately re-derives
//! integrals numerically (nodes and weights from the Jacobi-matrix
//! eigenproblem, double precision throughout) so that agreement with the
//! closed-form norming constants is evidence, not circularity. Integrands
//! here are polynomials divided by η², with the Gaussian absorbed into the
//! rule's weights; such integrals are not exact for any finite rule, so
//! callers compare against tolerances and use order-doubling as a
//! convergence guard.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactpoly::{count_real_roots, ExactPoly, RatFun};
use crate::family::{FamilySpec, NormingConstant};
use crate::operators::{alpha_apply, ChainStep};
use crate::partitions::Partition;

/// Largest even moment verified at construction time. Rules of very high
/// order would overflow f64 in x^{2k} long before the rule itself loses
/// accuracy, so the self-check is capped; the full moment law is exercised
/// for moderate orders in the test suite.
const MOMENT_CHECK_CAP: usize = 60;

/// Default order-doubling drift threshold for the convergence guard: the
/// guard accepts once doubling the order moves the answer by less than
/// this, relative.
pub const DEFAULT_DRIFT_TOL: f64 = 1e-9;

/// Default cap on the quadrature order during convergence-guarded
/// doubling. Integrands here are polynomials over η² with η zero-free, so
/// Gauss–Hermite converges root-exponentially; the poles of 1/η² closest
/// to the real axis set the rate, and this cap is comfortably past the
/// orders needed by every weight the test grid touches.
pub const DEFAULT_ORDER_CAP: usize = 960;

/// A Gauss–Hermite rule: nodes at the roots of H_order and positive
/// weights, computed from the symmetric tridiagonal Jacobi matrix of the
/// three-term recurrence. Σ weights = √π; the rule integrates
/// p(x)·e^{−x²} exactly (up to rounding) for deg p ≤ 2·order − 1.
#[derive(Clone, Debug)]
pub struct QuadRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// One pass of the orthonormal Hermite recurrence at x: returns
/// (h̃_{order−1}(x), h̃_order(x), Σ_{k<order} h̃_k(x)²). Intermediate values
/// grow like e^{x²/2}, so the scan can overflow at the outermost nodes of
/// very large rules (|x| ≳ 38); callers treat non-finite results as
/// underflowed-to-zero weights and skip Newton polishing there.
fn orthonormal_scan(order: usize, x: f64) -> (f64, f64, f64) {
    let mut prev = 0.0; // h̃_{−1}
    let mut cur = PI.powf(-0.25); // h̃_0
    let mut sum_sq = 0.0;
    for k in 0..order {
        sum_sq += cur * cur;
        let next = (x * cur - (k as f64 / 2.0).sqrt() * prev) / ((k + 1) as f64 / 2.0).sqrt();
        prev = cur;
        cur = next;
    }
    (prev, cur, sum_sq)
}

/// Build the Gauss–Hermite rule of the given order (≥ 1).
///
/// Eigenvalues of the Jacobi matrix (zero diagonal, off-diagonal √(k/2))
/// seed the nodes; each node is then Newton-polished on the orthonormal
/// recurrence (h̃_n′ = √(2n)·h̃_{n−1}) and the rule is symmetrized exactly
/// about 0. Weights are the Christoffel numbers 1/Σ_{k<n} h̃_k(x_i)²,
/// which are numerically benign even where the weights are tiny.
/// Construction verifies Σw = √π (1e−12 relative), node symmetry about 0
/// (1e−12), and the even-moment law up to min(2·order−1, 60) at 1e−10
/// relative.
pub fn gauss_hermite_rule(order: usize) -> Result<QuadRule> {
    if order == 0 {
        return Err(Error::InvalidArgument(
            "quadrature order must be at least 1".into(),
        ));
    }
    let mut jacobi = DMatrix::<f64>::zeros(order, order);
    for k in 1..order {
        let b = (k as f64 / 2.0).sqrt();
        jacobi[(k, k - 1)] = b;
        jacobi[(k - 1, k)] = b;
    }
    let mut nodes: Vec<f64> = jacobi.symmetric_eigen().eigenvalues.iter().copied().collect();
    nodes.sort_by(f64::total_cmp);
    let newton_step = |x: f64| {
        let (below, value, _) = orthonormal_scan(order, x);
        x - value / ((2.0 * order as f64).sqrt() * below)
    };
    for x in &mut nodes {
        for _ in 0..3 {
            let polished = newton_step(*x);
            // At very high orders the scan overflows f64 at the outermost
            // nodes (h̃ grows like e^{x²/2}); keep the eigenvalue estimate
            // there — those nodes carry weights that underflow to zero.
            if polished.is_finite() {
                *x = polished;
            }
        }
    }
    // The true node set is exactly symmetric; enforce that bit-for-bit.
    for i in 0..order / 2 {
        let mirror = (nodes[order - 1 - i] - nodes[i]) / 2.0;
        nodes[i] = -mirror;
        nodes[order - 1 - i] = mirror;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    let weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let w = 1.0 / orthonormal_scan(order, x).2;
            // Outermost nodes of very large rules: the scan overflows and
            // the true weight e^{−x²}·O(1) underflows f64 — it is zero.
            if w.is_finite() {
                w
            } else {
                0.0
            }
        })
        .collect();
    let rule = QuadRule {
        order,
        nodes,
        weights,
    };
    rule.self_check()?;
    Ok(rule)
}

impl QuadRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ w_i·f(x_i): the rule applied to f, approximating ∫f(x)e^{−x²}dx.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    // Tolerance comparisons are written in negated form (`!(err <= tol)`)
    // on purpose: they must also trip when `err` is NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn self_check(&self) -> Result<()> {
        // Comparisons are written in the negated `!(err <= tol)` form so a
        // NaN sneaking into nodes or weights fails the check instead of
        // slipping past a `> tol` test.
        for (i, (&x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            if !x.is_finite() || !w.is_finite() {
                return Err(Error::identity(
                    format!("finiteness of the order-{} rule", self.order),
                    format!("node {i}: x = {x:e}, w = {w:e}"),
                ));
            }
        }
        let sqrt_pi = PI.sqrt();
        let total: f64 = self.weights.iter().sum();
        if !(((total - sqrt_pi) / sqrt_pi).abs() <= 1e-12) {
            return Err(Error::identity(
                format!("zeroth moment of the order-{} rule", self.order),
                format!("sum of weights {total:.17e} vs sqrt(pi) {sqrt_pi:.17e}"),
            ));
        }
        for i in 0..self.order / 2 {
            let skew = self.nodes[i] + self.nodes[self.order - 1 - i];
            if !(skew.abs() <= 1e-12) {
                return Err(Error::identity(
                    format!("node symmetry of the order-{} rule", self.order),
                    format!("node pair {i} sums to {skew:.3e}"),
                ));
            }
        }
        // Even moments: ∫x^{2k}e^{−x²} = √π·(2k−1)!!/2^k.
        let mut exact = sqrt_pi;
        let mut k = 0usize;
        while 2 * (k + 1) <= (2 * self.order - 1).min(MOMENT_CHECK_CAP) {
            k += 1;
            exact *= (2 * k - 1) as f64 / 2.0;
            let numeric = self.integrate(|x| x.powi(2 * k as i32));
            if !(((numeric - exact) / exact).abs() <= 1e-10) {
                return Err(Error::identity(
                    format!("moment 2k = {} of the order-{} rule", 2 * k, self.order),
                    format!("numeric {numeric:.17e} vs exact {exact:.17e}"),
                ));
            }
        }
        Ok(())
    }
}

/// Horner evaluator for an exact polynomial at float arguments. Conversion
/// to f64 happens once, up front; `magnitude_warning` flags coefficients
/// beyond 1e15, where double precision starts shedding integer accuracy.
#[derive(Clone, Debug)]
pub struct PolyEval {
    coeffs: Vec<f64>,
    magnitude_warning: bool,
}

impl PolyEval {
    pub fn new(p: &ExactPoly) -> Self {
        let coeffs: Vec<f64> = p
            .coeffs()
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        let magnitude_warning = coeffs.iter().any(|c| c.abs() > 1e15);
        PolyEval {
            coeffs,
            magnitude_warning,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn magnitude_warning(&self) -> bool {
        self.magnitude_warning
    }
}

/// Float evaluator for the deformed weight W(x) = η(x)^{−2}e^{−x²} of an
/// even partition, plus the associated curvature function
/// R(x) = η(x)^{−3}(η″(x) + 2x·η′(x))e^{−x²}.
///
/// Construction re-certifies (via a Sturm count, not floats) that η has no
/// real zeros, so the weight is smooth and positive on the whole line.
pub struct WeightEval {
    lambda: Partition,
    eta: PolyEval,
    eta_d1: PolyEval,
    eta_d2: PolyEval,
}

impl WeightEval {
    pub fn new(family: &FamilySpec) -> Result<Self> {
        if !family.lambda().is_even() {
            return Err(Error::NotEven(family.lambda().to_string()));
        }
        if count_real_roots(family.eta())? != 0 {
            return Err(Error::identity(
                "non-singular weight requires a zero-free eta",
                family.eta(),
            ));
        }
        let d1 = family.eta().derivative();
        let d2 = d1.derivative();
        Ok(WeightEval {
            lambda: family.lambda().clone(),
            eta: PolyEval::new(family.eta()),
            eta_d1: PolyEval::new(&d1),
            eta_d2: PolyEval::new(&d2),
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn eta_at(&self, x: f64) -> f64 {
        self.eta.eval(x)
    }

    /// W(x) = η(x)^{−2}·e^{−x²}.
    pub fn weight_at(&self, x: f64) -> f64 {
        let e = self.eta.eval(x);
        (-x * x).exp() / (e * e)
    }

    /// R(x) = η(x)^{−3}·(η″(x) + 2x·η′(x))·e^{−x²}.
    pub fn r_eta_at(&self, x: f64) -> f64 {
        let e = self.eta.eval(x);
        (self.eta_d2.eval(x) + 2.0 * x * self.eta_d1.eval(x)) * (-x * x).exp() / (e * e * e)
    }
}

/// ⟨f, g⟩ against an already-built weight: Σ w_k·f(x_k)·g(x_k)/η(x_k)².
/// The Gaussian lives inside the rule's weights.
pub fn inner_product_with_weight(
    weight: &WeightEval,
    f: &ExactPoly,
    g: &ExactPoly,
    rule: &QuadRule,
) -> f64 {
    let fe = PolyEval::new(f);
    let ge = PolyEval::new(g);
    rule.integrate(|x| {
        let e = weight.eta_at(x);
        fe.eval(x) * ge.eval(x) / (e * e)
    })
}

/// ⟨f, g⟩ for an even partition: quadrature value of ∫f·g·η^{−2}e^{−x²}.
pub fn inner_product(
    lambda: &Partition,
    f: &ExactPoly,
    g: &ExactPoly,
    rule: &QuadRule,
) -> Result<f64> {
    let family = FamilySpec::new(lambda.clone())?;
    let weight = WeightEval::new(&family)?;
    Ok(inner_product_with_weight(&weight, f, g, rule))
}

/// Gram matrix of the family members at the given allowed degrees, as raw
/// quadrature values (row/column order follows `degrees`). Off-diagonal
/// entries should vanish up to quadrature error; the diagonal should match
/// the closed-form norming constants. Gap degrees are rejected; an empty
/// degree list yields an empty matrix.
pub fn gram_matrix(
    lambda: &Partition,
    degrees: &[usize],
    rule: &QuadRule,
) -> Result<Vec<Vec<f64>>> {
    let family = FamilySpec::new(lambda.clone())?;
    let weight = WeightEval::new(&family)?;
    gram_with(&family, &weight, degrees, rule)
}

fn gram_with(
    family: &FamilySpec,
    weight: &WeightEval,
    degrees: &[usize],
    rule: &QuadRule,
) -> Result<Vec<Vec<f64>>> {
    for &n in degrees {
        if family.degree_sets().is_exceptional(n) {
            return Err(Error::GapDegree { n });
        }
    }
    let evaluators: Vec<PolyEval> = degrees
        .iter()
        .map(|&n| Ok(PolyEval::new(&family.polynomial(n)?)))
        .collect::<Result<_>>()?;
    // Tabulate member values and the common weight factor per node.
    let node_weights: Vec<f64> = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&x, &w)| {
            let e = weight.eta_at(x);
            w / (e * e)
        })
        .collect();
    let values: Vec<Vec<f64>> = evaluators
        .iter()
        .map(|p| rule.nodes().iter().map(|&x| p.eval(x)).collect())
        .collect();
    let dim = degrees.len();
    let mut gram = vec![vec![0.0; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let entry: f64 = (0..rule.order())
                .map(|k| node_weights[k] * values[i][k] * values[j][k])
                .sum();
            gram[i][j] = entry;
            gram[j][i] = entry;
        }
    }
    Ok(gram)
}

/// The float value q·√π of an exact norming constant.
pub fn norming_constant_value(nc: &NormingConstant) -> f64 {
    nc.factor.to_f64().unwrap_or(f64::NAN) * PI.sqrt()
}

thread_local! {
    static RULE_CACHE: RefCell<BTreeMap<usize, QuadRule>> =
        const { RefCell::new(BTreeMap::new()) };
}

/// Per-thread memoized [`gauss_hermite_rule`]; the convergence-guarded
/// helpers below revisit the same handful of orders constantly.
pub fn cached_rule(order: usize) -> Result<QuadRule> {
    RULE_CACHE.with(|cache| {
        if let Some(rule) = cache.borrow().get(&order) {
            return Ok(rule.clone());
        }
        let rule = gauss_hermite_rule(order)?;
        cache.borrow_mut().insert(order, rule.clone());
        Ok(rule)
    })
}

/// A quadrature result together with the convergence-guard evidence: the
/// final rule order, the last relative drift observed across an order
/// doubling, and whether the drift threshold was met before the order cap.
#[derive(Clone, Debug)]
pub struct Converged<T> {
    pub value: T,
    pub order: usize,
    pub drift: f64,
    pub converged: bool,
}

fn rel_drift(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Convergence-guarded ⟨f, g⟩: evaluate at `start_order`, then double the
/// order until the relative drift of the value falls below `drift_tol` or
/// the cap is reached. Rational-weight integrands are never integrated
/// exactly by a finite rule, so this guard — not any fixed order — is what
/// justifies comparing against a tolerance. Intended for values bounded
/// away from zero (norms); for near-zero quantities compare against an
/// external scale instead.
pub fn converged_inner_product(
    lambda: &Partition,
    f: &ExactPoly,
    g: &ExactPoly,
    start_order: usize,
    drift_tol: f64,
    order_cap: usize,
) -> Result<Converged<f64>> {
    let family = FamilySpec::new(lambda.clone())?;
    let weight = WeightEval::new(&family)?;
    let mut order = start_order.max(1);
    let mut value = inner_product_with_weight(&weight, f, g, &cached_rule(order)?);
    let mut drift = f64::INFINITY;
    while 2 * order <= order_cap {
        order *= 2;
        let next = inner_product_with_weight(&weight, f, g, &cached_rule(order)?);
        drift = rel_drift(next, value);
        value = next;
        if drift < drift_tol {
            return Ok(Converged {
                value,
                order,
                drift,
                converged: true,
            });
        }
    }
    Ok(Converged {
        value,
        order,
        drift,
        converged: drift < drift_tol,
    })
}

/// Convergence-guarded Gram matrix: doubles the order until every entry is
/// stable relative to the geometric mean of its two diagonal neighbours
/// (the natural scale for off-diagonal entries, whose true value is zero).
pub fn converged_gram_matrix(
    lambda: &Partition,
    degrees: &[usize],
    start_order: usize,
    drift_tol: f64,
    order_cap: usize,
) -> Result<Converged<Vec<Vec<f64>>>> {
    let family = FamilySpec::new(lambda.clone())?;
    let weight = WeightEval::new(&family)?;
    let mut order = start_order.max(1);
    let mut gram = gram_with(&family, &weight, degrees, &cached_rule(order)?)?;
    if degrees.is_empty() {
        return Ok(Converged {
            value: gram,
            order,
            drift: 0.0,
            converged: true,
        });
    }
    let mut drift = f64::INFINITY;
    loop {
        if 2 * order > order_cap {
            return Ok(Converged {
                value: gram,
                order,
                drift,
                converged: drift < drift_tol,
            });
        }
        order *= 2;
        let next = gram_with(&family, &weight, degrees, &cached_rule(order)?)?;
        drift = 0.0;
        for i in 0..degrees.len() {
            for j in 0..degrees.len() {
                let scale = (next[i][i] * next[j][j]).sqrt();
                drift = drift.max((next[i][j] - gram[i][j]).abs() / scale);
            }
        }
        gram = next;
        if drift < drift_tol {
            return Ok(Converged {
                value: gram,
                order,
                drift,
                converged: true,
            });
        }
    }
}

/// Convergence-guarded [`chain_norm_check`]: both sides are re-evaluated
/// under order doubling until they are jointly stable.
pub fn converged_chain_norm(
    step: &ChainStep,
    psi: &ExactPoly,
    eps: i64,
    start_order: usize,
    drift_tol: f64,
    order_cap: usize,
) -> Result<Converged<(f64, f64)>> {
    let mut order = start_order.max(1);
    let mut pair = chain_norm_check(step, psi, eps, &cached_rule(order)?)?;
    let mut drift = f64::INFINITY;
    while 2 * order <= order_cap {
        order *= 2;
        let next = chain_norm_check(step, psi, eps, &cached_rule(order)?)?;
        let scale = next.0.abs().max(next.1.abs()).max(pair.0.abs()).max(pair.1.abs());
        drift = if scale == 0.0 {
            0.0
        } else {
            ((next.0 - pair.0).abs().max((next.1 - pair.1).abs())) / scale
        };
        pair = next;
        if drift < drift_tol {
            return Ok(Converged {
                value: pair,
                order,
                drift,
                converged: true,
            });
        }
    }
    Ok(Converged {
        value: pair,
        order,
        drift,
        converged: drift < drift_tol,
    })
}

/// Numeric cross-check of the Darboux norm relation ‖α ψ‖²_ξ = (ε₀−ε)‖ψ‖²_η
/// on one chain step: returns the two sides as quadrature values for the
/// caller to compare. ψ must be an eigenpolynomial of the lower operator
/// with eigenvalue ε ≤ ε₀; α ψ must reduce to a polynomial. Both η and ξ
/// must be zero-free (automatic along the descending chain of an even
/// partition), otherwise the weights are singular and the check refuses to
/// run.
pub fn chain_norm_check(
    step: &ChainStep,
    psi: &ExactPoly,
    eps: i64,
    rule: &QuadRule,
) -> Result<(f64, f64)> {
    if eps > step.eps0() {
        return Err(Error::InvalidArgument(format!(
            "eigenvalue {eps} exceeds the factorization constant {}",
            step.eps0()
        )));
    }
    for (name, poly) in [("eta", step.eta_lo()), ("xi", step.eta_hi())] {
        if count_real_roots(poly)? != 0 {
            return Err(Error::InvalidArgument(format!(
                "{name} of the step has real zeros; its weight is singular"
            )));
        }
    }
    let alpha_psi = alpha_apply(step.eta_hi(), step.eta_lo(), &RatFun::from_poly(psi.clone()))?;
    let psi_hat = alpha_psi.as_polynomial().ok_or_else(|| {
        Error::identity("alpha(psi) must reduce to a polynomial", &alpha_psi)
    })?;
    let hat_eval = PolyEval::new(psi_hat);
    let psi_eval = PolyEval::new(psi);
    let xi_eval = PolyEval::new(step.eta_hi());
    let eta_eval = PolyEval::new(step.eta_lo());
    let lhs = rule.integrate(|x| {
        let v = hat_eval.eval(x) / xi_eval.eval(x);
        v * v
    });
    let rhs = (step.eps0() - eps) as f64
        * rule.integrate(|x| {
            let v = psi_eval.eval(x) / eta_eval.eval(x);
            v * v
        });
    Ok((lhs, rhs))
}
