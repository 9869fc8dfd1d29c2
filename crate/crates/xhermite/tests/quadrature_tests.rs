//! Quadrature-oracle integration checks: classical Gram matrices against
//! the closed-form norms, weight positivity across node sets, guarded
//! convergence for the deformed families, and consistency of the float
//! evaluators with the exact layer.

use approx::assert_relative_eq;
use num::{BigRational, ToPrimitive};
use std::f64::consts::PI;
use xhermite::family::{exceptional_hermite, hermite, norming_constant, FamilySpec};
use xhermite::partitions::{partitions_of, Partition};
use xhermite::quadrature::{
    cached_rule, converged_gram_matrix, converged_inner_product, gauss_hermite_rule, gram_matrix,
    inner_product, norming_constant_value, PolyEval, WeightEval, DEFAULT_DRIFT_TOL,
    DEFAULT_ORDER_CAP,
};

fn classical_norm(n: usize) -> f64 {
    let mut v = PI.sqrt();
    for k in 1..=n {
        v *= 2.0 * k as f64;
    }
    v
}

#[test]
fn classical_gram_matches_closed_form_norms() {
    let rule = gauss_hermite_rule(40).unwrap();
    let degrees: Vec<usize> = (0..=12).collect();
    let gram = gram_matrix(&Partition::empty(), &degrees, &rule).unwrap();
    for (i, &n) in degrees.iter().enumerate() {
        assert_relative_eq!(gram[i][i], classical_norm(n), max_relative = 1e-10);
        for (j, &m) in degrees.iter().enumerate() {
            if i != j {
                let scale = (classical_norm(n) * classical_norm(m)).sqrt();
                assert!(
                    gram[i][j].abs() < 1e-10 * scale,
                    "⟨H_{n}, H_{m}⟩ = {}",
                    gram[i][j]
                );
            }
        }
    }
}

#[test]
fn weight_is_positive_at_every_node_for_even_partitions() {
    let rule = gauss_hermite_rule(60).unwrap();
    for n_weight in (0..=6usize).step_by(2) {
        for lam in partitions_of(n_weight) {
            if !lam.is_even() {
                continue;
            }
            let family = FamilySpec::new(lam.clone()).unwrap();
            let weight = WeightEval::new(&family).unwrap();
            let min_eta_sq = rule
                .nodes()
                .iter()
                .map(|&x| weight.eta_at(x).powi(2))
                .fold(f64::INFINITY, f64::min);
            assert!(min_eta_sq > 0.0, "λ = {lam}");
            for &x in rule.nodes() {
                assert!(weight.weight_at(x) > 0.0, "λ = {lam}, x = {x}");
            }
        }
    }
}

#[test]
fn odd_partitions_are_rejected_by_the_weight_and_inner_product() {
    let lam21 = Partition::new(&[2, 1]).unwrap();
    let family = FamilySpec::new(lam21.clone()).unwrap();
    assert!(WeightEval::new(&family).is_err());
    let rule = gauss_hermite_rule(20).unwrap();
    let h = hermite(2);
    assert!(inner_product(&lam21, &h, &h, &rule).is_err());
}

#[test]
fn guarded_norms_match_the_formula_for_the_smallest_even_partition() {
    let lam = Partition::new(&[2, 2]).unwrap();
    for n in [2usize, 3, 6, 7] {
        let h = exceptional_hermite(&lam, n, None).unwrap();
        let start = 60.max(4 * n);
        let got = converged_inner_product(&lam, &h, &h, start, DEFAULT_DRIFT_TOL, DEFAULT_ORDER_CAP)
            .unwrap();
        assert!(got.converged, "n = {n} did not converge");
        let formula = norming_constant_value(&norming_constant(&lam, n).unwrap());
        assert_relative_eq!(got.value, formula, max_relative = 1e-8);
    }
}

#[test]
fn guarded_gram_is_diagonal_for_a_deformed_family() {
    let lam = Partition::new(&[1, 1]).unwrap();
    let degrees = lam.degree_sets().allowed_up_to(8);
    let got = converged_gram_matrix(&lam, &degrees, 60, DEFAULT_DRIFT_TOL, DEFAULT_ORDER_CAP)
        .unwrap();
    assert!(got.converged);
    let gram = &got.value;
    for (i, &n) in degrees.iter().enumerate() {
        let formula = norming_constant_value(&norming_constant(&lam, n).unwrap());
        assert_relative_eq!(gram[i][i], formula, max_relative = 1e-8);
        for j in 0..degrees.len() {
            if i != j {
                let scale = (gram[i][i] * gram[j][j]).sqrt();
                assert!(gram[i][j].abs() < 1e-9 * scale, "entry ({i},{j})");
            }
        }
    }
}

#[test]
fn r_eta_evaluator_agrees_with_the_exact_layer() {
    // Classical case: η ≡ 1 ⇒ R ≡ 0.
    let classical = FamilySpec::new(Partition::empty()).unwrap();
    let weight = WeightEval::new(&classical).unwrap();
    for x in [-2.0, 0.0, 0.5, 3.0] {
        assert_eq!(weight.r_eta_at(x), 0.0);
    }

    // Deformed case: compare against a direct exact-rational evaluation of
    // η^{−3}(η″ + 2xη′) times the float Gaussian.
    let lam = Partition::new(&[2, 2]).unwrap();
    let family = FamilySpec::new(lam).unwrap();
    let weight = WeightEval::new(&family).unwrap();
    let eta = family.eta().clone();
    let d1 = eta.derivative();
    let d2 = d1.derivative();
    for (num, den) in [(0i64, 1i64), (1, 2), (-3, 2), (13, 10)] {
        let xq = BigRational::new(num.into(), den.into());
        let x = num as f64 / den as f64;
        let eta_x = eta.eval(&xq);
        let exact = (d2.eval(&xq) + xq.clone() * BigRational::from_integer(2.into()) * d1.eval(&xq))
            / (eta_x.clone() * eta_x.clone() * eta_x);
        let expected = exact.to_f64().unwrap() * (-x * x).exp();
        assert_relative_eq!(weight.r_eta_at(x), expected, max_relative = 1e-12, epsilon = 1e-300);
    }
}

#[test]
fn horner_evaluator_agrees_with_exact_evaluation() {
    let h = hermite(8);
    let eval = PolyEval::new(&h);
    assert!(!eval.magnitude_warning());
    for (num, den) in [(0i64, 1i64), (7, 4), (-9, 5), (31, 8)] {
        let xq = BigRational::new(num.into(), den.into());
        let exact = h.eval(&xq).to_f64().unwrap();
        let x = num as f64 / den as f64;
        assert_relative_eq!(eval.eval(x), exact, max_relative = 1e-13, epsilon = 1e-300);
    }
}

#[test]
fn cached_rules_are_reused_and_equal_fresh_rules() {
    let a = cached_rule(64).unwrap();
    let b = cached_rule(64).unwrap();
    let fresh = gauss_hermite_rule(64).unwrap();
    assert_eq!(a.nodes(), b.nodes());
    assert_eq!(a.nodes(), fresh.nodes());
    assert_eq!(a.weights(), fresh.weights());
}
