//! Family-level integration checks: classical derivative identity, degree
//! and leading-coefficient laws over a partition sweep, shift invariance of
//! the Wronskian representations, the gap-set Wronskian representation of
//! η_λ, and positivity of the norming-constant denominator.

use num::{BigInt, BigRational, One};
use xhermite::exactpoly::{wronskian, ExactPoly, RatFun};
use xhermite::family::{c_constant, eta, exceptional_hermite, hermite, FamilySpec};
use xhermite::partitions::partitions_of;

fn two_pow(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << k)
}

fn all_partitions_up_to(n_max: usize) -> Vec<xhermite::partitions::Partition> {
    (0..=n_max).flat_map(partitions_of).collect()
}

#[test]
fn hermite_derivative_identity_up_to_30() {
    for n in 1..=30usize {
        let expected = hermite(n - 1).scale_int(2 * n as i64);
        assert_eq!(hermite(n).derivative(), expected, "n = {n}");
    }
}

#[test]
fn degree_and_leading_laws_over_the_sweep() {
    for lam in all_partitions_up_to(8) {
        let big_n = lam.n();
        let e = eta(&lam, None).unwrap();
        assert_eq!(e.degree(), Some(big_n), "η for λ = {lam}");
        assert_eq!(e.leading_coeff().unwrap(), &two_pow(big_n), "η for λ = {lam}");

        let sets = lam.degree_sets();
        for n in sets.allowed_up_to(big_n + lam.ell() + 10) {
            let h = exceptional_hermite(&lam, n, None).unwrap();
            assert_eq!(h.degree(), Some(n), "λ = {lam}, n = {n}");
            assert_eq!(
                h.leading_coeff().unwrap(),
                &two_pow(n),
                "λ = {lam}, n = {n}"
            );
        }
    }
}

#[test]
fn shift_invariance_of_the_wronskian_representations() {
    for lam in all_partitions_up_to(6) {
        let big_n = lam.n();
        let eta_small = eta(&lam, None).unwrap();
        for l in lam.ell()..=big_n.max(lam.ell()) {
            // Internal consistency asserts fire inside eta /
            // exceptional_hermite whenever l exceeds ℓ; equality is
            // re-checked here at the integration boundary.
            assert_eq!(eta(&lam, Some(l)).unwrap(), eta_small, "λ = {lam}, l = {l}");
        }
        let sets = lam.degree_sets();
        for n in sets.allowed_up_to(big_n + 4) {
            let h_small = exceptional_hermite(&lam, n, None).unwrap();
            let quotient_small =
                RatFun::new(h_small.clone(), eta_small.clone()).unwrap();
            for l in lam.ell()..=big_n.max(lam.ell()) {
                let h_l = exceptional_hermite(&lam, n, Some(l)).unwrap();
                assert_eq!(h_l, h_small, "λ = {lam}, n = {n}, l = {l}");
                let quotient_l = RatFun::new(h_l, eta(&lam, Some(l)).unwrap()).unwrap();
                assert_eq!(quotient_l, quotient_small, "λ = {lam}, n = {n}, l = {l}");
            }
        }
    }
}

#[test]
fn gapset_wronskian_is_a_known_multiple_of_eta() {
    // Wr over the Hermite polynomials of the exceptional degrees equals
    // C^λ_N · η_λ with the ascending argument order used throughout.
    for lam in all_partitions_up_to(6) {
        if lam.n() == 0 {
            continue;
        }
        let stack: Vec<ExactPoly> = lam
            .degree_sets()
            .exceptional()
            .iter()
            .map(|&k| hermite(k))
            .collect();
        let wr = wronskian(&stack).unwrap();
        let scalar = BigRational::from_integer(c_constant(&lam, lam.n()).unwrap());
        assert_eq!(wr, eta(&lam, None).unwrap().scale(&scalar), "λ = {lam}");
    }
}

#[test]
fn cumulative_gapset_wronskians_descend_the_truncation_chain() {
    // Appending the first j sporadic degrees to the gap set K_λ and taking
    // the Hermite Wronskian lands on a constant multiple of η of the j-th
    // truncation λ^(j); with all λ₁ sporadic degrees added the degree list
    // is the full initial segment and the Wronskian is a constant.
    for lam in all_partitions_up_to(6) {
        if lam.n() == 0 {
            continue;
        }
        let sets = lam.degree_sets();
        for j in 0..=lam.first_part() {
            let mut degrees = sets.exceptional().to_vec();
            degrees.extend_from_slice(&sets.sporadic()[..j]);
            degrees.sort_unstable();
            let stack: Vec<ExactPoly> = degrees.iter().map(|&k| hermite(k)).collect();
            let wr = wronskian(&stack).unwrap();
            let level_eta = eta(&lam.truncate(j), None).unwrap();
            let ratio = wr.leading_coeff().unwrap() / level_eta.leading_coeff().unwrap();
            assert!(ratio > BigRational::from_integer(0.into()), "λ = {lam}, j = {j}");
            assert_eq!(wr, level_eta.scale(&ratio), "λ = {lam}, j = {j}");
        }
    }
}

#[test]
fn norming_denominator_is_positive_on_even_partitions() {
    use num::Signed;
    for lam in all_partitions_up_to(8) {
        if !lam.is_even() {
            continue;
        }
        let family = FamilySpec::new(lam.clone()).unwrap();
        for n in family.allowed_up_to(lam.first_part() + lam.n() + 8) {
            let pi = xhermite::family::pi_factor(&lam, lam.n(), n as i64).unwrap();
            assert!(pi.is_positive(), "λ = {lam}, n = {n}");
            let q = family.norming_constant(n).unwrap().factor;
            assert!(q.is_positive(), "λ = {lam}, n = {n}");
        }
    }
}
