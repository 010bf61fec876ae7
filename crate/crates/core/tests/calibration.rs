//! Frozen calibration values: the constants the exact engine measures from
//! first principles, pinned so regressions are caught. Each value was
//! computed by the engine itself and cross-checked by independent routes
//! (hand-expanded low-trace coefficients, the Klein proportionality, and the
//! elliptic diagonal-restriction oracles).

use hmf5::fourier_lab::*;
use hmf5::numfield::{rat, rat_int, DualIndex, QuadRat};

#[test]
fn measured_constants_are_stable() {
    let (gens, cal) = calibrate(8).expect("calibration at trace 8");
    assert_eq!(cal.c, rat_int(120));
    // χ₁₅ = (11/7)·(√5/22)·[χ₆,φ₂,χ₅] = (√5/14)·[χ₆,φ₂,χ₅]
    assert_eq!(cal.chi15_scale, rat(11, 7));
    // χ₁₅² = (1/16)·P
    assert_eq!(cal.klein_lambda, rat(1, 16));
    // d_*(χ₆) = (14/√5)χ₁₅, e_*(χ₅) = (−16/√5)χ₁₅, f_*(φ₂) = (22/√5)χ₁₅
    assert_eq!(cal.l1, QuadRat::from_parts(0, 1, 14, 5));
    assert_eq!(cal.l2, QuadRat::from_parts(0, 1, -16, 5));
    assert_eq!(cal.l3, QuadRat::from_parts(0, 1, 22, 5));
    // the first χ₁₅ coefficients
    assert_eq!(gens.chi15.coefficient(&DualIndex::new(-1, 2)), QuadRat::one());
    assert_eq!(gens.chi15.coefficient(&DualIndex::new(-2, 3)), QuadRat::from_int(-275));
    assert_eq!(gens.chi15.coefficient(&DualIndex::new(-1, 3)), QuadRat::from_int(-275));
    assert_eq!(gens.chi15.coefficient(&DualIndex::new(0, 3)), QuadRat::zero());
}

#[test]
fn calibration_is_bound_independent() {
    let (_, lo) = calibrate(6).unwrap();
    let (_, hi) = calibrate(9).unwrap();
    assert_eq!(lo.l1, hi.l1);
    assert_eq!(lo.l2, hi.l2);
    assert_eq!(lo.l3, hi.l3);
    assert_eq!(lo.klein_lambda, hi.klein_lambda);
    assert_eq!(lo.chi15_scale, hi.chi15_scale);
}

#[test]
fn eisenstein_constant_is_unique() {
    // the unique positive integer ≤ 300 passing integrality, unit content and
    // the Klein proportionality
    let c = calibrate_normalization(5, 300).expect("unique normalisation");
    assert_eq!(c, rat_int(120));
}

/// The star bracket obeys the first-principles coefficient formula
/// c = ½·t((f(ν+μ)−(g+h)α)(gμ'−hν')); the uncrossed variant printed in the
/// source does not reproduce the bracket.
#[test]
fn crochet_formula_resolution() {
    let gens = build_generators(6, &default_c()).unwrap();
    let nested = triple_star(&gens.chi6, &gens.phi2, &gens.chi5);
    let derived = triple_star_via_formula(&gens.chi6, &gens.phi2, &gens.chi5, |a, n, m| {
        crochet_coefficient_derived(6, 2, 5, a, n, m)
    });
    let displayed = triple_star_via_formula(&gens.chi6, &gens.phi2, &gens.chi5, |a, n, m| {
        crochet_coefficient_displayed(6, 2, 5, a, n, m)
    });
    assert!(nested.agrees_with(&derived));
    assert!(!nested.agrees_with(&displayed));
    // c_{0,0,μ} = f·g·n(μ) from first principles (f = 6, g = 2 here)
    let mu = DualIndex::new(-1, 2);
    let zero = QuadRat::zero();
    assert_eq!(
        crochet_coefficient_derived(6, 2, 5, &zero, &zero, &mu.to_quad()),
        rat_int(12) * mu.norm_rat()
    );
}

/// The extremal-coefficient slice: for non-cuspidal F the τ₀ = μ₀ coefficient
/// of [F, G, H]* is f₀·h_{μ₀}·c_{0,0,μ₀} with c_{0,0,μ₀} = f·g·n(μ₀).
#[test]
fn extremal_coefficient_of_star_bracket() {
    let gens = build_generators(6, &default_c()).unwrap();
    let f = gens.phi2.mul(&gens.phi2); // weight (4,4), constant term 1
    let star = triple_star(&f, &gens.phi2, &gens.chi5);
    for mu in [DualIndex::new(0, 1), DualIndex::new(-1, 1)] {
        // f·g·n(μ) times f₀ = 1 times h_μ
        let c = QuadRat::from_rat(rat_int(4 * 2) * mu.norm_rat());
        let expect = &c * &gens.chi5.coefficient(&mu);
        assert_eq!(star.coefficient(&mu), expect);
    }
}
