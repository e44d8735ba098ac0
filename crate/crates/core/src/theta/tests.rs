use std::sync::OnceLock;

use num_traits::Zero;

use super::*;
use crate::arith::nt::{inv_mod, mobius, units_mod};
use crate::arith::{rat, Rational};
use crate::characters::enumerate_chars;
use crate::elliptic::CurveQ;
use crate::grouprings::GroupRingElem;
use crate::lvalues::{an_coeffs, cyclo_to_complex, LSeriesData};
use crate::modsym::{interpolated_component, ModularSymbolFunctional};

fn e11() -> CurveQ {
    CurveQ::with_label("11a1", [0, -1, 1, -10, -20]).unwrap()
}

fn e37() -> CurveQ {
    CurveQ::with_label("37a1", [0, 0, 1, -1, 0]).unwrap()
}

fn f11() -> &'static ModularSymbolFunctional {
    static CELL: OnceLock<ModularSymbolFunctional> = OnceLock::new();
    CELL.get_or_init(|| curve_functional(&e11()).unwrap())
}

fn f37() -> &'static ModularSymbolFunctional {
    static CELL: OnceLock<ModularSymbolFunctional> = OnceLock::new();
    CELL.get_or_init(|| curve_functional(&e37()).unwrap())
}

#[test]
fn level_one_elements() {
    let t11 = theta_element(f11(), 1).unwrap();
    assert_eq!(t11.carrier().coeffs(), &[rat(1, 10)]);
    assert!(t11.manin_constant_assumed());
    let t37 = theta_element(f37(), 1).unwrap();
    assert_eq!(t37.carrier().coeffs(), &[rat(0, 1)]);
}

#[test]
fn regularized_symbols() {
    let f = f11();
    assert_eq!(regularized_symbol(f, 0, 1).unwrap(), f.eval_plus_symbol(0, 1).unwrap());
    for a in 1..7 {
        let expected = f.eval_plus_symbol(a, 7).unwrap() - f.eval_plus_symbol(0, 1).unwrap();
        assert_eq!(regularized_symbol(f, a, 7).unwrap(), expected);
    }
    // four-term Moebius sum at c = 15
    let mut brute = Rational::zero();
    for t in [1i64, 3, 5, 15] {
        let cof = 15 / t;
        let inv = inv_mod(cof, t as u64).unwrap() as i64;
        let term = f.eval_plus_symbol(inv % t, t).unwrap();
        brute += Rational::from_integer(mobius(cof as u64).into()) * term;
    }
    assert_eq!(regularized_symbol(f, 1, 15).unwrap(), brute);
    assert_eq!(regularized_symbol(f, 1, 12), Err(ThetaError::NotSquarefree(12)));
    assert_eq!(regularized_symbol(f, 1, 22), Err(ThetaError::NotCoprimeToLevel { c: 22, level: 11 }));
    assert_eq!(regularized_symbol(f, 3, 15), Err(ThetaError::NotCoprime { a: 3, c: 15 }));
}

#[test]
fn coefficients_fold_plus_and_minus() {
    let f = f37();
    for c in [5u64, 7, 13] {
        let theta = theta_element(f, c).unwrap();
        let total: Rational = units_mod(c)
            .into_iter()
            .map(|a| f.eval_regularized(a as i64, c as i64).unwrap())
            .fold(Rational::zero(), |acc, v| acc + v);
        assert_eq!(theta.carrier().augmentation(), total / rat(2, 1));
        for (rep, x) in theta.labelled_coeffs() {
            let direct = (f.eval_regularized(rep as i64, c as i64).unwrap()
                + f.eval_regularized((c - rep) as i64, c as i64).unwrap())
                / rat(2, 1);
            assert_eq!(x, direct, "c = {c}, a = {rep}");
        }
    }
}

#[test]
fn restriction_to_subfields() {
    let f = f37();
    let theta = theta_element(f, 13).unwrap();
    let q = FieldSpec::new(13, &(1..13).collect::<Vec<_>>()).unwrap_err();
    assert!(matches!(q, ThetaError::NotConductor { given: 13, actual: 1 }));
    let full = FieldSpec::real_cyclotomic(13).unwrap();
    let same = restrict_to_field(&theta, &full).unwrap();
    assert_eq!(same.carrier().coeffs(), theta.carrier().coeffs());
    let cubic = FieldSpec::cyclic_prime_conductor(13, 3).unwrap();
    let image = restrict_to_field(&theta, &cubic).unwrap();
    assert_eq!(image.carrier().coeffs().len(), 3);
    for g in 0..3 {
        let fibre: Rational = theta
            .labelled_coeffs()
            .into_iter()
            .filter(|(rep, _)| cubic.element_of(*rep as i64) == Some(g))
            .fold(Rational::zero(), |acc, (_, x)| acc + x);
        assert_eq!(image.carrier().coeff(g), &fibre);
    }
    assert_eq!(image.carrier().augmentation(), theta.carrier().augmentation());
    assert!(matches!(
        restrict_to_field(&theta, &FieldSpec::cyclic_prime_conductor(7, 3).unwrap()),
        Err(ThetaError::ConductorMismatch { theta: 13, field: 7 })
    ));
}

#[test]
fn character_components() {
    let f = f11();
    let theta = theta_element(f, 3).unwrap();
    let chars = enumerate_chars(3, false).unwrap();
    let trivial = chars.iter().find(|c| c.is_trivial()).unwrap();
    let component = character_component(&theta, trivial).unwrap();
    assert_eq!(component.as_rational(), Some(theta.carrier().augmentation()));
    let odd = chars.iter().find(|c| !c.is_even()).unwrap();
    assert!(matches!(character_component(&theta, odd), Err(ThetaError::CharacterDoesNotFactor { .. })));

    // c = 5: the quadratic character against the brute weighted sum
    let theta5 = theta_element(f, 5).unwrap();
    let quad = enumerate_chars(5, true).unwrap().into_iter().find(|c| c.order() == 2).unwrap();
    let brute: Rational = (1..5i64)
        .map(|a| Rational::from_integer(crate::arith::nt::legendre(a, 5).into()) * f.eval_regularized(a, 5).unwrap())
        .fold(Rational::zero(), |acc, v| acc + v)
        / rat(2, 1);
    assert_eq!(character_component(&theta5, &quad).unwrap().as_rational(), Some(brute));

    // conjugate characters give conjugate components
    let theta13 = theta_element(f, 13).unwrap();
    for chi in enumerate_chars(13, true).unwrap() {
        let a = character_component(&theta13, &chi).unwrap();
        let b = character_component(&theta13, &chi.conj()).unwrap();
        assert_eq!(a.conj(), b);
    }
}

#[test]
fn restriction_commutes_with_components() {
    let f = f37();
    for (c, degree) in [(13u64, 3u64), (7, 3), (19, 3), (13, 2)] {
        let field = FieldSpec::cyclic_prime_conductor(c, degree).unwrap();
        let theta = theta_element(f, c).unwrap();
        let restricted = restrict_to_field(&theta, &field).unwrap();
        for (psi, chi) in field.characters() {
            let via_field = character_component(&restricted, &chi).unwrap();
            let via_level = character_component(&theta, &chi).unwrap();
            assert_eq!(via_field, via_level);
            let via_group = restricted.carrier().character_value(&psi);
            let level = via_group.level().max(via_field.level());
            assert_eq!(via_group.embed(level).unwrap(), via_field.embed(level).unwrap());
        }
    }
}

#[test]
fn distribution_relation_examples() {
    let outcome = distribution_check(f11(), &e11(), 1, 3).unwrap();
    assert!(outcome.holds, "{outcome:?}");
    assert_eq!(outcome.ap, -1);
    assert_eq!(outcome.lhs.coeffs(), &[rat(-1, 2)]);
    assert_eq!(outcome.rhs.coeffs(), &[rat(-1, 2)]);

    let outcome = distribution_check(f37(), &e37(), 1, 5).unwrap();
    assert!(outcome.holds);
    assert!(outcome.lhs.coeffs().iter().all(Zero::is_zero));

    let outcome = distribution_check(f11(), &e11(), 7, 3).unwrap();
    assert!(outcome.holds, "{outcome:?}");
    assert!(matches!(distribution_check(f11(), &e11(), 3, 3), Err(ThetaError::NotSquarefree(9))));
}

#[test]
fn distribution_relation_detects_a_wrong_factor() {
    // the relation at c = 7 must fail if a_p is replaced
    let outcome = distribution_check(f11(), &e11(), 7, 3).unwrap();
    let group = outcome.lhs.group().clone();
    let wrong = outcome.rhs.add(&GroupRingElem::one(group));
    assert_ne!(outcome.lhs, wrong);
}

fn interpolation_residual(
    f: &ModularSymbolFunctional,
    data: &LSeriesData,
    omega: &crate::lvalues::float::Real,
    c: u64,
) -> f64 {
    let theta = theta_element(f, c).unwrap();
    let mut worst: f64 = 0.0;
    for chi in enumerate_chars(c, true).unwrap() {
        let exact = cyclo_to_complex(&character_component(&theta, &chi).unwrap());
        let (target, _) = interpolated_component(data, &chi, omega, 1e-15).unwrap();
        worst = worst.max((&exact - &target).abs().to_f64());
    }
    worst
}

#[test]
fn interpolation_at_small_levels() {
    let curve = e11();
    let omega = curve.real_period(30).unwrap().omega_plus;
    let data = an_coeffs(&curve, LSeriesData::terms_needed(11, 13, 1e-18)).unwrap();
    for c in [1u64, 2, 3, 5, 7, 13] {
        let residual = interpolation_residual(f11(), &data, &omega, c);
        assert!(residual < 1e-8, "c = {c}: {residual}");
    }
}

#[test]
fn interpolation_rejects_the_opposite_sign() {
    let curve = e11();
    let omega = curve.real_period(30).unwrap().omega_plus;
    let data = an_coeffs(&curve, LSeriesData::terms_needed(11, 7, 1e-18)).unwrap();
    let flipped = f11().with_scaling(-f11().scaling().clone());
    assert!(interpolation_residual(&flipped, &data, &omega, 7) > 1e-3);
}

#[test]
fn hypotheses_for_a_rank_one_example() {
    let field = FieldSpec::cyclic_prime_conductor(13, 3).unwrap();
    let report = hypotheses_report(&e37(), &field, 3).unwrap();
    assert!(report.all_decidable_verified(), "{report:?}");
    assert_eq!(report.prime_to_p_subfield, (1, 1));
    assert_eq!(report.get("c").unwrap().verdict, Verdict::NotApplicable);
    assert_eq!(report.get("e").unwrap().verdict, Verdict::Assumed);
    assert_eq!(report.get("H6").unwrap().verdict, Verdict::Assumed);
}

#[test]
fn hypotheses_violations() {
    let field = FieldSpec::cyclic_prime_conductor(37, 3).unwrap();
    let report = hypotheses_report(&e37(), &field, 3).unwrap();
    assert_eq!(report.get("H5").unwrap().verdict, Verdict::Violated);
    let cubic7 = FieldSpec::cyclic_prime_conductor(7, 3).unwrap();
    let report = hypotheses_report(&e11(), &cubic7, 5).unwrap();
    assert_eq!(report.get("a").unwrap().verdict, Verdict::Violated);
    assert!(matches!(hypotheses_report(&e11(), &cubic7, 2), Err(ThetaError::NotOddPrime(2))));
}

#[test]
fn rank_zero_verdicts() {
    let cubic7 = FieldSpec::cyclic_prime_conductor(7, 3).unwrap();
    let report = hypotheses_report(&e11(), &cubic7, 3).unwrap();
    assert!(report.all_decidable_verified(), "{report:?}");
    let verdict = rank0_verdict(f11(), &e11(), &cubic7, 3, 2, true).unwrap();
    assert!(verdict.membership.integral);
    assert_eq!(verdict.conclusion, Rank0Conclusion::Consistent, "{:?}", verdict.theta.labelled_coeffs());
    let unasserted = rank0_verdict(f11(), &e11(), &cubic7, 3, 2, false).unwrap();
    assert_eq!(unasserted.conclusion, Rank0Conclusion::MembershipOnly);

    // over Q the verdict is the valuation of L(A,1)/(2 Omega^+) = 1/10
    let q = FieldSpec::rationals();
    let verdict = rank0_verdict(f11(), &e11(), &q, 5, 2, true).unwrap();
    assert!(!verdict.membership.integral);
    assert_eq!(verdict.conclusion, Rank0Conclusion::Inconsistent);
    assert_eq!(rational_valuation(&verdict.theta.carrier().coeffs()[0], 5), Some(-1));

    let field = FieldSpec::cyclic_prime_conductor(13, 3).unwrap();
    assert!(matches!(rank0_verdict(f37(), &e37(), &field, 3, 2, true), Err(ThetaError::RankNotZero { .. })));
}
