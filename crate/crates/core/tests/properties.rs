//! Cross-module properties on randomly drawn inputs.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rbsd::arith::nt::{gcd, is_prime, is_squarefree};
use rbsd::arith::{CycloElem, Rational};
use rbsd::characters::{enumerate_chars, gauss_sum, tau_star};
use rbsd::elliptic::CurveQ;
use rbsd::grouprings::{AbGroup, GroupHom, GroupRingElem};
use rbsd::modsym::ModularSymbolFunctional;
use rbsd::theta::{curve_functional, distribution_check};

const CURVES: [[i64; 5]; 6] =
    [[0, -1, 1, -10, -20], [1, 0, 1, 4, -6], [1, 1, 1, -10, -10], [0, 0, 1, -1, 0], [0, 1, 1, 0, 0], [1, -1, 1, 0, 0]];

fn e11() -> &'static (CurveQ, ModularSymbolFunctional) {
    static CELL: OnceLock<(CurveQ, ModularSymbolFunctional)> = OnceLock::new();
    CELL.get_or_init(|| {
        let curve = CurveQ::new(CURVES[0]).unwrap();
        let f = curve_functional(&curve).unwrap();
        (curve, f)
    })
}

fn at_level(x: &CycloElem, level: u64) -> CycloElem {
    x.embed(level).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hasse_bound_and_torsion_divisibility(index in 0usize..CURVES.len(), ell in 3u64..400) {
        prop_assume!(is_prime(ell));
        let curve = CurveQ::new(CURVES[index]).unwrap().minimal_model();
        prop_assume!(!curve.conductor().is_multiple_of(ell));
        let ap = curve.ap(ell).unwrap();
        prop_assert!((ap * ap) as u64 <= 4 * ell);
        let torsion = curve.torsion_order();
        if !(2 * torsion).is_multiple_of(ell) {
            prop_assert_eq!((ell as i64 + 1 - ap) % torsion as i64, 0);
        }
    }

    #[test]
    fn gauss_sums_are_galois_equivariant(m in 3u64..=24, pick in 0usize..64, t in 1i64..200) {
        let chars = enumerate_chars(m, false).unwrap();
        let chi = &chars[pick % chars.len()];
        let tau = gauss_sum(chi, m).unwrap();
        let level = tau.level();
        prop_assume!(gcd(t.unsigned_abs(), level) == 1);
        let twisted = chi.pow(t);
        let factor = at_level(&twisted.value(t).inverse().unwrap(), level);
        let rhs = factor.checked_mul(&at_level(&gauss_sum(&twisted, m).unwrap(), level)).unwrap();
        prop_assert_eq!(tau.galois(t).unwrap(), rhs);
    }

    #[test]
    fn imprimitive_gauss_sums(c in 1u64..=60, pick in 0usize..64) {
        prop_assume!(is_squarefree(c));
        let chars = enumerate_chars(c, true).unwrap();
        let chi = &chars[pick % chars.len()];
        let (lhs, rhs) = (gauss_sum(chi, c).unwrap(), tau_star(chi, c).unwrap());
        let level = lhs.level().lcm(&rhs.level());
        prop_assert_eq!(at_level(&lhs, level), at_level(&rhs, level));
    }

    #[test]
    fn projection_is_a_ring_homomorphism(
        x in proptest::collection::vec(-9i64..9, 12),
        y in proptest::collection::vec(-9i64..9, 12),
    ) {
        let source = AbGroup::new(&[2, 6]).unwrap();
        let target = AbGroup::cyclic(3);
        let q = GroupHom::from_generator_images(source.clone(), target, &[0, 1]).unwrap();
        let source = Arc::new(source);
        let lift = |v: &[i64]| GroupRingElem::from_coeffs(source.clone(), v.iter().map(|&a| Rational::from_integer(a.into())).collect());
        let (x, y) = (lift(&x), lift(&y));
        let product = x.mul(&y).project(&q).unwrap();
        prop_assert_eq!(product, x.project(&q).unwrap().mul(&y.project(&q).unwrap()));
    }

    #[test]
    fn plus_symbols_have_bounded_denominators(c in 1i64..=100, a in 0i64..100) {
        let (_, f) = e11();
        let a = a % c;
        prop_assume!(gcd(a.unsigned_abs(), c as u64) == 1);
        let bound = f.denominator_bound();
        let value = f.eval_plus_symbol(a, c).unwrap();
        prop_assert_eq!(bound.mod_floor(value.denom()), BigInt::from(0));
    }

    #[test]
    fn distribution_relation_on_random_levels(c in 1u64..=20, p in 2u64..=13) {
        let (curve, f) = e11();
        prop_assume!(is_prime(p) && p != 11 && is_squarefree(p * c) && gcd(c, 11) == 1);
        let outcome = distribution_check(f, curve, c, p).unwrap();
        prop_assert!(outcome.holds, "c = {}, p = {}", c, p);
    }
}
