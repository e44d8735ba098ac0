//! The element `sum_psi ((c_psi / c) n_psi)^i e_psi` and its unit property.

use std::sync::Arc;

use num_traits::Zero;

use super::group::{AbGroup, GroupChar};
use super::ideals::{padic_integrality_and_unit, UnitVerdict};
use super::ring::GroupRingElem;
use super::{GroupRingError, SubgroupCondition};
use crate::arith::nt::{divisors, prime_divisors};
use crate::arith::{CycloElem, Rational};

/// Assembles the element exactly in `Q[A]` after checking, for each divisor
/// `d` of `c`, that the supplied subgroup `H_d` satisfies the kernel and
/// order conditions; returns it with its verdict in `Z_p[A]`.
pub fn unit_sum_element(
    c: u64,
    conductor: impl Fn(&GroupChar) -> u64,
    p: u64,
    i: u32,
    group: Arc<AbGroup>,
    subgroups: &[(u64, Vec<usize>)],
) -> Result<(GroupRingElem, UnitVerdict), GroupRingError> {
    if p == 2 {
        return Err(GroupRingError::EvenPrime);
    }
    let chars = group.characters();
    let conductors: Vec<u64> = chars.iter().map(&conductor).collect();
    if let Some(&bad) = conductors.iter().find(|&&f| f == 0 || !c.is_multiple_of(f)) {
        return Err(GroupRingError::HypothesisViolated {
            divisor: bad,
            condition: SubgroupCondition::ConductorDivides,
        });
    }
    for d in divisors(c) {
        let Some((_, h)) = subgroups.iter().find(|(dd, _)| *dd == d) else {
            return Err(GroupRingError::HypothesisViolated { divisor: d, condition: SubgroupCondition::Missing });
        };
        for (chi, &f) in chars.iter().zip(&conductors) {
            let in_kernel = h.iter().all(|&g| chi.kernel_contains(&group, g));
            if (d % f == 0) != in_kernel {
                return Err(GroupRingError::HypothesisViolated { divisor: d, condition: SubgroupCondition::Kernel });
            }
        }
        let sign: i64 = if i.is_multiple_of(2) { 1 } else { -1 };
        let bound: i64 = prime_divisors(c / d).iter().map(|&l| l as i64 + sign).product();
        if bound % h.len() as i64 != 0 {
            return Err(GroupRingError::HypothesisViolated { divisor: d, condition: SubgroupCondition::Order });
        }
    }

    let level = group.exponent();
    let order = Rational::from_integer((group.order() as i64).into());
    let mut coeffs = Vec::with_capacity(group.order());
    for g in 0..group.order() {
        let mut total = CycloElem::zero(level);
        for (chi, &f) in chars.iter().zip(&conductors) {
            let n = if c.is_multiple_of(p) && f % p != 0 { p } else { 1 };
            let w = Rational::new((f * n).into(), c.into());
            let weight = num_traits::pow(w, i as usize);
            // e_psi has coefficient psi(g)^{-1} / |A| at g
            let value = CycloElem::zeta_pow(level, -(chi.value_exponent(&group, g) as i64)).scale(&weight);
            total = total.checked_add(&value).expect("same level");
        }
        let q = total.as_rational().ok_or(GroupRingError::NotRational)?;
        coeffs.push(if q.is_zero() { q } else { q / &order });
    }
    let x = GroupRingElem::from_coeffs(group, coeffs);
    let verdict = padic_integrality_and_unit(&x, p)?;
    Ok((x, verdict))
}
