//! Regularized theta elements, restriction and character components.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FieldSpec, ThetaError};
use crate::arith::nt::{gcd, is_prime, is_squarefree, modulo, units_mod};
use crate::arith::{CycloElem, Rational};
use crate::characters::DirichletChar;
use crate::elliptic::CurveQ;
use crate::grouprings::GroupRingElem;
use crate::modsym::ModularSymbolFunctional;

/// A theta element on `Gal(F/Q)` for a field `F` of conductor `level`.
#[derive(Clone, Debug)]
pub struct ThetaElement {
    level: u64,
    modular_level: u64,
    field: FieldSpec,
    carrier: GroupRingElem,
    manin_constant_assumed: bool,
    symbol_denominator: BigInt,
}

impl ThetaElement {
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Level of the modular symbols the element was built from.
    pub fn modular_level(&self) -> u64 {
        self.modular_level
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn carrier(&self) -> &GroupRingElem {
        &self.carrier
    }

    /// Whether the period normalization assumed Manin constant one.
    pub fn manin_constant_assumed(&self) -> bool {
        self.manin_constant_assumed
    }

    /// The bound `D` with `D [r]^+` integral for all `r`.
    pub fn symbol_denominator(&self) -> &BigInt {
        &self.symbol_denominator
    }

    /// Coefficients labelled by their least positive residue.
    pub fn labelled_coeffs(&self) -> Vec<(u64, Rational)> {
        self.field.reps().iter().copied().zip(self.carrier.coeffs().iter().cloned()).collect()
    }
}

fn check_level(f: &ModularSymbolFunctional, c: u64) -> Result<(), ThetaError> {
    if c == 0 || !is_squarefree(c) {
        return Err(ThetaError::NotSquarefree(c));
    }
    if gcd(c, f.level()) != 1 {
        return Err(ThetaError::NotCoprimeToLevel { c, level: f.level() });
    }
    Ok(())
}

/// `[a/c]^*` under the functional's normalization.
pub fn regularized_symbol(f: &ModularSymbolFunctional, a: i64, c: u64) -> Result<Rational, ThetaError> {
    check_level(f, c)?;
    if gcd(a.unsigned_abs(), c) != 1 {
        return Err(ThetaError::NotCoprime { a, c });
    }
    Ok(f.eval_regularized(modulo(a, c) as i64, c as i64)?)
}

/// `(1/2) sum_a [a/c]^* sigma_a`, pushed to `Q[G_c^+]`.
pub fn theta_element(f: &ModularSymbolFunctional, c: u64) -> Result<ThetaElement, ThetaError> {
    check_level(f, c)?;
    let field = FieldSpec::real_cyclotomic(c)?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut coeffs = vec![Rational::zero(); field.degree()];
    for a in units_mod(c) {
        let g = field.element_of(a as i64).expect("unit");
        coeffs[g] += &half * f.eval_regularized(a as i64, c as i64)?;
    }
    let carrier = GroupRingElem::from_coeffs(field.group().clone(), coeffs);
    Ok(ThetaElement {
        level: c,
        modular_level: f.level(),
        field,
        carrier,
        manin_constant_assumed: f.is_normalized(),
        symbol_denominator: f.denominator_bound(),
    })
}

/// Pushforward of a level-`c` element to a field of conductor `c`.
pub fn restrict_to_field(theta: &ThetaElement, field: &FieldSpec) -> Result<ThetaElement, ThetaError> {
    if theta.level != field.conductor() {
        return Err(ThetaError::ConductorMismatch { theta: theta.level, field: field.conductor() });
    }
    let map = theta.field.restriction_to(field)?;
    let carrier = theta.carrier.project(&map)?;
    let carrier = GroupRingElem::from_coeffs(field.group().clone(), carrier.coeffs().to_vec());
    Ok(ThetaElement { field: field.clone(), carrier, ..theta.clone() })
}

/// The theta element of a field: restriction of the element at its conductor.
pub fn theta_for_field(f: &ModularSymbolFunctional, field: &FieldSpec) -> Result<ThetaElement, ThetaError> {
    restrict_to_field(&theta_element(f, field.conductor())?, field)
}

/// `sum_g x_g chi(g)` in `Q(zeta_{ord chi})`.
pub fn character_component(theta: &ThetaElement, chi: &DirichletChar) -> Result<CycloElem, ThetaError> {
    if !theta.field.character_factors(chi) {
        return Err(ThetaError::CharacterDoesNotFactor { modulus: chi.modulus(), level: theta.level });
    }
    let order = chi.order();
    let mut total = CycloElem::zero(order);
    for (&rep, x) in theta.field.reps().iter().zip(theta.carrier.coeffs()) {
        if x.is_zero() {
            continue;
        }
        let term = chi.value_at_level(rep as i64, order).scale(x);
        total = total.checked_add(&term).expect("same level");
    }
    Ok(total)
}

/// Both sides of the norm relation from level `pc` down to level `c`.
#[derive(Clone, Debug)]
pub struct DistributionOutcome {
    pub prime: u64,
    pub ap: i64,
    /// Pushforward of the level-`pc` element.
    pub lhs: GroupRingElem,
    /// `-(p sigma_p - a_p + sigma_p^{-1})` times the level-`c` element.
    pub rhs: GroupRingElem,
    pub holds: bool,
    /// `lhs - rhs`; zero exactly when the relation holds.
    pub difference: GroupRingElem,
}

/// Compares the pushforward of the level-`pc` element with the Euler-factor
/// multiple of the level-`c` element, exactly.
pub fn distribution_check(
    f: &ModularSymbolFunctional,
    curve: &CurveQ,
    c: u64,
    p: u64,
) -> Result<DistributionOutcome, ThetaError> {
    if !is_prime(p) {
        return Err(ThetaError::NotPrime(p));
    }
    if c.is_multiple_of(p) {
        return Err(ThetaError::NotSquarefree(c * p));
    }
    if f.level().is_multiple_of(p) {
        return Err(ThetaError::NotCoprimeToLevel { c: c * p, level: f.level() });
    }
    let ap = curve.minimal_model().ap(p)?;
    let upper = theta_element(f, c * p)?;
    let lower = theta_element(f, c)?;
    let map = upper.field.restriction_to(&lower.field)?;
    let lhs = upper.carrier.project(&map)?;
    let lhs = GroupRingElem::from_coeffs(lower.field.group().clone(), lhs.coeffs().to_vec());

    let group = lower.field.group().clone();
    let sigma = lower.field.element_of(p as i64).expect("p is prime to c");
    let factor = GroupRingElem::basis(group.clone(), sigma)
        .scale(&Rational::from_integer(p.into()))
        .sub(&GroupRingElem::one(group.clone()).scale(&Rational::from_integer(ap.into())))
        .add(&GroupRingElem::basis(group.clone(), group.inv(sigma)));
    let rhs = factor.mul(&lower.carrier).scale(&Rational::from_integer((-1).into()));
    let difference = lhs.sub(&rhs);
    let holds = difference.coeffs().iter().all(Zero::is_zero);
    Ok(DistributionOutcome { prime: p, ap, lhs, rhs, holds, difference })
}
