//! Fixing the scaling of the eigen-functional from a central L-value.

use num_traits::Zero;

use super::functional::ModularSymbolFunctional;
use super::ModSymError;
use crate::arith::nt::{gcd, is_squarefree};
use crate::arith::{CycloElem, Rational};
use crate::characters::{enumerate_chars, gauss_sum, DirichletChar};
use crate::elliptic::CurveQ;
use crate::lvalues::float::{Complex, Real};
use crate::lvalues::{
    an_coeffs, cyclo_to_complex, primes_dividing, rational_reconstruct, twisted_lvalue, LError, LSeriesData,
};

/// Largest auxiliary modulus tried before giving up.
pub const MAX_ANCHOR_MODULUS: u64 = 60;
/// Largest denominator accepted for the reconstructed scaling.
pub const MAX_SCALING_DENOMINATOR: u64 = 1_000_000;

/// Character whose twisted value fixed the scaling.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationAnchor {
    /// Auxiliary modulus `c_0` (`1` for the untwisted value).
    pub modulus: u64,
    pub conductor: u64,
    pub order: u64,
    /// Numerical `L_{c_0}(E, chi-bar, 1)`.
    pub lvalue: (f64, f64),
}

impl From<LError> for ModSymError {
    fn from(e: LError) -> Self {
        ModSymError::ReconstructionFailed(e.to_string())
    }
}

/// Exact `(1/2) sum_a chi(a) [a/c]^*` for the raw functional.
pub fn raw_character_component(f: &ModularSymbolFunctional, chi: &DirichletChar) -> Result<CycloElem, ModSymError> {
    let c = chi.modulus();
    let level = chi.order();
    let mut total = CycloElem::zero(level);
    for a in (0..c.max(1)).filter(|&a| gcd(a, c) == 1) {
        let value = f.raw_regularized(a as i64, c as i64)?;
        if value.is_zero() {
            continue;
        }
        let term = chi.value_at_level(a as i64, level).scale(&value);
        total = total.checked_add(&term).expect("same level");
    }
    Ok(total.scale(&Rational::new(1.into(), 2.into())))
}

/// `(c/c_chi) L_c(E, chi-bar, 1) tau_c(chi) / (2 Omega^+)`.
pub fn interpolated_component(
    data: &LSeriesData,
    chi: &DirichletChar,
    omega_plus: &Real,
    tol: f64,
) -> Result<(Complex, Complex), ModSymError> {
    let c = chi.modulus();
    let lvalue = twisted_lvalue(data, &chi.conj(), &primes_dividing(c), tol)?;
    let tau = cyclo_to_complex(&gauss_sum(chi, c).map_err(LError::from)?);
    let factor = &Real::from_i64((c / chi.conductor()) as i64) / &(&Real::from_i64(2) * omega_plus);
    Ok(((&lvalue.value * &tau).scale(&factor), lvalue.value))
}

/// Scales `f` so that the interpolation formula holds at one auxiliary even
/// character, assuming Manin constant one.
pub fn normalize_functional(
    f: &ModularSymbolFunctional,
    curve: &CurveQ,
    digits: u32,
) -> Result<(ModularSymbolFunctional, NormalizationAnchor), ModSymError> {
    let tol = 10f64.powi(-(digits as i32));
    let curve = curve.minimal_model();
    let omega_plus = curve.real_period(digits.max(20))?.omega_plus;
    let level = f.level();
    let bound = LSeriesData::terms_needed(level, MAX_ANCHOR_MODULUS, tol);
    let data = an_coeffs(&curve, bound)?;
    let nonzero = |v: &Complex| v.abs().to_f64() > (1e4 * tol).max(1e-12);

    for c0 in (1..=MAX_ANCHOR_MODULUS).filter(|&c| is_squarefree(c) && gcd(c, level) == 1) {
        for chi in enumerate_chars(c0, true).map_err(LError::from)? {
            let (target, lvalue) = interpolated_component(&data, &chi, &omega_plus, tol)?;
            if !nonzero(&lvalue) {
                continue;
            }
            let raw = cyclo_to_complex(&raw_character_component(f, &chi)?);
            if !nonzero(&raw) {
                return Err(ModSymError::ReconstructionFailed(format!("raw component vanishes at modulus {c0}")));
            }
            let ratio = &target / &raw;
            if ratio.im.abs().to_f64() > 1e3 * tol * (1.0 + ratio.re.abs().to_f64()) {
                return Err(ModSymError::ReconstructionFailed(format!("non-real ratio at modulus {c0}")));
            }
            let scaling = rational_reconstruct(&ratio.re, MAX_SCALING_DENOMINATOR, 1e3 * tol)
                .ok_or_else(|| ModSymError::ReconstructionFailed(ratio.re.to_decimal(20)))?;
            let anchor = NormalizationAnchor {
                modulus: c0,
                conductor: chi.conductor(),
                order: chi.order(),
                lvalue: (lvalue.re.to_f64(), lvalue.im.to_f64()),
            };
            return Ok((f.with_scaling(scaling), anchor));
        }
    }
    Err(ModSymError::AllTwistsVanish(MAX_ANCHOR_MODULUS))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::rat;
    use crate::modsym::{eigen_functional, ManinSymbolSpace};

    fn normalized(level: u64, ainvs: [i64; 5]) -> (ModularSymbolFunctional, NormalizationAnchor) {
        let curve = CurveQ::new(ainvs).unwrap();
        let space = Arc::new(ManinSymbolSpace::new(level).unwrap());
        let f = eigen_functional(space, &curve).unwrap();
        normalize_functional(&f, &curve, 20).unwrap()
    }

    #[test]
    fn eleven_a1() {
        let (f, anchor) = normalized(11, [0, -1, 1, -10, -20]);
        assert_eq!(anchor.modulus, 1);
        assert_eq!(f.eval_plus_symbol(0, 1).unwrap(), rat(1, 5));
        let curve = CurveQ::new([0, -1, 1, -10, -20]).unwrap();
        let (again, _) = normalize_functional(&f, &curve, 20).unwrap();
        assert_eq!(again.scaling(), f.scaling());
    }

    #[test]
    fn thirty_seven_a1_uses_a_quadratic_twist() {
        let (f, anchor) = normalized(37, [0, 0, 1, -1, 0]);
        assert_eq!((anchor.modulus, anchor.order), (5, 2));
        assert_eq!(f.eval_plus_symbol(0, 1).unwrap(), Rational::zero());
    }
}
