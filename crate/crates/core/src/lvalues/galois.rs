//! Galois equivariance of algebraic parts of twisted central values.

use super::float::{Complex, Real};
use super::recognize::recognize_cyclotomic;
use super::series::{cyclo_to_complex, primes_dividing, twisted_lvalue, LSeriesData};
use super::LError;
use crate::arith::nt::gcd;
use crate::arith::CycloElem;
use crate::characters::{tau_star, DirichletChar};

/// Outcome of comparing `L*(A, chi^t)` against `sigma_t(L*(A, chi))`.
#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    /// Exponents `t` of the orbit, starting with `1`.
    pub exponents: Vec<u64>,
    /// `L*(A, chi^t)` for each exponent.
    pub values: Vec<Complex>,
    /// Exact value recognised for `chi` itself.
    pub recognized: CycloElem,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Algebraic part `L_c(A, chi-bar, 1) tau*(Q, chi) / Omega^+`.
fn algebraic_part(
    data: &LSeriesData,
    chi: &DirichletChar,
    c: u64,
    omega_plus: &Real,
    tol: f64,
) -> Result<Complex, LError> {
    let value = twisted_lvalue(data, &chi.conj(), &primes_dividing(c), tol)?;
    if value.may_vanish(tol) {
        return Err(LError::ValueVanishes);
    }
    let tau = cyclo_to_complex(&tau_star(chi, c)?);
    Ok((&value.value * &tau).scale(&(&Real::from_i64(1) / omega_plus)))
}

/// Recognises `L*(A, chi)` in `Q(zeta_m)` (`m` the order of `chi`) with
/// denominators at most `max_den`, then checks every Galois conjugate
/// against the value at the matching power of `chi`.
pub fn galois_equivariance_check(
    data: &LSeriesData,
    chi: &DirichletChar,
    c: u64,
    omega_plus: &Real,
    max_den: u64,
    tol: f64,
) -> Result<EquivarianceReport, LError> {
    let order = chi.order();
    let exponents: Vec<u64> = (1..order.max(2)).filter(|&t| gcd(t, order) == 1).collect();
    let values = exponents
        .iter()
        .map(|&t| algebraic_part(data, &chi.pow(t as i64), c, omega_plus, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let slack = 1e3 * tol * (c as f64).sqrt();
    let recognized = recognize_cyclotomic(&values[0], order, max_den, slack).ok_or(LError::RecognitionFailed)?;
    let mut max_deviation = 0.0f64;
    for (&t, value) in exponents.iter().zip(&values) {
        let image = recognized.galois(t as i64).map_err(|_| LError::RecognitionFailed)?;
        max_deviation = max_deviation.max((&cyclo_to_complex(&image) - value).abs().to_f64());
    }
    Ok(EquivarianceReport { exponents, values, recognized, max_deviation, passed: max_deviation <= slack })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_chars;
    use crate::elliptic::CurveQ;
    use crate::lvalues::an_coeffs;
    use crate::theta::{character_component, curve_functional, theta_element};

    fn setup(ainvs: [i64; 5], c: u64) -> (CurveQ, LSeriesData, Real) {
        let curve = CurveQ::new(ainvs).unwrap();
        let data = an_coeffs(&curve, LSeriesData::terms_needed(curve.conductor(), c, 1e-22)).unwrap();
        let omega = curve.real_period(30).unwrap().omega_plus;
        (curve, data, omega)
    }

    #[test]
    fn cubic_twists_of_11a1() {
        let (curve, data, omega) = setup([0, -1, 1, -10, -20], 7);
        let f = curve_functional(&curve).unwrap();
        let theta = theta_element(&f, 7).unwrap();
        for chi in enumerate_chars(7, true).unwrap().into_iter().filter(|c| c.order() == 3) {
            let report = galois_equivariance_check(&data, &chi, 7, &omega, 1000, 1e-18).unwrap();
            assert!(report.passed, "{report:?}");
            assert_eq!(report.exponents, vec![1, 2]);
            // independent route: twice the exact character component of the theta element
            let exact = character_component(&theta, &chi).unwrap().scale(&crate::arith::rat(2, 1));
            assert_eq!(report.recognized, exact.embed(report.recognized.level()).unwrap());
            // the conjugate value is not the value itself
            let diff = (&report.values[0] - &report.values[1]).abs().to_f64();
            assert!(diff > 1e-3);
        }
    }

    #[test]
    fn vanishing_values_are_reported() {
        let (_, data, omega) = setup([0, 0, 1, -1, 0], 1);
        let trivial = DirichletChar::trivial(1).unwrap();
        assert!(matches!(
            galois_equivariance_check(&data, &trivial, 1, &omega, 1000, 1e-18),
            Err(LError::ValueVanishes)
        ));
    }
}
