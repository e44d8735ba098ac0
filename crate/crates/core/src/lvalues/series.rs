//! Dirichlet coefficients, root numbers and twisted central values.

use super::float::{Complex, Real};
use super::LError;
use crate::arith::nt::{factor, gcd, is_prime};
use crate::arith::CycloElem;
use crate::characters::{gauss_sum, DirichletChar};
use crate::elliptic::CurveQ;

/// Resource guard for [`an_coeffs`].
pub const MAX_COEFFS: usize = 2_000_000;

/// Coefficients `a_1, ..., a_M` of the L-series of a curve.
#[derive(Clone, Debug)]
pub struct LSeriesData {
    curve: CurveQ,
    conductor: u64,
    /// `coeffs[n]` is `a_n`; `coeffs[0]` is unused.
    coeffs: Vec<i64>,
    root_number: i8,
}

/// A numerical value with a bound on its truncation error.
#[derive(Clone, Debug)]
pub struct ApproxValue {
    pub value: Complex,
    pub error_bound: Real,
}

/// `a_n` for `n <= bound` by multiplicativity from the local data.
pub fn an_coeffs(curve: &CurveQ, bound: usize) -> Result<LSeriesData, LError> {
    if bound > MAX_COEFFS {
        return Err(LError::BoundTooLarge(bound));
    }
    let curve = curve.minimal_model();
    let conductor = curve.conductor();
    // enough terms for the root-number test as well
    let bound = bound.max(20 * (conductor as f64).sqrt() as usize + 50);
    let mut coeffs = vec![0i64; bound + 1];
    coeffs[1] = 1;
    let mut smallest = vec![0usize; bound + 1];
    for p in 2..=bound {
        if smallest[p] != 0 {
            continue;
        }
        for m in (p..=bound).step_by(p) {
            if smallest[m] == 0 {
                smallest[m] = p;
            }
        }
        let ap = curve.ap(p as u64)?;
        let good = !conductor.is_multiple_of(p as u64);
        let (mut prev, mut pk) = (1i64, p);
        coeffs[p] = ap;
        while let Some(next) = pk.checked_mul(p).filter(|&n| n <= bound) {
            coeffs[next] = if good { ap * coeffs[pk] - p as i64 * prev } else { ap * coeffs[pk] };
            prev = coeffs[pk];
            pk = next;
        }
    }
    for n in 2..=bound {
        let p = smallest[n];
        let mut pk = p;
        while (n / pk).is_multiple_of(p) {
            pk *= p;
        }
        if pk != n {
            coeffs[n] = coeffs[pk] * coeffs[n / pk];
        }
    }
    let mut data = LSeriesData { curve, conductor, coeffs, root_number: 0 };
    data.root_number = data.compute_root_number()?;
    Ok(data)
}

impl LSeriesData {
    pub fn curve(&self) -> &CurveQ {
        &self.curve
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs[n]
    }

    /// Global root number of the curve.
    pub fn root_number(&self) -> i8 {
        self.root_number
    }

    /// `g(t) = sum a_n exp(-2 pi n t / sqrt(N))`.
    fn theta(&self, t: f64) -> Real {
        let scale =
            &(&(&Real::from_i64(2) * &Real::pi()) * &Real::from_f64(t)) / &Real::from_i64(self.conductor as i64).sqrt();
        let q = (-scale).exp();
        let mut qn = Real::from_i64(1);
        let mut sum = Real::zero();
        for &a in &self.coeffs[1..] {
            qn = &qn * &q;
            if a != 0 {
                sum = &sum + &(&qn * &Real::from_i64(a));
            }
        }
        sum
    }

    /// The Fricke involution gives `g(1/t) = w t^2 g(t)`; the sign is read
    /// off at a few sample points.
    fn compute_root_number(&self) -> Result<i8, LError> {
        for t in [1.1f64, 1.3, 1.7, 2.3] {
            let g = self.theta(t);
            if g.abs().to_f64() < 1e-12 {
                continue;
            }
            let ratio = (&self.theta(1.0 / t) / &g).to_f64() / (t * t);
            for w in [1i8, -1] {
                if (ratio - w as f64).abs() < 1e-9 {
                    return Ok(w);
                }
            }
        }
        Err(LError::RootNumberUndetermined)
    }

    /// Number of terms after which the two-sum tail drops below `tol`.
    pub fn terms_needed(conductor: u64, chi_conductor: u64, tol: f64) -> usize {
        let rate = 2.0 * std::f64::consts::PI / (chi_conductor as f64 * (conductor as f64).sqrt());
        let m = ((4.0 / ((1.0 - (-rate).exp()) * tol)).ln() / rate).ceil();
        m.max(1.0) as usize
    }
}

/// Complex value of an exact cyclotomic number under `zeta_n = exp(2 pi i / n)`.
pub fn cyclo_to_complex(x: &CycloElem) -> Complex {
    let level = x.level();
    x.power_coeffs().fold(Complex::zero(), |acc, (k, q)| {
        &acc + &Complex::root_of_unity(k as i64, level).scale(&Real::from_rational(q))
    })
}

/// Complex value `chi(n)`, zero at non-units.
pub fn char_value(chi: &DirichletChar, n: i64) -> Complex {
    match chi.value_exponent(n) {
        Some(k) => Complex::root_of_unity(k as i64, chi.order()),
        None => Complex::zero(),
    }
}

/// Root number of the twist by a primitive even character of conductor
/// prime to `N`: `w chi(N) tau(chi)^2 / c_chi`.
pub fn twist_root_number(data: &LSeriesData, primitive: &DirichletChar) -> Result<Complex, LError> {
    let f = primitive.modulus();
    let tau = cyclo_to_complex(&gauss_sum(primitive, f)?);
    let chi_n = char_value(primitive, data.conductor as i64);
    let w = Real::from_i64(data.root_number as i64);
    Ok((&(&tau * &tau) * &chi_n).scale(&(&w / &Real::from_i64(f as i64))))
}

fn check_twist(data: &LSeriesData, chi: &DirichletChar) -> Result<DirichletChar, LError> {
    if !chi.is_even() {
        return Err(LError::ChiNotEven);
    }
    let primitive = chi.primitive();
    if gcd(primitive.modulus(), data.conductor) != 1 {
        return Err(LError::ChiNotCoprimeToLevel { conductor: primitive.modulus(), level: data.conductor });
    }
    Ok(primitive)
}

/// `L_S(A, chi, 1)` with the Euler factors at the primes of `truncate_at` removed.
pub fn twisted_lvalue(
    data: &LSeriesData,
    chi: &DirichletChar,
    truncate_at: &[u64],
    tol: f64,
) -> Result<ApproxValue, LError> {
    let primitive = check_twist(data, chi)?;
    let w_chi = twist_root_number(data, &primitive)?;
    twisted_lvalue_with_root_number(data, chi, truncate_at, tol, &w_chi)
}

/// As [`twisted_lvalue`], but with the twist root number supplied by the caller.
pub fn twisted_lvalue_with_root_number(
    data: &LSeriesData,
    chi: &DirichletChar,
    truncate_at: &[u64],
    tol: f64,
    w_chi: &Complex,
) -> Result<ApproxValue, LError> {
    let primitive = check_twist(data, chi)?;
    let f = primitive.modulus();
    let needed = LSeriesData::terms_needed(data.conductor, f, tol / euler_bound(truncate_at));
    if needed > data.bound() {
        return Err(LError::ToleranceUnreachable { needed, available: data.bound() });
    }
    twisted_lvalue_truncated(data, chi, truncate_at, needed, w_chi)
}

fn euler_bound(truncate_at: &[u64]) -> f64 {
    truncate_at.iter().map(|&l| 1.0 + 2.0 / (l as f64).sqrt() + 1.0 / l as f64).product()
}

/// Two-sum expansion with exactly `terms` coefficients.
pub fn twisted_lvalue_truncated(
    data: &LSeriesData,
    chi: &DirichletChar,
    truncate_at: &[u64],
    terms: usize,
    w_chi: &Complex,
) -> Result<ApproxValue, LError> {
    let primitive = check_twist(data, chi)?;
    let f = primitive.modulus();
    let order = primitive.order();
    let terms = terms.min(data.bound());
    let rate = &(&Real::from_i64(2) * &Real::pi())
        / &(&Real::from_i64(f as i64) * &Real::from_i64(data.conductor as i64).sqrt());
    let q = (-&rate).exp();
    // partial sums grouped by the exponent of chi(n)
    let mut by_exponent = vec![Real::zero(); order as usize];
    let mut qn = Real::from_i64(1);
    for n in 1..=terms {
        qn = &qn * &q;
        let a = data.coeffs[n];
        if a == 0 {
            continue;
        }
        if let Some(k) = primitive.value_exponent(n as i64) {
            let term = &(&qn * &Real::from_i64(a)) / &Real::from_i64(n as i64);
            by_exponent[k as usize] = &by_exponent[k as usize] + &term;
        }
    }
    let mut direct = Complex::zero();
    let mut dual = Complex::zero();
    for (k, s) in by_exponent.iter().enumerate() {
        direct = &direct + &Complex::root_of_unity(k as i64, order).scale(s);
        dual = &dual + &Complex::root_of_unity(-(k as i64), order).scale(s);
    }
    let mut value = &direct + &(w_chi * &dual);

    let mut factor_bound = Real::from_i64(1);
    for &ell in truncate_at {
        if !is_prime(ell) || f % ell == 0 {
            continue;
        }
        let chi_l = char_value(&primitive, ell as i64);
        let a = Real::from_i64(data.curve.ap(ell)?);
        let inv_l = &Real::from_i64(1) / &Real::from_i64(ell as i64);
        let mut euler = &Complex::real(Real::from_i64(1)) - &chi_l.scale(&(&a * &inv_l));
        if !data.conductor.is_multiple_of(ell) {
            euler = &euler + &(&chi_l * &chi_l).scale(&inv_l);
        }
        factor_bound = &factor_bound * &euler.abs();
        value = &value * &euler;
    }

    // |a_n| / n <= 2, two sums of modulus one each
    let tail_start = (-&(&rate * &Real::from_i64(terms as i64 + 1))).exp();
    let geometric = &Real::from_i64(1) - &q;
    let tail = &(&Real::from_i64(4) * &tail_start) / &geometric;
    let error_bound = &(&tail * &factor_bound) + &Real::parse("1e-45");
    Ok(ApproxValue { value, error_bound })
}

/// Squarefree kernel primes of `c`, the default truncation set for `L_c`.
pub fn primes_dividing(c: u64) -> Vec<u64> {
    factor(c).into_iter().map(|(p, _)| p).collect()
}

impl ApproxValue {
    pub fn error_f64(&self) -> f64 {
        self.error_bound.to_f64()
    }

    pub fn re_f64(&self) -> f64 {
        self.value.re.to_f64()
    }

    /// True when zero lies within the error bound.
    pub fn may_vanish(&self, tol: f64) -> bool {
        self.value.abs().to_f64() <= tol.max(self.error_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_chars;
    use proptest::prelude::*;

    fn data(ainvs: [i64; 5], bound: usize) -> LSeriesData {
        an_coeffs(&CurveQ::new(ainvs).unwrap(), bound).unwrap()
    }

    const E11: [i64; 5] = [0, -1, 1, -10, -20];
    const E37: [i64; 5] = [0, 0, 1, -1, 0];

    fn cubic_mod_7() -> DirichletChar {
        enumerate_chars(7, true).unwrap().into_iter().find(|c| c.order() == 3).unwrap()
    }

    #[test]
    fn coefficients() {
        let e37 = data(E37, 100);
        assert_eq!(e37.coeff(1), 1);
        assert_eq!(e37.coeff(4), 2);
        let e11 = data(E11, 200);
        assert_eq!(e11.coeff(6), 2);
        assert_eq!(e11.coeff(121), 1);
        assert_eq!(e11.coeff(25), 1 - 5);
    }

    #[test]
    fn root_numbers() {
        assert_eq!(data(E11, 10).root_number(), 1);
        assert_eq!(data(E37, 10).root_number(), -1);
        assert_eq!(data([0, 1, 1, 0, 0], 10).root_number(), -1);
        assert_eq!(data([1, 0, 1, 4, -6], 10).root_number(), 1);
    }

    #[test]
    fn central_values() {
        let trivial = DirichletChar::trivial(1).unwrap();
        let e11 = data(E11, 2000);
        let v = twisted_lvalue(&e11, &trivial, &[], 1e-20).unwrap();
        assert!((v.re_f64() - 0.2538418609).abs() < 1e-8);
        assert!(v.error_f64() < 1e-20);
        let e37 = data(E37, 2000);
        let v = twisted_lvalue(&e37, &trivial, &[], 1e-20).unwrap();
        assert!(v.value.abs().to_f64() < 1e-10);
    }

    /// Sum `sum a_n chi(n) exp(-2 pi n t / (f sqrt N))` with plenty of terms.
    fn twisted_theta(d: &LSeriesData, chi: &DirichletChar, t: f64) -> Complex {
        let f = chi.modulus() as f64;
        let rate = Real::from_f64(2.0 * std::f64::consts::PI * t / (f * (d.conductor() as f64).sqrt()));
        let q = (-rate).exp();
        let mut qn = Real::from_i64(1);
        let mut sum = Complex::zero();
        for n in 1..=d.bound() {
            qn = &qn * &q;
            sum = &sum + &char_value(chi, n as i64).scale(&(&qn * &Real::from_i64(d.coeff(n))));
        }
        sum
    }

    #[test]
    fn twist_root_number_matches_modularity() {
        // g_chi(1/t) = w_chi t^2 g_{chi-bar}(t) for the twisted form.
        let e11 = data(E11, 6000);
        let e37 = data(E37, 6000);
        let quadratic = enumerate_chars(5, true).unwrap().into_iter().find(|c| c.order() == 2).unwrap();
        for (d, chi) in [(&e11, cubic_mod_7()), (&e37, cubic_mod_7()), (&e11, quadratic.clone()), (&e37, quadratic)] {
            let w = twist_root_number(d, &chi).unwrap();
            let t = 1.2;
            let lhs = twisted_theta(d, &chi, 1.0 / t);
            let rhs = (&w * &twisted_theta(d, &chi.conj(), t)).scale(&Real::from_f64(t * t));
            assert!((&lhs - &rhs).abs().to_f64() < 1e-15, "{:?} vs {:?}", lhs, rhs);
            let wrong = (&lhs + &rhs).abs().to_f64();
            assert!(wrong > 1e-6);
        }
    }

    #[test]
    fn conjugate_character_gives_conjugate_value() {
        let e11 = data(E11, 5000);
        let chi = cubic_mod_7();
        let a = twisted_lvalue(&e11, &chi, &[7, 2], 1e-20).unwrap();
        let b = twisted_lvalue(&e11, &chi.conj(), &[7, 2], 1e-20).unwrap();
        assert!((&a.value.conj() - &b.value).abs().to_f64() < 1e-18);
    }

    #[test]
    fn rejects_bad_characters() {
        let e11 = data(E11, 100);
        let odd = enumerate_chars(5, false).unwrap().into_iter().find(|c| !c.is_even()).unwrap();
        assert_eq!(twisted_lvalue(&e11, &odd, &[], 1e-8).unwrap_err(), LError::ChiNotEven);
        let level = enumerate_chars(11, true).unwrap().into_iter().find(|c| c.order() == 5).unwrap();
        assert!(matches!(twisted_lvalue(&e11, &level, &[], 1e-8), Err(LError::ChiNotCoprimeToLevel { .. })));
        assert!(matches!(twisted_lvalue(&e11, &cubic_mod_7(), &[], 1e-40), Err(LError::ToleranceUnreachable { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn error_bound_dominates_truncation(terms in 20usize..400) {
            let e11 = data(E11, 1000);
            let chi = cubic_mod_7();
            let w = twist_root_number(&e11, &chi).unwrap();
            let short = twisted_lvalue_truncated(&e11, &chi, &[], terms, &w).unwrap();
            let long = twisted_lvalue_truncated(&e11, &chi, &[], 2 * terms, &w).unwrap();
            prop_assert!((&short.value - &long.value).abs() <= short.error_bound);
        }
    }
}
