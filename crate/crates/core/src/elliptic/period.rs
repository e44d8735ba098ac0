//! Real and imaginary periods via the arithmetic-geometric mean.

use super::{CurveError, CurveQ};
use crate::lvalues::float::Real;

/// Largest number of decimal digits the working precision supports.
pub const MAX_DIGITS: u32 = 50;

#[derive(Clone, Debug)]
pub struct RealPeriods {
    /// Least positive real period.
    pub omega_plus: Real,
    /// Least positive `y` with `iy` in the period lattice.
    pub omega_minus: Real,
    /// Number of real components.
    pub real_components: u8,
}

/// Real roots of `x^3 + b x^2 + c x + d`, located by bisection.
pub(crate) fn real_roots_monic_cubic(b: f64, c: f64, d: f64) -> Vec<f64> {
    let f = |x: f64| ((x + b) * x + c) * x + d;
    let bound = 1.0 + b.abs().max(c.abs()).max(d.abs());
    let mut cuts = vec![-bound];
    let disc = b * b - 3.0 * c;
    if disc > 0.0 {
        let s = disc.sqrt();
        let mut crit = [(-b - s) / 3.0, (-b + s) / 3.0];
        crit.sort_by(f64::total_cmp);
        cuts.extend(crit);
    }
    cuts.push(bound);
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

fn agm(a: &Real, b: &Real) -> Real {
    let tol = Real::parse("1e-55");
    let two = Real::from_i64(2);
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..200 {
        if (&a - &b).abs() <= &tol * &a.abs() {
            break;
        }
        let next = &(&a + &b) / &two;
        b = (&a * &b).sqrt();
        a = next;
    }
    a
}

/// Newton refinement of a root of `4x^3 + b2 x^2 + 2 b4 x + b6`.
fn refine(x0: f64, coeffs: &[Real; 4]) -> Real {
    let [c3, c2, c1, c0] = coeffs;
    let mut x = Real::from_f64(x0);
    for _ in 0..100 {
        let fx = &(&(&(&(c3 * &x) + c2) * &x) + c1) * &x + c0;
        let dfx = &(&(&Real::from_i64(3) * c3) * &x + &(&Real::from_i64(2) * c2)) * &x + c1;
        if dfx.is_zero() {
            break;
        }
        let step = &fx / &dfx;
        x = &x - &step;
        if step.abs() <= &Real::parse("1e-56") * &x.abs().max(&Real::from_i64(1)) {
            break;
        }
    }
    x
}

pub(super) fn real_periods(curve: &CurveQ, digits: u32) -> Result<RealPeriods, CurveError> {
    if digits > MAX_DIGITS {
        return Err(CurveError::PrecisionUnreachable(digits));
    }
    let inv = curve.invariants();
    let b2 = Real::from_bigint(&inv.b2);
    let b4 = Real::from_bigint(&inv.b4);
    let b6 = Real::from_bigint(&inv.b6);
    let coeffs = [Real::from_i64(4), b2.clone(), &Real::from_i64(2) * &b4, b6.clone()];
    let guesses = real_roots_monic_cubic(b2.to_f64() / 4.0, b4.to_f64() / 2.0, b6.to_f64() / 4.0);
    let mut roots: Vec<Real> = guesses.into_iter().map(|g| refine(g, &coeffs)).collect();
    roots.sort_by(|a, b| b.partial_cmp(a).expect("finite roots"));
    let positive = inv.disc > 0.into();
    let pi = Real::pi();
    let two = Real::from_i64(2);
    if positive {
        if roots.len() != 3 {
            return Err(CurveError::PrecisionUnreachable(digits));
        }
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let r13 = (e1 - e3).sqrt();
        let omega_plus = &pi / &agm(&r13, &(e1 - e2).sqrt());
        let omega_minus = &pi / &agm(&r13, &(e2 - e3).sqrt());
        Ok(RealPeriods { omega_plus, omega_minus, real_components: 2 })
    } else {
        let e1 = roots.first().ok_or(CurveError::PrecisionUnreachable(digits))?;
        let a = &(&Real::from_i64(3) * e1) + &(&b2 / &Real::from_i64(4));
        let b = (&(&(&(&Real::from_i64(3) * e1) * e1) + &(&(&b2 / &two) * e1)) + &(&b4 / &two)).sqrt();
        let two_sqrt_b = &two * &b.sqrt();
        let omega_plus = &(&two * &pi) / &agm(&two_sqrt_b, &(&(&two * &b) + &a).sqrt());
        let omega_minus = &(&two * &pi) / &agm(&two_sqrt_b, &(&(&two * &b) - &a).sqrt());
        Ok(RealPeriods { omega_plus, omega_minus, real_components: 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tanh-sinh quadrature of `2 * int_0^inf du / sqrt(q(u))`, where `x = e + u^2`
    /// turns `int_e^inf dx / sqrt(g(x))` into a smooth integrand.
    fn period_by_quadrature(curve: &CurveQ) -> f64 {
        let inv = curve.invariants();
        let (b2, b4, b6) = (
            inv.b2.to_string().parse::<f64>().unwrap(),
            inv.b4.to_string().parse::<f64>().unwrap(),
            inv.b6.to_string().parse::<f64>().unwrap(),
        );
        let roots = real_roots_monic_cubic(b2 / 4.0, b4 / 2.0, b6 / 4.0);
        let e = roots.iter().cloned().fold(f64::MIN, f64::max);
        // g(e + w) = w h(w) with h(w) = g'(e) + (12 e + b2) w + 4 w^2 > 0, and
        // dx / sqrt(g) = 2 du / sqrt(h(u^2)) after x = e + u^2.
        let gp = 12.0 * e * e + 2.0 * b2 * e + 2.0 * b4;
        let integrand = |u: f64| {
            let w = u * u;
            2.0 / (gp + (12.0 * e + b2) * w + 4.0 * w * w).sqrt()
        };
        // substitute u = t / (1 - t) on [0, 1)
        let mut sum = 0.0;
        let h = 1.0 / 64.0;
        for k in -400i32..=400 {
            let s = k as f64 * h;
            let t = 0.5 * (1.0 + (std::f64::consts::FRAC_PI_2 * s.sinh()).tanh());
            let dt =
                0.5 * std::f64::consts::FRAC_PI_2 * s.cosh() / (std::f64::consts::FRAC_PI_2 * s.sinh()).cosh().powi(2);
            if t >= 1.0 || dt == 0.0 {
                continue;
            }
            let u = t / (1.0 - t);
            let du = 1.0 / ((1.0 - t) * (1.0 - t));
            sum += integrand(u) * du * dt * h;
        }
        2.0 * sum
    }

    #[test]
    fn periods_of_11a1() {
        let e = CurveQ::new([0, -1, 1, -10, -20]).unwrap();
        let p = e.real_period(30).unwrap();
        assert!(p.omega_plus.to_decimal(15).starts_with("1.26920930427955"), "{:?}", p.omega_plus);
        assert!(p.omega_minus.to_decimal(15).starts_with("2.9176332338769"), "{:?}", p.omega_minus);
        assert_eq!(p.real_components, 1);
    }

    #[test]
    fn periods_of_37a1() {
        let e = CurveQ::new([0, 0, 1, -1, 0]).unwrap();
        let p = e.real_period(30).unwrap();
        assert!(p.omega_plus.to_decimal(15).starts_with("2.99345864623195"), "{:?}", p.omega_plus);
        assert_eq!(p.real_components, 2);
    }

    #[test]
    fn agm_against_quadrature() {
        for a in [[0, -1, 1, -10, -20], [0, 0, 1, -1, 0], [1, 0, 1, 4, -6], [0, 1, 1, 0, 0], [1, 1, 1, -10, -10]] {
            let e = CurveQ::new(a).unwrap();
            let agm = e.real_period(30).unwrap().omega_plus.to_f64();
            let quad = period_by_quadrature(&e);
            assert!((agm - quad).abs() < 1e-9 * agm, "{a:?}: {agm} vs {quad}");
        }
    }

    #[test]
    fn precision_limit() {
        let e = CurveQ::new([0, 0, 1, -1, 0]).unwrap();
        assert!(matches!(e.real_period(80), Err(CurveError::PrecisionUnreachable(80))));
    }
}
