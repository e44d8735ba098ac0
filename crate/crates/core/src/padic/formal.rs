//! Formal groups of Weierstrass models: logarithm and group law.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::unram::UnramExtElem;
use super::PadicError;
use crate::arith::Rational;
use crate::elliptic::CurveQ;

/// Power series truncated at degree `len - 1`.
type Series = Vec<Rational>;

fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Series {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of a series with nonzero constant term.
fn series_inv(a: &[Rational], len: usize) -> Series {
    let mut out = vec![Rational::zero(); len];
    let a0 = a[0].recip();
    out[0] = a0.clone();
    for n in 1..len {
        let s: Rational = (1..=n).filter(|&k| k < a.len()).map(|k| &a[k] * &out[n - k]).sum();
        out[n] = -(s * &a0);
    }
    out
}

/// Formal logarithm `sum_n c_n t^n` in `t = -x/y`, with the series `w(t) = -1/y`.
#[derive(Clone, Debug)]
pub struct FormalLogSeries {
    ainvs: [BigInt; 5],
    /// `w_coeffs[n]` is the coefficient of `t^n` in `w(t)`.
    w_coeffs: Vec<BigInt>,
    /// `coeffs[n]` is `c_n`; `coeffs[0] = 0`.
    coeffs: Vec<Rational>,
}

/// The formal logarithm of the minimal model of `curve` up to `t^truncation`.
pub fn formal_group_log(curve: &CurveQ, truncation: usize) -> FormalLogSeries {
    let curve = curve.minimal_model();
    let ainvs = curve.ainvs().clone();
    let len = truncation.max(4) + 1;
    let a: Vec<Rational> = ainvs.iter().map(|x| Rational::from_integer(x.clone())).collect();

    // w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3, by fixed-point iteration
    let mut w = vec![Rational::zero(); len];
    for _ in 0..len {
        let w2 = series_mul(&w, &w, len);
        let w3 = series_mul(&w2, &w, len);
        let mut next = vec![Rational::zero(); len];
        next[3] = Rational::one();
        for n in 0..len {
            if n >= 1 {
                next[n] += &a[0] * &w[n - 1] + &a[3] * &w2[n - 1];
            }
            if n >= 2 {
                next[n] += &a[1] * &w[n - 2];
            }
            next[n] += &a[2] * &w2[n] + &a[4] * &w3[n];
        }
        w = next;
    }

    // s = t^3 / w, and omega = (-2 s + t s') / (-2 s + a1 t s + a3 t^3)
    let shifted: Series = (3..len + 3).map(|n| w.get(n).cloned().unwrap_or_else(Rational::zero)).collect();
    // shifted is only reliable below len - 3; truncate the working length accordingly
    let work = len - 3;
    let s = series_inv(&shifted[..work], work);
    let ts_prime: Series = (0..work).map(|n| &s[n] * Rational::from_integer(BigInt::from(n))).collect();
    let two = Rational::from_integer(BigInt::from(2));
    let numer: Series = (0..work).map(|n| &ts_prime[n] - &two * &s[n]).collect();
    let denom: Series = (0..work)
        .map(|n| {
            let mut d = -(&two * &s[n]);
            if n >= 1 {
                d += &a[0] * &s[n - 1];
            }
            if n == 3 {
                d += &a[2];
            }
            d
        })
        .collect();
    let omega = series_mul(&numer, &series_inv(&denom, work), work);
    let mut coeffs = vec![Rational::zero(); work + 1];
    for (n, c) in omega.iter().enumerate() {
        coeffs[n + 1] = c / Rational::from_integer(BigInt::from(n + 1));
    }
    let w_coeffs = w[..work.min(len)]
        .iter()
        .map(|x| {
            assert!(x.is_integer(), "w(t) has integral coefficients");
            x.to_integer()
        })
        .collect();
    FormalLogSeries { ainvs, w_coeffs, coeffs }
}

/// `p`-adic valuation lower bound of the tail `sum_{n > T} c_n t^n` for `v(t) >= v`.
fn tail_bound(truncation: usize, v: i64, p: u64) -> i64 {
    // n v - log_p(n) is increasing for n > T once v >= 1
    let n = truncation as i64 + 1;
    let mut logp = 0i64;
    let mut pk = 1i64;
    while pk.saturating_mul(p as i64) <= n {
        pk *= p as i64;
        logp += 1;
    }
    n * v - logp
}

impl FormalLogSeries {
    /// Highest degree kept.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients of `w(t) = -1/y`.
    pub fn w_coeffs(&self) -> &[BigInt] {
        &self.w_coeffs
    }

    fn check_parameter(&self, t: &UnramExtElem) -> Result<i64, PadicError> {
        match t.valuation() {
            None => Ok(t.absolute_precision().max(1)),
            Some(v) if v >= 1 => Ok(v),
            Some(v) => Err(PadicError::NotInFormalGroup(v)),
        }
    }

    /// `log(t)` for `v(t) >= 1`, with the truncation error folded into the precision.
    pub fn log(&self, t: &UnramExtElem) -> Result<UnramExtElem, PadicError> {
        let v = self.check_parameter(t)?;
        let ctx = t.ctx();
        let mut acc = UnramExtElem::zero_exact(ctx);
        let mut power = t.clone();
        for c in self.coeffs.iter().skip(1) {
            if !c.is_zero() {
                acc = acc.add(&power.scale_rational(c));
            }
            power = power.mul(t);
        }
        Ok(acc.truncate(tail_bound(self.truncation(), v, ctx.prime())))
    }

    /// `w(t)` for `v(t) >= 1`.
    pub fn w(&self, t: &UnramExtElem) -> Result<UnramExtElem, PadicError> {
        let v = self.check_parameter(t)?;
        let ctx = t.ctx();
        let mut acc = UnramExtElem::zero_exact(ctx);
        let mut power = UnramExtElem::one(ctx);
        for c in &self.w_coeffs {
            if !c.is_zero() {
                acc = acc.add(&power.scale_rational(&Rational::from_integer(c.clone())));
            }
            power = power.mul(t);
        }
        Ok(acc.truncate(self.w_coeffs.len() as i64 * v))
    }

    fn a(&self, i: usize, ctx: &std::sync::Arc<super::unram::UnramExt>) -> UnramExtElem {
        UnramExtElem::from_rational(ctx, &Rational::from_integer(self.ainvs[i].clone()))
    }

    /// Inverse `[-1] t = t / (-1 + a1 t + a3 w(t))`.
    pub fn negate(&self, t: &UnramExtElem) -> Result<UnramExtElem, PadicError> {
        let ctx = t.ctx();
        let denom = UnramExtElem::one(ctx).neg().add(&self.a(0, ctx).mul(t)).add(&self.a(2, ctx).mul(&self.w(t)?));
        t.div(&denom)
    }

    /// The formal group law, through the chord between the two points.
    pub fn add(&self, t1: &UnramExtElem, t2: &UnramExtElem) -> Result<UnramExtElem, PadicError> {
        let v = self.check_parameter(t1)?.min(self.check_parameter(t2)?);
        let ctx = t1.ctx();
        // lambda = sum_n A_n (t2^n - t1^n)/(t2 - t1), with the quotient expanded
        let mut lambda = UnramExtElem::zero_exact(ctx);
        let mut h = UnramExtElem::one(ctx); // sum_{i+j=n-1} t1^i t2^j
        let mut t1_pow = UnramExtElem::one(ctx);
        for (n, c) in self.w_coeffs.iter().enumerate().skip(1) {
            if n > 1 {
                t1_pow = t1_pow.mul(t1);
                h = h.mul(t2).add(&t1_pow);
            }
            if !c.is_zero() {
                lambda = lambda.add(&h.scale_rational(&Rational::from_integer(c.clone())));
            }
        }
        lambda = lambda.truncate((self.w_coeffs.len() as i64 - 1) * v);
        let nu = self.w(t1)?.sub(&lambda.mul(t1));
        let (a1, a2, a3, a4, a6) = (self.a(0, ctx), self.a(1, ctx), self.a(2, ctx), self.a(3, ctx), self.a(4, ctx));
        let l2 = lambda.mul(&lambda);
        let two = UnramExtElem::from_u64(ctx, 2);
        let three = UnramExtElem::from_u64(ctx, 3);
        // minus the z^2 coefficient after substituting the chord w = lambda z + nu
        let numer = a1
            .mul(&lambda)
            .add(&a3.mul(&l2))
            .add(&a2.mul(&nu))
            .add(&two.mul(&a4).mul(&lambda).mul(&nu))
            .add(&three.mul(&a6).mul(&l2).mul(&nu))
            .neg();
        let denom = UnramExtElem::one(ctx).add(&a2.mul(&lambda)).add(&a4.mul(&l2)).add(&a6.mul(&l2).mul(&lambda));
        let t3 = t1.neg().sub(t2).add(&numer.div(&denom)?);
        self.negate(&t3)
    }

    /// `[n] t` by double-and-add.
    pub fn multiply(&self, n: i64, t: &UnramExtElem) -> Result<UnramExtElem, PadicError> {
        let base = if n < 0 { self.negate(t)? } else { t.clone() };
        let mut k = n.unsigned_abs();
        let mut acc: Option<UnramExtElem> = None;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => pow.clone(),
                    Some(a) => self.add(&a, &pow)?,
                });
            }
            k >>= 1;
            if k > 0 {
                pow = self.add(&pow, &pow)?;
            }
        }
        Ok(acc.unwrap_or_else(|| UnramExtElem::zero(t.ctx(), t.absolute_precision())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::unram::UnramExt;

    fn e11() -> CurveQ {
        CurveQ::new([0, -1, 1, -10, -20]).unwrap()
    }

    #[test]
    fn coefficients() {
        let log = formal_group_log(&e11(), 30);
        assert_eq!(log.coeffs()[1], Rational::one());
        // c_2 = a1/2, and a1 = 0 here
        assert!(log.coeffs()[2].is_zero());
        for (n, c) in log.coeffs().iter().enumerate().skip(1) {
            assert!((c * Rational::from_integer(BigInt::from(n))).is_integer(), "c_{n} = {c}");
        }
        // w(t) = t^3 + a1 t^4 + (a1^2 + a2) t^5 + ...
        assert_eq!(log.w_coeffs()[3], BigInt::one());
        assert_eq!(log.w_coeffs()[4], BigInt::zero());
        assert_eq!(log.w_coeffs()[5], BigInt::from(-1));
        let with_a1 = formal_group_log(&CurveQ::new([1, 0, 1, 4, -6]).unwrap(), 10);
        assert_eq!(with_a1.coeffs()[2], Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn logarithm_is_a_homomorphism() {
        let ctx = UnramExt::new(5, 2, 14).unwrap();
        for curve in [e11(), CurveQ::new([1, 0, 1, 4, -6]).unwrap(), CurveQ::new([0, 0, 1, -1, 0]).unwrap()] {
            let fg = formal_group_log(&curve, 40);
            let t1 = UnramExtElem::from_coords(&ctx, &[5, 10], 14);
            let t2 = UnramExtElem::from_coords(&ctx, &[15, 35], 14);
            let sum = fg.add(&t1, &t2).unwrap();
            let lhs = fg.log(&sum).unwrap();
            let rhs = fg.log(&t1).unwrap().add(&fg.log(&t2).unwrap());
            assert!(lhs.eq_at_precision(&rhs), "{lhs:?} vs {rhs:?}");
            assert!(lhs.absolute_precision() >= 10);
            let triple = fg.multiply(3, &t1).unwrap();
            assert!(fg
                .log(&triple)
                .unwrap()
                .eq_at_precision(&fg.log(&t1).unwrap().scale_rational(&Rational::from_integer(3.into()))));
            let inv = fg.negate(&t1).unwrap();
            assert!(fg.add(&t1, &inv).unwrap().is_zero());
        }
    }

    #[test]
    fn rejects_units() {
        let ctx = UnramExt::new(5, 1, 10).unwrap();
        let fg = formal_group_log(&e11(), 20);
        assert!(matches!(fg.log(&UnramExtElem::one(&ctx)), Err(PadicError::NotInFormalGroup(0))));
    }
}
