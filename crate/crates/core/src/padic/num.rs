//! Elements of `Q_p` at capped relative precision.

use std::fmt;
use std::sync::Arc;

use super::unram::{UnramExt, UnramExtElem};
use super::PadicError;
use crate::arith::Rational;

/// `p^val * u` with `u` a unit known modulo `p^rel`.
#[derive(Clone)]
pub struct PadicNum(UnramExtElem);

impl PadicNum {
    /// The ring `Z_p` with relative precision `cap`.
    pub fn context(p: u64, cap: u32) -> Result<Arc<UnramExt>, PadicError> {
        UnramExt::new(p, 1, cap)
    }

    pub fn from_rational(ctx: &Arc<UnramExt>, q: &Rational) -> Self {
        PadicNum(UnramExtElem::from_rational(ctx, q))
    }

    pub fn zero(ctx: &Arc<UnramExt>, abs: i64) -> Self {
        PadicNum(UnramExtElem::zero(ctx, abs))
    }

    /// The base-field element of an extension element fixed by Frobenius.
    pub fn from_extension(ctx: &Arc<UnramExt>, x: &UnramExtElem) -> Option<Self> {
        let (val, rel, unit) = x.to_base()?;
        if rel == 0 {
            return Some(Self::zero(ctx, val));
        }
        let u = UnramExtElem::from_coords(ctx, &[unit], rel);
        let shift = if val >= 0 {
            UnramExtElem::from_rational(
                ctx,
                &Rational::from_integer(num_bigint::BigInt::from(ctx.prime()).pow(val as u32)),
            )
        } else {
            UnramExtElem::from_rational(
                ctx,
                &Rational::new(1.into(), num_bigint::BigInt::from(ctx.prime()).pow((-val) as u32)),
            )
        };
        Some(PadicNum(u.mul(&shift)))
    }

    pub fn ctx(&self) -> &Arc<UnramExt> {
        self.0.ctx()
    }

    /// The same number at the relative precision of another context.
    pub fn change_context(&self, ctx: &Arc<UnramExt>) -> Result<Self, PadicError> {
        self.0.change_context(ctx).map(PadicNum)
    }

    pub fn prime(&self) -> u64 {
        self.0.ctx().prime()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.0.valuation()
    }

    pub fn absolute_precision(&self) -> i64 {
        self.0.absolute_precision()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Integral at its precision: zero, or of nonnegative valuation.
    pub fn is_integral(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0) && self.absolute_precision() >= 0
    }

    /// Residue modulo `p^k` for an integral element known to that precision.
    pub fn residue(&self, k: u32) -> Option<u64> {
        self.0.residues(k).map(|r| r[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        PadicNum(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        PadicNum(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        PadicNum(self.0.mul(&other.0))
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        Ok(PadicNum(self.0.div(&other.0)?))
    }

    pub fn truncate(&self, abs: i64) -> Self {
        PadicNum(self.0.truncate(abs))
    }
}

impl fmt::Debug for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime();
        match self.0.to_base() {
            Some((val, 0, _)) | Some((val, _, 0)) => write!(f, "O({p}^{val})"),
            Some((val, rel, unit)) => write!(f, "{unit} * {p}^{val} + O({p}^{})", val + rel as i64),
            None => write!(f, "?"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rationals_and_precision() {
        let ctx = PadicNum::context(5, 10).unwrap();
        let x = PadicNum::from_rational(&ctx, &rat(2, 75));
        assert_eq!(x.valuation(), Some(-2));
        assert!(!x.is_integral());
        let y = x.mul(&PadicNum::from_rational(&ctx, &rat(25, 1)));
        assert!(y.is_integral());
        // 2/3 mod 5^3
        assert_eq!(y.residue(3), Some(2 * 42));
        let z = PadicNum::from_rational(&ctx, &rat(1, 1)).truncate(3);
        assert_eq!(z.add(&y).absolute_precision(), 3);
        assert_eq!(x.sub(&x).valuation(), None);
        assert!(PadicNum::context(4, 3).is_err());
    }
}
