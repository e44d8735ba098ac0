//! Elliptic curves over the rationals: invariants, minimal models, local
//! reduction data, point counts, torsion and real periods.

mod period;
mod points;
mod tate;

pub use period::RealPeriods;
pub use points::{points_over_extension, torsion_points};
pub use tate::{Kodaira, ReductionData, ReductionKind};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::nt::{is_prime, prime_divisors_big};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("singular Weierstrass model (zero discriminant)")]
    SingularCurve,
    #[error("model is not minimal at {0}")]
    NotMinimalAtPrime(u64),
    #[error("{0} is a prime of bad reduction")]
    BadReduction(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue field of size {0} is too large for exhaustive search")]
    PrimeTooLarge(u64),
    #[error("requested {0} digits exceeds the working precision")]
    PrecisionUnreachable(u32),
}

/// Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurveQ {
    label: Option<String>,
    ainvs: [BigInt; 5],
}

impl fmt::Debug for CurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.ainvs.iter().map(ToString::to_string).collect();
        match &self.label {
            Some(l) => write!(f, "{l} [{}]", a.join(",")),
            None => write!(f, "[{}]", a.join(",")),
        }
    }
}

/// The standard invariants `b2, b4, b6, b8, c4, c6, Delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
}

pub(crate) fn invariants_of(a: &[BigInt; 5]) -> Invariants {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - 24 * &b4;
    let c6 = BigInt::from(36) * &b2 * &b4 - &b2 * &b2 * &b2 - BigInt::from(216) * &b6;
    let disc: BigInt = BigInt::from(9) * &b2 * &b4 * &b6
        - &b2 * &b2 * &b8
        - BigInt::from(8) * &b4 * &b4 * &b4
        - BigInt::from(27) * &b6 * &b6;
    Invariants { b2, b4, b6, b8, c4, c6, disc }
}

impl CurveQ {
    pub fn new(ainvs: [i64; 5]) -> Result<Self, CurveError> {
        Self::from_big(None, ainvs.map(BigInt::from))
    }

    pub fn with_label(label: &str, ainvs: [i64; 5]) -> Result<Self, CurveError> {
        Self::from_big(Some(label.to_string()), ainvs.map(BigInt::from))
    }

    pub fn from_big(label: Option<String>, ainvs: [BigInt; 5]) -> Result<Self, CurveError> {
        if invariants_of(&ainvs).disc.is_zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(CurveQ { label, ainvs })
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn ainvs(&self) -> &[BigInt; 5] {
        &self.ainvs
    }

    /// Coefficients as machine integers, if they fit.
    pub fn ainvs_i64(&self) -> Option<[i64; 5]> {
        let v: Option<Vec<i64>> = self.ainvs.iter().map(ToPrimitive::to_i64).collect();
        v.map(|v| [v[0], v[1], v[2], v[3], v[4]])
    }

    pub fn invariants(&self) -> Invariants {
        invariants_of(&self.ainvs)
    }

    pub fn discriminant(&self) -> BigInt {
        self.invariants().disc
    }

    /// Primes dividing the discriminant.
    pub fn bad_primes(&self) -> Vec<u64> {
        prime_divisors_big(&self.discriminant())
    }

    /// Globally minimal model with `a1, a3 in {0,1}` and `a2 in {-1,0,1}`.
    pub fn minimal_model(&self) -> CurveQ {
        let inv = self.invariants();
        let mut u = BigInt::one();
        for p in prime_divisors_big(&inv.disc) {
            let pb = BigInt::from(p);
            let mut e = 0u32;
            while local_scaling_possible(&inv.c4, &inv.c6, p, e + 1) {
                e += 1;
            }
            while e > 0 {
                let q = pb.pow(e);
                let c4 = &inv.c4 / q.pow(4);
                let c6 = &inv.c6 / q.pow(6);
                if p > 3 || kraus_condition(&c4, &c6, p) {
                    break;
                }
                e -= 1;
            }
            u *= pb.pow(e);
        }
        let c4 = &inv.c4 / u.pow(4);
        let c6 = &inv.c6 / u.pow(6);
        let ainvs = model_from_c4_c6(&c4, &c6).expect("Kraus conditions hold after scaling");
        CurveQ { label: self.label.clone(), ainvs }
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal_model().discriminant().abs() == self.discriminant().abs()
    }

    /// Local reduction data at `ell` (Tate's algorithm).
    pub fn tate_local(&self, ell: u64) -> Result<ReductionData, CurveError> {
        if !is_prime(ell) {
            return Err(CurveError::NotPrime(ell));
        }
        tate::tate(self, ell)
    }

    /// Conductor as a product of local exponents.
    pub fn conductor(&self) -> u64 {
        self.bad_primes()
            .into_iter()
            .map(|p| {
                let d = self.tate_local(p).expect("minimal model required for the conductor");
                p.pow(d.conductor_exponent)
            })
            .product()
    }

    /// `a_ell = ell + 1 - #E(F_ell)` at a prime of good reduction.
    pub fn ap_count(&self, ell: u64) -> Result<i64, CurveError> {
        if !is_prime(ell) {
            return Err(CurveError::NotPrime(ell));
        }
        if self.discriminant().is_multiple_of(&BigInt::from(ell)) {
            return Err(CurveError::BadReduction(ell));
        }
        Ok(ell as i64 + 1 - points::count_points(self, ell) as i64)
    }

    /// Trace of Frobenius at any prime: point count when good, `+1`/`-1`/`0` when bad.
    pub fn ap(&self, ell: u64) -> Result<i64, CurveError> {
        match self.ap_count(ell) {
            Err(CurveError::BadReduction(_)) => Ok(self.tate_local(ell)?.ap),
            other => other,
        }
    }

    /// Order of the rational torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        points::torsion_points(self).len() as u64 + 1
    }

    /// Real periods with absolute error below `10^-digits`.
    pub fn real_period(&self, digits: u32) -> Result<RealPeriods, CurveError> {
        period::real_periods(self, digits)
    }
}

/// Kraus's criterion at 2 or 3 for `(c4, c6)` to come from an integral model.
fn kraus_condition(c4: &BigInt, c6: &BigInt, p: u64) -> bool {
    if p == 3 {
        return crate::arith::nt::valuation(c6, 3) != Some(2);
    }
    let c6m4 = c6.mod_floor(&BigInt::from(4));
    if c6m4 == BigInt::from(3) {
        return true;
    }
    let v2c4 = crate::arith::nt::valuation(c4, 2).unwrap_or(u32::MAX);
    let c6m32 = c6.mod_floor(&BigInt::from(32));
    v2c4 >= 4 && (c6m32.is_zero() || c6m32 == BigInt::from(8))
}

fn local_scaling_possible(c4: &BigInt, c6: &BigInt, p: u64, e: u32) -> bool {
    let q = BigInt::from(p).pow(e);
    c4.is_multiple_of(&q.pow(4)) && c6.is_multiple_of(&q.pow(6))
}

/// Integral reduced model with given `c4, c6` (valid when Kraus's conditions hold).
fn model_from_c4_c6(c4: &BigInt, c6: &BigInt) -> Option<[BigInt; 5]> {
    let twelve = BigInt::from(12);
    let mut b2 = (-c6).mod_floor(&twelve);
    if b2 > BigInt::from(6) {
        b2 -= &twelve;
    }
    let a1 = b2.mod_floor(&BigInt::from(2));
    let a2: BigInt = (&b2 - &a1) / 4;
    let b4_num = &b2 * &b2 - c4;
    if !b4_num.is_multiple_of(&BigInt::from(24)) {
        return None;
    }
    let b4: BigInt = b4_num / 24;
    let b6_num: BigInt = BigInt::from(36) * &b2 * &b4 - &b2 * &b2 * &b2 - c6;
    if !b6_num.is_multiple_of(&BigInt::from(216)) {
        return None;
    }
    let b6: BigInt = b6_num / 216;
    let a3 = b6.mod_floor(&BigInt::from(2));
    let a4: BigInt = (&b4 - &a1 * &a3) / 2;
    let a6: BigInt = (&b6 - &a3) / 4;
    let out = [a1, a2, a3, a4, a6];
    let inv = invariants_of(&out);
    (inv.c4 == *c4 && inv.c6 == *c6).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> CurveQ {
        CurveQ::new(a).unwrap()
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(CurveQ::new([0, 0, 0, 0, 0]), Err(CurveError::SingularCurve));
        assert_eq!(CurveQ::new([0, 0, 0, -3, 2]), Err(CurveError::SingularCurve));
    }

    #[test]
    fn invariants_11a1() {
        let e = curve([0, -1, 1, -10, -20]);
        assert_eq!(e.discriminant(), BigInt::from(-161051));
        assert_eq!(e.invariants().c4, BigInt::from(496));
        assert_eq!(e.invariants().c6, BigInt::from(20008));
    }

    #[test]
    fn minimal_models() {
        let e37 = curve([0, 0, 1, -1, 0]);
        assert_eq!(e37.minimal_model(), e37);
        let scaled = curve([0, 0, 0, -16, 0]);
        assert_eq!(scaled.minimal_model().ainvs_i64(), Some([0, 0, 0, -1, 0]));
        let scaled = curve([0, 0, 0, 0, 64]);
        assert_eq!(scaled.minimal_model().ainvs_i64(), Some([0, 0, 0, 0, 1]));
        // u = 6 scaling of 37a1: x -> 36x, y -> 216y after completing squares
        let e = curve([0, 0, 0, -27 * 48, -54 * -216]);
        let m = e.minimal_model();
        assert_eq!(m.invariants().c4, e37.invariants().c4);
        assert_eq!(m.invariants().c6, e37.invariants().c6);
        assert_eq!(m.ainvs_i64(), Some([0, 0, 1, -1, 0]));
    }

    #[test]
    fn minimal_model_idempotent_and_divides() {
        for a in [[1, 0, 1, 4, -6], [0, 1, 1, 0, 0], [0, 0, 0, -432, 8208], [1, -1, 1, -1, 0]] {
            let e = curve(a);
            let m = e.minimal_model();
            assert_eq!(m.minimal_model(), m);
            assert!(e.discriminant().is_multiple_of(&m.discriminant()));
        }
    }
}
