//! Point counts over finite fields and rational torsion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::period::real_roots_monic_cubic;
use super::{CurveError, CurveQ};
use crate::arith::nt::factor_big;
use crate::arith::Rational;

/// `#E(F_p)` for a prime of good reduction, including the point at infinity.
pub(super) fn count_points(curve: &CurveQ, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let red = |c: &BigInt| c.mod_floor(&pb).to_u64().expect("residue") as u128;
    let m = p as u128;
    if p == 2 {
        let a: Vec<u128> = curve.ainvs().iter().map(red).collect();
        let mut n = 1;
        for x in 0..2u128 {
            for y in 0..2u128 {
                let lhs = y * y + a[0] * x * y + a[2] * y;
                let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                if lhs % m == rhs % m {
                    n += 1;
                }
            }
        }
        return n;
    }
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    let inv = curve.invariants();
    let (b2, b4, b6) = (red(&inv.b2), red(&inv.b4), red(&inv.b6));
    let mut symbol = vec![-1i8; p as usize];
    symbol[0] = 0;
    for x in 1..=p / 2 {
        symbol[(x * x % p) as usize] = 1;
    }
    let mut n: i64 = 1;
    for x in 0..m {
        let g = (((4 * x % m + b2) % m * x % m + 2 * b4) % m * x % m + b6) % m;
        n += 1 + symbol[g as usize] as i64;
    }
    n as u64
}

/// `#E(F_{p^f})` at a prime of good reduction.
pub fn points_over_extension(curve: &CurveQ, p: u64, f: u32) -> Result<BigInt, CurveError> {
    let a = BigInt::from(curve.ap_count(p)?);
    let pb = BigInt::from(p);
    // s_k = alpha^k + beta^k satisfies s_k = a s_{k-1} - p s_{k-2}
    let (mut prev, mut cur) = (BigInt::from(2), a.clone());
    for _ in 1..f {
        let next = &a * &cur - &pb * &prev;
        prev = cur;
        cur = next;
    }
    let trace = if f == 0 { BigInt::from(2) } else { cur };
    Ok(pb.pow(f) + 1 - trace)
}

type Affine = (Rational, Rational);

/// Short model `Y^2 = X^3 + A X + B` used for torsion.
struct ShortModel {
    a: Rational,
}

impl ShortModel {
    fn add(&self, p: &Option<Affine>, q: &Option<Affine>) -> Option<Affine> {
        let (p, q) = match (p, q) {
            (None, _) => return q.clone(),
            (_, None) => return p.clone(),
            (Some(p), Some(q)) => (p, q),
        };
        let slope = if p.0 == q.0 {
            if (&p.1 + &q.1).is_zero() {
                return None;
            }
            (Rational::from_integer(3.into()) * &p.0 * &p.0 + &self.a) / (Rational::from_integer(2.into()) * &p.1)
        } else {
            (&q.1 - &p.1) / (&q.0 - &p.0)
        };
        let x = &slope * &slope - &p.0 - &q.0;
        let y = &slope * (&p.0 - &x) - &p.1;
        Some((x, y))
    }
}

/// Rational torsion points other than the identity, on the given model.
pub fn torsion_points(curve: &CurveQ) -> Vec<(Rational, Rational)> {
    let inv = curve.invariants();
    let a = BigInt::from(-27) * &inv.c4;
    let b = BigInt::from(-54) * &inv.c6;
    let model = ShortModel { a: Rational::from_integer(a.clone()) };
    let disc = (BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b).abs();

    let mut ys = vec![BigInt::one()];
    for (prime, e) in factor_big(&disc) {
        let prime = BigInt::from(prime);
        let mut next = Vec::new();
        for y in &ys {
            let mut pk = BigInt::one();
            for _ in 0..=e / 2 {
                next.push(y * &pk);
                pk *= &prime;
            }
        }
        ys = next;
    }
    ys.push(BigInt::zero());

    let mut found = Vec::new();
    for y in ys {
        let c0 = &b - &y * &y;
        for x in integer_roots(&a, &c0) {
            let signs: &[i32] = if y.is_zero() { &[1] } else { &[1, -1] };
            for &s in signs {
                let pt = (Rational::from_integer(x.clone()), Rational::from_integer(&y * s));
                if is_torsion(&model, &pt) {
                    found.push(pt);
                }
            }
        }
    }
    // Back to the original model: X = 36x + 3 b2, Y = 108 (2y + a1 x + a3).
    let [a1, _, a3, _, _] = curve.ainvs().clone().map(Rational::from_integer);
    let b2 = Rational::from_integer(inv.b2.clone());
    found
        .into_iter()
        .map(|(xx, yy)| {
            let x = (xx - Rational::from_integer(3.into()) * &b2) / Rational::from_integer(36.into());
            let y = (yy / Rational::from_integer(108.into()) - &a1 * &x - &a3) / Rational::from_integer(2.into());
            (x, y)
        })
        .collect()
}

/// Integer roots of `X^3 + a X + c`.
fn integer_roots(a: &BigInt, c: &BigInt) -> Vec<BigInt> {
    let af = a.to_f64().unwrap_or(f64::MAX);
    let cf = c.to_f64().unwrap_or(f64::MAX);
    let mut guesses = real_roots_monic_cubic(0.0, af, cf);
    if af < 0.0 {
        let crit = (-af / 3.0).sqrt();
        guesses.extend([crit, -crit]);
    }
    let mut out: Vec<BigInt> = Vec::new();
    for g in guesses {
        let center = BigInt::from(g.round() as i128);
        for d in -2i32..=2 {
            let x = &center + d;
            if (&x * &x * &x + a * &x + c).is_zero() && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn is_torsion(model: &ShortModel, p: &Affine) -> bool {
    let start = Some(p.clone());
    let mut cur = start.clone();
    for _ in 1..=12 {
        match &cur {
            None => return true,
            Some((x, y)) => {
                if !x.is_integer() || !y.is_integer() {
                    return false;
                }
            }
        }
        cur = model.add(&cur, &start);
    }
    cur.is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> CurveQ {
        CurveQ::new(a).unwrap()
    }

    fn brute_count(a: [i64; 5], p: i64) -> i64 {
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                let lhs = y * y + a[0] * x * y + a[2] * y;
                let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                if (lhs - rhs).rem_euclid(p) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn traces_of_frobenius() {
        let e37 = curve([0, 0, 1, -1, 0]);
        assert_eq!(e37.ap(2), Ok(-2));
        assert_eq!(e37.ap(3), Ok(-3));
        assert_eq!(e37.ap(5), Ok(-2));
        assert_eq!(e37.ap(37), Ok(-1));
        let e11 = curve([0, -1, 1, -10, -20]);
        assert_eq!(e11.ap(2), Ok(-2));
        assert_eq!(e11.ap(3), Ok(-1));
        assert_eq!(e11.ap(7), Ok(-2));
        assert_eq!(e11.ap(11), Ok(1));
        assert_eq!(e11.ap_count(11), Err(CurveError::BadReduction(11)));
    }

    #[test]
    fn counts_match_brute_force() {
        for a in [[0, -1, 1, -10, -20], [1, 0, 1, 4, -6], [0, 1, 1, 0, 0], [1, -1, 1, -1, 0]] {
            let e = curve(a);
            for p in [3u64, 5, 11, 13, 17, 19, 23] {
                if e.discriminant().is_multiple_of(&BigInt::from(p)) {
                    continue;
                }
                assert_eq!(count_points(&e, p) as i64, brute_count(a, p as i64), "{a:?} at {p}");
            }
        }
    }

    #[test]
    fn extension_counts() {
        let e11 = curve([0, -1, 1, -10, -20]);
        // #E(F_7) = 10; over F_49: 49 + 1 - (a^2 - 2*7) with a = -2
        assert_eq!(points_over_extension(&e11, 7, 1).unwrap(), BigInt::from(10));
        assert_eq!(points_over_extension(&e11, 7, 2).unwrap(), BigInt::from(60));
    }

    #[test]
    fn torsion_orders() {
        assert_eq!(curve([0, 0, 1, -1, 0]).torsion_order(), 1);
        assert_eq!(curve([0, -1, 1, -10, -20]).torsion_order(), 5);
        assert_eq!(curve([0, 0, 0, 0, 1]).torsion_order(), 6);
        assert_eq!(curve([1, 0, 1, 4, -6]).torsion_order(), 6);
        assert_eq!(curve([0, 0, 0, -1, 0]).torsion_order(), 4);
        assert_eq!(curve([1, 1, 1, -10, -10]).torsion_order(), 8);
        assert_eq!(curve([0, 1, 1, 0, 0]).torsion_order(), 1);
    }

    #[test]
    fn torsion_points_lie_on_curve() {
        let e = curve([1, 0, 1, 4, -6]);
        let [a1, a2, a3, a4, a6] = e.ainvs().clone().map(Rational::from_integer);
        for (x, y) in torsion_points(&e) {
            let lhs = &y * &y + &a1 * &x * &y + &a3 * &y;
            let rhs = &x * &x * &x + &a2 * &x * &x + &a4 * &x + &a6;
            assert_eq!(lhs, rhs);
        }
    }
}
