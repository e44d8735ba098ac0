//! Tate's algorithm for the local reduction type at a prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{invariants_of, CurveError, CurveQ};

/// Largest prime for which residue roots are found by exhaustive search.
const SEARCH_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

/// Local data at a prime of a minimal model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData {
    pub prime: u64,
    pub kind: ReductionKind,
    pub kodaira: Kodaira,
    pub disc_valuation: u32,
    pub conductor_exponent: u32,
    /// Tamagawa number over `Q_ell`.
    pub tamagawa: u64,
    /// `+1`, `-1` or `0` for bad reduction.
    pub ap: i64,
    /// For IV, IV* and I_n*: whether the auxiliary quadratic splits over `F_ell`.
    split_quadratic: bool,
    /// For I0*: number of roots of the auxiliary cubic over `F_ell`.
    cubic_roots: u8,
}

impl ReductionData {
    /// Tamagawa number over the unramified extension of `Q_ell` of degree `f`.
    pub fn tamagawa_unramified(&self, f: u64) -> u64 {
        let even = f.is_multiple_of(2);
        match (self.kodaira, self.kind) {
            (Kodaira::I0, _) => 1,
            (Kodaira::In(n), ReductionKind::SplitMultiplicative) => n as u64,
            (Kodaira::In(n), _) => {
                if even {
                    n as u64
                } else if n % 2 == 0 {
                    2
                } else {
                    1
                }
            }
            (Kodaira::II | Kodaira::IIStar, _) => 1,
            (Kodaira::III | Kodaira::IIIStar, _) => 2,
            (Kodaira::IV | Kodaira::IVStar, _) => {
                if self.split_quadratic || even {
                    3
                } else {
                    1
                }
            }
            (Kodaira::InStar(_), _) => {
                if self.split_quadratic || even {
                    4
                } else {
                    2
                }
            }
            (Kodaira::I0Star, _) => {
                let roots = match self.cubic_roots {
                    3 => 3,
                    1 if even => 3,
                    0 if f.is_multiple_of(3) => 3,
                    r => r as u64,
                };
                1 + roots
            }
        }
    }
}

fn val(x: &BigInt, p: &BigInt) -> u32 {
    if x.is_zero() {
        return u32::MAX / 2;
    }
    let mut x = x.clone();
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Roots in `F_p` of the polynomial with integer coefficients `coeffs` (low to high).
fn residue_roots(coeffs: &[BigInt], p: u64) -> Result<Vec<u64>, CurveError> {
    if p > SEARCH_LIMIT {
        return Err(CurveError::PrimeTooLarge(p));
    }
    let pb = BigInt::from(p);
    let reduced: Vec<u128> = coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue") as u128).collect();
    let m = p as u128;
    Ok((0..p)
        .filter(|&x| {
            let x = x as u128;
            reduced.iter().rev().fold(0u128, |acc, &c| (acc * x + c) % m) == 0
        })
        .collect())
}

fn has_residue_root(coeffs: &[BigInt], p: u64) -> Result<bool, CurveError> {
    Ok(!residue_roots(coeffs, p)?.is_empty())
}

/// Applies `x -> x + r`, `y -> y + s x + t`.
fn transform(a: &mut [BigInt; 5], r: &BigInt, s: &BigInt, t: &BigInt) {
    let [a1, a2, a3, a4, a6] = a.clone();
    let rs = r * s;
    a[0] = &a1 + 2 * s;
    a[1] = &a2 - s * &a1 + 3 * r - s * s;
    a[2] = &a3 + r * &a1 + 2 * t;
    a[3] = &a4 - s * &a3 + 2 * r * &a2 - (t + &rs) * &a1 + 3 * r * r - 2 * s * t;
    a[4] = &a6 + r * &a4 + r * r * &a2 + r * r * r - t * &a3 - t * t - r * t * &a1;
}

pub(super) fn tate(curve: &CurveQ, ell: u64) -> Result<ReductionData, CurveError> {
    let p = BigInt::from(ell);
    let zero = BigInt::zero();
    let mut a = curve.ainvs().clone();
    let inv = invariants_of(&a);
    let n = val(&inv.disc, &p);
    let mut data = ReductionData {
        prime: ell,
        kind: ReductionKind::Additive,
        kodaira: Kodaira::I0,
        disc_valuation: n,
        conductor_exponent: 0,
        tamagawa: 1,
        ap: 0,
        split_quadratic: false,
        cubic_roots: 0,
    };
    if n == 0 {
        data.kind = ReductionKind::Good;
        return Ok(data);
    }

    // Move the singular point of the reduction to (0, 0).
    let sing = singular_point(&a, ell)?;
    transform(&mut a, &BigInt::from(sing.0), &zero, &BigInt::from(sing.1));
    let inv = invariants_of(&a);

    if val(&inv.c4, &p) == 0 {
        let tangent = [-a[1].clone(), a[0].clone(), BigInt::from(1)];
        let split = has_residue_root(&tangent, ell)?;
        data.kodaira = Kodaira::In(n);
        data.conductor_exponent = 1;
        if split {
            data.kind = ReductionKind::SplitMultiplicative;
            data.tamagawa = n as u64;
            data.ap = 1;
        } else {
            data.kind = ReductionKind::NonsplitMultiplicative;
            data.tamagawa = if n.is_multiple_of(2) { 2 } else { 1 };
            data.ap = -1;
        }
        return Ok(data);
    }

    if val(&a[4], &p) < 2 {
        data.kodaira = Kodaira::II;
        data.conductor_exponent = n;
        return Ok(data);
    }
    if val(&inv.b8, &p) < 3 {
        data.kodaira = Kodaira::III;
        data.conductor_exponent = n - 1;
        data.tamagawa = 2;
        return Ok(data);
    }
    if val(&inv.b6, &p) < 3 {
        let quad = [-(&a[4] / (&p * &p)), &a[2] / &p, BigInt::from(1)];
        data.split_quadratic = has_residue_root(&quad, ell)?;
        data.kodaira = Kodaira::IV;
        data.conductor_exponent = n - 2;
        data.tamagawa = if data.split_quadratic { 3 } else { 1 };
        return Ok(data);
    }

    // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
    let s = residue_roots(&[-a[1].clone(), a[0].clone(), BigInt::from(1)], ell)?
        .first()
        .copied()
        .expect("tangent cone is a double line");
    let s = BigInt::from(s);
    transform(&mut a, &zero, &s, &zero);
    let p2 = &p * &p;
    let a3p = &a[2] / &p;
    let a6p2 = &a[4] / &p2;
    let t =
        residue_roots(&[-a6p2, a3p, BigInt::from(1)], ell)?.first().copied().expect("quadratic in y has a double root");
    transform(&mut a, &zero, &zero, &(&p * BigInt::from(t)));
    debug_assert!(val(&a[0], &p) >= 1 && val(&a[1], &p) >= 1);
    debug_assert!(val(&a[2], &p) >= 2 && val(&a[3], &p) >= 2 && val(&a[4], &p) >= 3);

    let p3 = &p2 * &p;
    let b = &a[1] / &p;
    let c = &a[3] / &p2;
    let d = &a[4] / &p3;
    let cubic = [d.clone(), c.clone(), b.clone(), BigInt::from(1)];
    let w = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d + 4 * &c * &c * &c;
    let x = 3 * &c - &b * &b;

    if val(&w, &p) == 0 {
        let roots = residue_roots(&cubic, ell)?.len() as u8;
        data.kodaira = Kodaira::I0Star;
        data.conductor_exponent = n - 4;
        data.cubic_roots = roots;
        data.tamagawa = 1 + roots as u64;
        return Ok(data);
    }

    if val(&x, &p) == 0 {
        // Double root: translate it to zero.
        let deriv = [c.clone(), 2 * &b, BigInt::from(3)];
        let double = residue_roots(&cubic, ell)?
            .into_iter()
            .find(|&r| residue_roots(&deriv, ell).map(|d| d.contains(&r)).unwrap_or(false))
            .expect("cubic has a double root");
        transform(&mut a, &(&p * BigInt::from(double)), &zero, &zero);
        let mut m = 1u32;
        let mut mx = p2.clone();
        let mut my = p2.clone();
        loop {
            let xa3 = &a[2] / &my;
            let xa6 = &a[4] / (&mx * &my);
            if val(&(&xa3 * &xa3 + 4 * &xa6), &p) == 0 {
                data.split_quadratic = has_residue_root(&[-xa6, xa3, BigInt::from(1)], ell)?;
                break;
            }
            let t = residue_roots(&[-xa6, xa3, BigInt::from(1)], ell)?[0];
            transform(&mut a, &zero, &zero, &(&my * BigInt::from(t)));
            my *= &p;
            m += 1;
            let xa2 = &a[1] / &p;
            let xa4 = &a[3] / (&p * &mx);
            let xa6 = &a[4] / (&mx * &my);
            if val(&(&xa4 * &xa4 - 4 * &xa2 * &xa6), &p) == 0 {
                data.split_quadratic = has_residue_root(&[xa6, xa4, xa2], ell)?;
                break;
            }
            let r = residue_roots(&[xa6, xa4, xa2], ell)?[0];
            transform(&mut a, &(&mx * BigInt::from(r)), &zero, &zero);
            mx *= &p;
            m += 1;
        }
        data.kodaira = Kodaira::InStar(m);
        data.conductor_exponent = n - m - 4;
        data.tamagawa = if data.split_quadratic { 4 } else { 2 };
        return Ok(data);
    }

    // Triple root: translate it to zero.
    let triple = residue_roots(&cubic, ell)?[0];
    transform(&mut a, &(&p * BigInt::from(triple)), &zero, &zero);
    let p4 = &p2 * &p2;
    let x3 = &a[2] / &p2;
    let x6 = &a[4] / &p4;
    if val(&(&x3 * &x3 + 4 * &x6), &p) == 0 {
        data.split_quadratic = has_residue_root(&[-x6, x3, BigInt::from(1)], ell)?;
        data.kodaira = Kodaira::IVStar;
        data.conductor_exponent = n - 6;
        data.tamagawa = if data.split_quadratic { 3 } else { 1 };
        return Ok(data);
    }
    let t = residue_roots(&[-x6, x3, BigInt::from(1)], ell)?[0];
    transform(&mut a, &zero, &zero, &(&p2 * BigInt::from(t)));
    if val(&a[3], &p) < 4 {
        data.kodaira = Kodaira::IIIStar;
        data.conductor_exponent = n - 7;
        data.tamagawa = 2;
        return Ok(data);
    }
    if val(&a[4], &p) < 6 {
        data.kodaira = Kodaira::IIStar;
        data.conductor_exponent = n - 8;
        return Ok(data);
    }
    Err(CurveError::NotMinimalAtPrime(ell))
}

/// A singular point of the reduction mod `p`, as integer representatives.
fn singular_point(a: &[BigInt; 5], p: u64) -> Result<(u64, u64), CurveError> {
    if p > SEARCH_LIMIT {
        return Err(CurveError::PrimeTooLarge(p));
    }
    let pb = BigInt::from(p);
    let r: Vec<u128> = a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue") as u128).collect();
    let m = p as u128;
    let (a1, a2, a3, a4, a6) = (r[0], r[1], r[2], r[3], r[4]);
    // Partial derivatives vanish: 2y + a1 x + a3 = 0 and a1 y = 3x^2 + 2 a2 x + a4.
    for x in 0..m {
        let rhs = (x * x % m * x + a2 * x % m * x + a4 * x + a6) % m;
        let dx = (3 * x % m * x + 2 * a2 * x + a4) % m;
        for y in candidate_ys(x, a1, a3, m) {
            let lhs = (y * y + a1 * x % m * y + a3 * y) % m;
            let dy = (2 * y + a1 * x + a3) % m;
            if lhs == rhs && dy == 0 && (a1 * y) % m == dx {
                return Ok((x as u64, y as u64));
            }
        }
    }
    unreachable!("bad reduction has a singular point")
}

fn candidate_ys(x: u128, a1: u128, a3: u128, m: u128) -> Vec<u128> {
    if m == 2 {
        return vec![0, 1];
    }
    // y = -(a1 x + a3) / 2
    let inv2 = m.div_ceil(2);
    vec![(m - (a1 * x + a3) % m) % m * inv2 % m]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local(a: [i64; 5], p: u64) -> ReductionData {
        CurveQ::new(a).unwrap().tate_local(p).unwrap()
    }

    #[test]
    fn multiplicative_examples() {
        let d = local([0, -1, 1, -10, -20], 11);
        assert_eq!((d.kodaira, d.kind, d.tamagawa), (Kodaira::In(5), ReductionKind::SplitMultiplicative, 5));
        // root number -1 with prime conductor forces a_37 = -1
        let d = local([0, 0, 1, -1, 0], 37);
        assert_eq!((d.kodaira, d.kind, d.tamagawa), (Kodaira::In(1), ReductionKind::NonsplitMultiplicative, 1));
        let d = local([1, 0, 1, 4, -6], 2);
        assert_eq!((d.kodaira, d.kind, d.tamagawa), (Kodaira::In(6), ReductionKind::NonsplitMultiplicative, 2));
        assert_eq!(d.tamagawa_unramified(2), 6);
        assert_eq!(d.tamagawa_unramified(3), 2);
        let d = local([1, 0, 1, 4, -6], 7);
        assert_eq!((d.kodaira, d.kind, d.tamagawa), (Kodaira::In(3), ReductionKind::SplitMultiplicative, 3));
    }

    #[test]
    fn additive_examples() {
        // y^2 = x^3 + 1 has conductor 36 and y^2 = x^3 - x has conductor 32.
        assert_eq!(local([0, 0, 0, 0, 1], 2).conductor_exponent, 2);
        assert_eq!(local([0, 0, 0, 0, 1], 3).conductor_exponent, 2);
        assert_eq!(local([0, 0, 0, -1, 0], 2).conductor_exponent, 5);
        // y^2 = x^3 - 25 x: I0* at 5 with c = 4 (roots 0, 1, -1).
        let d = local([0, 0, 0, -25, 0], 5);
        assert_eq!((d.kodaira, d.tamagawa, d.conductor_exponent), (Kodaira::I0Star, 4, 2));
        // y^2 = x^3 + 5^4: IV* at 5.
        let d = local([0, 0, 0, 0, 625], 5);
        assert_eq!((d.kodaira, d.conductor_exponent), (Kodaira::IVStar, 2));
        // y^2 = x^3 + 5^5: II* at 5.
        let d = local([0, 0, 0, 0, 3125], 5);
        assert_eq!((d.kodaira, d.conductor_exponent), (Kodaira::IIStar, 2));
        // y^2 = x^3 + 5^3 x: III* at 5.
        let d = local([0, 0, 0, 125, 0], 5);
        assert_eq!((d.kodaira, d.conductor_exponent), (Kodaira::IIIStar, 2));
        // y^2 = x^3 + 5 x^2 + 5^3 x: v(Delta) = 8 and the cubic T^3 + T^2 has a double root.
        let d = local([0, 5, 0, 125, 0], 5);
        assert_eq!((d.kodaira, d.conductor_exponent), (Kodaira::InStar(2), 2));
    }

    #[test]
    fn non_minimal_detected() {
        let e = CurveQ::new([0, 0, 0, 0, 5i64.pow(6)]).unwrap();
        assert_eq!(e.tate_local(5), Err(CurveError::NotMinimalAtPrime(5)));
    }

    #[test]
    fn conductors() {
        assert_eq!(CurveQ::new([0, -1, 1, -10, -20]).unwrap().conductor(), 11);
        assert_eq!(CurveQ::new([0, 0, 1, -1, 0]).unwrap().conductor(), 37);
        assert_eq!(CurveQ::new([1, 0, 1, 4, -6]).unwrap().conductor(), 14);
        assert_eq!(CurveQ::new([0, 0, 0, 0, 1]).unwrap().conductor(), 36);
        assert_eq!(CurveQ::new([0, 0, 0, -1, 0]).unwrap().conductor(), 32);
        assert_eq!(CurveQ::new([1, 1, 1, -10, -10]).unwrap().conductor(), 15);
        assert_eq!(CurveQ::new([0, 1, 1, 0, 0]).unwrap().conductor(), 43);
    }
}
