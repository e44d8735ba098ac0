//! Unramified extensions `Q_{p^f}` at capped relative precision.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::PadicError;
use crate::arith::nt::{factor, is_prime, valuation};
use crate::arith::Rational;

/// Largest `p^cap` allowed, so products of residues fit in `u128`.
const MAX_MODULUS: u128 = 1 << 62;

fn pow_u128(p: u64, k: u32) -> u128 {
    (p as u128).pow(k)
}

/// Polynomial arithmetic over `F_p`, coefficients lowest degree first.
pub(super) mod fp {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        crate::arith::nt::pow_mod(a, p - 2, p)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let lead = inv(*m.last().expect("nonzero modulus"), p);
        while a.len() >= m.len() {
            let shift = a.len() - m.len();
            let q = a.last().copied().unwrap_or(0) * lead % p;
            for (i, &c) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - q * c % p) % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_mod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        rem(&acc, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect();
        trim(out)
    }
}

fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let f = modulus.len() - 1;
    let x = vec![0, 1];
    let frob_power = |k: usize| fp::pow_mod(&x, (p as u128).pow(k as u32), modulus, p);
    if fp::sub(&frob_power(f), &x, p) != Vec::<u64>::new() {
        return false;
    }
    factor(f as u64).into_iter().all(|(q, _)| {
        let g = fp::gcd(modulus, &fp::sub(&frob_power(f / q as usize), &x, p), p);
        g.len() == 1
    })
}

/// `Z_p[X]/(m)` for a monic `m` irreducible mod `p`, with residues kept mod `p^cap`.
#[derive(Debug)]
pub struct UnramExt {
    p: u64,
    degree: usize,
    cap: u32,
    /// Monic modulus, lowest degree first, including the leading one.
    modulus: Vec<u64>,
    /// Image of the generator under Frobenius, mod `p^cap`.
    frobenius: Vec<u64>,
}

impl UnramExt {
    /// The degree-`degree` unramified extension, with the lexicographically
    /// first monic modulus irreducible mod `p`.
    pub fn new(p: u64, degree: usize, cap: u32) -> Result<Arc<Self>, PadicError> {
        if p == 2 || !is_prime(p) {
            return Err(PadicError::NotOddPrime(p));
        }
        if degree == 0
            || cap == 0
            || pow_u128(p, cap) >= MAX_MODULUS
            || (p as u128).checked_pow(degree as u32).is_none_or(|q| q >= MAX_MODULUS)
        {
            return Err(PadicError::PrecisionTooLarge { p, cap });
        }
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            let count = (p as u128).pow(degree as u32);
            (0..count)
                .map(|mut k| {
                    let mut m: Vec<u64> = (0..degree)
                        .map(|_| {
                            let d = (k % p as u128) as u64;
                            k /= p as u128;
                            d
                        })
                        .collect();
                    m.push(1);
                    m
                })
                .find(|m| m[0] != 0 && is_irreducible(m, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let bare = Arc::new(UnramExt { p, degree, cap, modulus, frobenius: Vec::new() });
        let frobenius = bare.lift_frobenius();
        Ok(Arc::new(UnramExt { frobenius, ..Arc::try_unwrap(bare).expect("unique") }))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Maximal relative precision.
    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Order of the residue field.
    pub fn residue_size(&self) -> u128 {
        (self.p as u128).pow(self.degree as u32)
    }

    /// Hensel lift of the root of the modulus congruent to `X^p`.
    fn lift_frobenius(self: &Arc<Self>) -> Vec<u64> {
        if self.degree == 1 {
            return vec![1];
        }
        let x = UnramExtElem::generator(self);
        let mut beta = x.pow(self.p);
        for _ in 0..(32 - self.cap.leading_zeros() + 2) {
            let value = self.eval_modulus(&beta);
            let deriv = self.eval_modulus_derivative(&beta);
            beta = beta.sub(&value.div(&deriv).expect("separable modulus"));
        }
        beta.unit_coords_at(0)
    }

    fn eval_modulus(self: &Arc<Self>, z: &UnramExtElem) -> UnramExtElem {
        self.modulus
            .iter()
            .rev()
            .fold(UnramExtElem::zero_exact(self), |acc, &c| acc.mul(z).add(&UnramExtElem::from_u64(self, c)))
    }

    fn eval_modulus_derivative(self: &Arc<Self>, z: &UnramExtElem) -> UnramExtElem {
        self.modulus.iter().enumerate().skip(1).rev().fold(UnramExtElem::zero_exact(self), |acc, (i, &c)| {
            acc.mul(z).add(&UnramExtElem::from_u64(self, c * i as u64))
        })
    }

    /// Reduces a polynomial of degree `< 2f - 1` modulo the modulus and `m`.
    fn reduce(&self, mut v: Vec<u128>, m: u128) -> Vec<u64> {
        let f = self.degree;
        for i in (f..v.len()).rev() {
            let q = v[i] % m;
            if q == 0 {
                continue;
            }
            v[i] = 0;
            for (j, &c) in self.modulus[..f].iter().enumerate() {
                let sub = q * c as u128 % m;
                v[i - f + j] = (v[i - f + j] + m - sub) % m;
            }
        }
        v.truncate(f);
        v.resize(f, 0);
        v.into_iter().map(|x| (x % m) as u64).collect()
    }

    fn mul_coords(&self, a: &[u64], b: &[u64], m: u128) -> Vec<u64> {
        let f = self.degree;
        let mut out = vec![0u128; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128 % m) % m;
            }
        }
        self.reduce(out, m)
    }

    /// Inverse modulo `p` of a residue vector that is a unit.
    fn inverse_mod_p(&self, a: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let f = self.degree;
        // columns: a * X^j
        let mut cols = Vec::with_capacity(f);
        let mut basis = vec![0u64; f];
        basis[0] = 1;
        for _ in 0..f {
            cols.push(self.mul_coords(a, &basis, p as u128));
            let mut next = vec![0u128; 2 * f];
            for (i, &c) in basis.iter().enumerate() {
                next[i + 1] = c as u128;
            }
            basis = self.reduce(next, p as u128);
        }
        // solve M y = e_0 over F_p
        let mut rows: Vec<Vec<u64>> = (0..f)
            .map(|i| {
                let mut row: Vec<u64> = cols.iter().map(|c| c[i]).collect();
                row.push(u64::from(i == 0));
                row
            })
            .collect();
        for col in 0..f {
            let pivot = (col..f).find(|&r| rows[r][col] != 0)?;
            rows.swap(col, pivot);
            let inv = fp::inv(rows[col][col], p);
            for x in rows[col].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && row[col] != 0 {
                    let factor = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - factor * y % p) % p;
                    }
                }
            }
        }
        Some(rows.into_iter().map(|r| r[f]).collect())
    }
}

/// `p^val * unit` with `unit` known modulo `p^rel`; `rel = 0` means zero modulo `p^val`.
#[derive(Clone)]
pub struct UnramExtElem {
    ctx: Arc<UnramExt>,
    val: i64,
    rel: u32,
    unit: Vec<u64>,
}

impl fmt::Debug for UnramExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rel == 0 {
            write!(f, "O({}^{})", self.ctx.p, self.val)
        } else {
            write!(
                f,
                "{}^{} * {:?} + O({}^{})",
                self.ctx.p,
                self.val,
                self.unit,
                self.ctx.p,
                self.val + self.rel as i64
            )
        }
    }
}

impl UnramExtElem {
    fn build(ctx: &Arc<UnramExt>, val: i64, rel: u32, unit: Vec<u64>) -> Self {
        let mut out = UnramExtElem { ctx: ctx.clone(), val, rel: rel.min(ctx.cap), unit };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let p = self.ctx.p;
        let m = pow_u128(p, self.rel);
        for c in self.unit.iter_mut() {
            *c = (*c as u128 % m) as u64;
        }
        while self.rel > 0 && self.unit.iter().all(|&c| c % p == 0) {
            for c in self.unit.iter_mut() {
                *c /= p;
            }
            self.val += 1;
            self.rel -= 1;
        }
        if self.rel == 0 {
            self.unit.iter_mut().for_each(|c| *c = 0);
        }
    }

    /// Zero known modulo `p^abs`.
    pub fn zero(ctx: &Arc<UnramExt>, abs: i64) -> Self {
        UnramExtElem { ctx: ctx.clone(), val: abs, rel: 0, unit: vec![0; ctx.degree] }
    }

    /// Zero at the largest absolute precision representable for sums with units.
    pub(crate) fn zero_exact(ctx: &Arc<UnramExt>) -> Self {
        Self::zero(ctx, i64::from(ctx.cap) + 1_000_000)
    }

    pub fn from_u64(ctx: &Arc<UnramExt>, n: u64) -> Self {
        Self::from_rational(ctx, &Rational::from_integer(BigInt::from(n)))
    }

    pub fn one(ctx: &Arc<UnramExt>) -> Self {
        Self::from_u64(ctx, 1)
    }

    /// The class of `X`.
    pub fn generator(ctx: &Arc<UnramExt>) -> Self {
        if ctx.degree == 1 {
            // X = 0 in degree one
            return Self::zero_exact(ctx);
        }
        let mut unit = vec![0; ctx.degree];
        unit[1] = 1;
        Self::build(ctx, 0, ctx.cap, unit)
    }

    /// Exact rational at full relative precision.
    pub fn from_rational(ctx: &Arc<UnramExt>, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero_exact(ctx);
        }
        let p = ctx.p;
        let v = valuation(q.numer(), p).unwrap_or(0) as i64 - valuation(q.denom(), p).unwrap_or(0) as i64;
        let m = BigInt::from(pow_u128(p, ctx.cap));
        let pb = BigInt::from(p);
        let (mut num, mut den) = (q.numer().clone(), q.denom().clone());
        while (&num % &pb).is_zero() {
            num /= &pb;
        }
        while (&den % &pb).is_zero() {
            den /= &pb;
        }
        let den_inv = den.modinv(&m).expect("unit denominator");
        let r = ((num * den_inv) % &m + &m) % &m;
        let mut unit = vec![0; ctx.degree];
        unit[0] = r.to_u64().expect("residue fits");
        Self::build(ctx, v, ctx.cap, unit)
    }

    /// Element with given coordinates on `1, X, ..., X^{f-1}`, known mod `p^rel`.
    pub fn from_coords(ctx: &Arc<UnramExt>, coords: &[u64], rel: u32) -> Self {
        let mut unit = coords.to_vec();
        unit.resize(ctx.degree, 0);
        Self::build(ctx, 0, rel, unit)
    }

    /// The same element in another context with the same prime and modulus,
    /// keeping at most that context's relative precision.
    pub fn change_context(&self, ctx: &Arc<UnramExt>) -> Result<Self, PadicError> {
        if ctx.p != self.ctx.p || ctx.modulus != self.ctx.modulus {
            return Err(PadicError::DegreeTooSmall { needed: self.ctx.degree, available: ctx.degree });
        }
        if self.rel == 0 {
            return Ok(Self::zero(ctx, self.val));
        }
        Ok(Self::build(ctx, self.val, self.rel, self.unit.clone()))
    }

    pub fn ctx(&self) -> &Arc<UnramExt> {
        &self.ctx
    }

    /// `None` when the element is zero at its precision.
    pub fn valuation(&self) -> Option<i64> {
        (self.rel > 0).then_some(self.val)
    }

    pub fn absolute_precision(&self) -> i64 {
        self.val + self.rel as i64
    }

    pub fn relative_precision(&self) -> u32 {
        self.rel
    }

    /// Unit part on `1, X, ..., X^{f-1}`, known modulo `p^relative_precision`.
    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.rel == 0
    }

    /// Coordinates of `p^{-shift}` times the element, when integral; used for residues.
    pub fn unit_coords_at(&self, shift: i64) -> Vec<u64> {
        let e = self.val - shift;
        let m = pow_u128(self.ctx.p, self.ctx.cap);
        if self.rel == 0 || e >= self.ctx.cap as i64 {
            return vec![0; self.ctx.degree];
        }
        let scale = pow_u128(self.ctx.p, e.max(0) as u32);
        self.unit.iter().map(|&c| (c as u128 * scale % m) as u64).collect()
    }

    /// Coordinates of the element modulo `p^k`, if it is integral and known that far.
    pub fn residues(&self, k: u32) -> Option<Vec<u64>> {
        if self.absolute_precision() < k as i64 || (self.rel > 0 && self.val < 0) {
            return None;
        }
        let m = pow_u128(self.ctx.p, k);
        if self.rel == 0 || self.val >= k as i64 {
            return Some(vec![0; self.ctx.degree]);
        }
        let scale = pow_u128(self.ctx.p, self.val as u32);
        Some(self.unit.iter().map(|&c| (c as u128 * scale % m) as u64).collect())
    }

    /// Lowers the absolute precision to at most `abs`.
    pub fn truncate(&self, abs: i64) -> Self {
        if abs >= self.absolute_precision() {
            return self.clone();
        }
        if abs <= self.val {
            return Self::zero(&self.ctx, abs);
        }
        Self::build(&self.ctx, self.val, (abs - self.val) as u32, self.unit.clone())
    }

    fn check(&self, other: &Self) {
        let (a, b) = (&self.ctx, &other.ctx);
        assert!(
            Arc::ptr_eq(a, b) || (a.p == b.p && a.cap == b.cap && a.modulus == b.modulus),
            "elements of different extensions"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let v = self.val.min(other.val);
        let abs = self.absolute_precision().min(other.absolute_precision());
        if abs <= v {
            return Self::zero(&self.ctx, abs);
        }
        let rel = (abs - v).min(self.ctx.cap as i64) as u32;
        let m = pow_u128(self.ctx.p, rel);
        let shifted = |x: &Self| -> Vec<u128> {
            let e = x.val - v;
            if x.rel == 0 || e >= rel as i64 {
                return vec![0; x.ctx.degree];
            }
            let s = pow_u128(x.ctx.p, e as u32);
            x.unit.iter().map(|&c| c as u128 % m * s % m).collect()
        };
        let (a, b) = (shifted(self), shifted(other));
        let unit = a.iter().zip(&b).map(|(x, y)| ((x + y) % m) as u64).collect();
        Self::build(&self.ctx, v, rel, unit)
    }

    pub fn neg(&self) -> Self {
        let m = pow_u128(self.ctx.p, self.rel);
        let unit = self.unit.iter().map(|&c| ((m - c as u128 % m) % m) as u64).collect();
        Self::build(&self.ctx, self.val, self.rel, unit)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let v = self.val + other.val;
        if self.rel == 0 || other.rel == 0 {
            return Self::zero(&self.ctx, v);
        }
        let rel = self.rel.min(other.rel);
        let m = pow_u128(self.ctx.p, rel);
        let unit = self.ctx.mul_coords(&self.unit, &other.unit, m);
        Self::build(&self.ctx, v, rel, unit)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(&self.ctx, q))
    }

    pub fn inverse(&self) -> Result<Self, PadicError> {
        if self.rel == 0 {
            return Err(PadicError::DivisionByZero);
        }
        let p = self.ctx.p;
        let mut y = self
            .ctx
            .inverse_mod_p(&self.unit.iter().map(|&c| c % p).collect::<Vec<_>>())
            .ok_or(PadicError::DivisionByZero)?;
        let m = pow_u128(p, self.rel);
        let two = {
            let mut t = vec![0u64; self.ctx.degree];
            t[0] = 2;
            t
        };
        let mut known = 1u32;
        while known < self.rel {
            // y <- y (2 - u y)
            let uy = self.ctx.mul_coords(&self.unit, &y, m);
            let diff: Vec<u64> = two.iter().zip(&uy).map(|(&a, &b)| ((a as u128 + m - b as u128) % m) as u64).collect();
            y = self.ctx.mul_coords(&y, &diff, m);
            known *= 2;
        }
        Ok(Self::build(&self.ctx, -self.val, self.rel, y))
    }

    pub fn div(&self, other: &Self) -> Result<Self, PadicError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The arithmetic Frobenius, acting on coordinates through the lifted root.
    pub fn frobenius(&self) -> Self {
        if self.rel == 0 || self.ctx.degree == 1 {
            return self.clone();
        }
        let beta = Self::build(&self.ctx, 0, self.ctx.cap, self.ctx.frobenius.clone());
        let mut acc = Self::zero_exact(&self.ctx);
        for &c in self.unit.iter().rev() {
            acc = acc.mul(&beta).add(&Self::build(&self.ctx, 0, self.ctx.cap, {
                let mut u = vec![0; self.ctx.degree];
                u[0] = c;
                u
            }));
        }
        let scaled = Self::build(&self.ctx, acc.val + self.val, acc.rel.min(self.rel), acc.unit);
        scaled.truncate(self.absolute_precision())
    }

    /// `k`-fold Frobenius.
    pub fn frobenius_pow(&self, k: usize) -> Self {
        (0..k % self.ctx.degree).fold(self.clone(), |acc, _| acc.frobenius())
    }

    /// Equality up to the smaller of the two precisions.
    pub fn eq_at_precision(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// The element as a `Q_p` number, when every non-constant coordinate vanishes.
    pub fn to_base(&self) -> Option<(i64, u32, u64)> {
        if self.unit.iter().skip(1).any(|&c| c != 0) {
            return None;
        }
        Some((self.val, self.rel, self.unit[0]))
    }
}

/// Whether the Frobenius power `frob^k` fixes the element.
pub fn fixed_by(x: &UnramExtElem, k: usize) -> bool {
    x.frobenius_pow(k).eq_at_precision(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn field_arithmetic() {
        let ctx = UnramExt::new(5, 3, 12).unwrap();
        assert!(is_irreducible(ctx.modulus(), 5));
        let x = UnramExtElem::generator(&ctx);
        let y = x.add(&UnramExtElem::from_u64(&ctx, 7));
        let z = x.mul(&y).div(&y).unwrap();
        assert!(z.eq_at_precision(&x));
        let q = UnramExtElem::from_rational(&ctx, &rat(3, 25));
        assert_eq!(q.valuation(), Some(-2));
        let back = q.mul(&UnramExtElem::from_u64(&ctx, 25));
        assert!(back.eq_at_precision(&UnramExtElem::from_u64(&ctx, 3)));
        // x^(p^f) = x for the Teichmueller-free generator only mod p
        let xp = x.pow(125);
        assert_eq!(xp.sub(&x).valuation().map(|v| v >= 1), Some(true));
    }

    #[test]
    fn frobenius_properties() {
        let ctx = UnramExt::new(3, 4, 15).unwrap();
        let x = UnramExtElem::generator(&ctx).add(&UnramExtElem::from_u64(&ctx, 2));
        let y = UnramExtElem::from_coords(&ctx, &[4, 0, 11, 1], 15);
        // ring homomorphism of order f, congruent to the p-th power
        assert!(x.mul(&y).frobenius().eq_at_precision(&x.frobenius().mul(&y.frobenius())));
        assert!(x.add(&y).frobenius().eq_at_precision(&x.frobenius().add(&y.frobenius())));
        assert!(x.frobenius_pow(4).eq_at_precision(&x));
        assert!(!x.frobenius().eq_at_precision(&x));
        assert!(x.frobenius().sub(&x.pow(3)).valuation().unwrap() >= 1);
        // the modulus has the Frobenius image of X as a root
        let beta = UnramExtElem::generator(&ctx).frobenius();
        assert!(ctx.eval_modulus(&beta).is_zero());
    }

    #[test]
    fn precision_is_tracked() {
        let ctx = UnramExt::new(7, 2, 10).unwrap();
        let a = UnramExtElem::from_coords(&ctx, &[3, 5], 10);
        let b = a.truncate(4);
        assert_eq!(a.add(&b).absolute_precision(), 4);
        let p = UnramExtElem::from_u64(&ctx, 7);
        assert_eq!(b.mul(&p).absolute_precision(), 5);
        assert_eq!(a.sub(&a).valuation(), None);
        assert!(matches!(UnramExt::new(5, 2, 40), Err(PadicError::PrecisionTooLarge { .. })));
    }

    #[test]
    fn higher_precision_truncates_to_lower() {
        let lo = UnramExt::new(5, 2, 8).unwrap();
        let hi = UnramExt::new(5, 2, 13).unwrap();
        assert_eq!(lo.modulus(), hi.modulus());
        let run = |ctx: &Arc<UnramExt>| {
            let a = UnramExtElem::from_coords(ctx, &[2, 3], ctx.cap());
            let b = UnramExtElem::from_rational(ctx, &rat(7, 5));
            a.mul(&b).add(&a.frobenius()).div(&a.add(&b)).unwrap().mul(&UnramExtElem::from_u64(ctx, 5))
        };
        let (x, y) = (run(&lo), run(&hi));
        let k = x.absolute_precision() as u32;
        assert_eq!(x.residues(k), y.residues(k));
    }
}
