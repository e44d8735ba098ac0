//! Group-ring elements over the rationals and over `Z/p^k`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::group::{AbGroup, GroupChar, GroupHom};
use super::GroupRingError;
use crate::arith::nt::{inv_mod, valuation};
use crate::arith::{CycloElem, Rational};

/// Element of `Q[G]`, stored densely by group index.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElem {
    group: Arc<AbGroup>,
    coeffs: Vec<Rational>,
}

impl GroupRingElem {
    pub fn zero(group: Arc<AbGroup>) -> Self {
        let n = group.order();
        Self { group, coeffs: vec![Rational::zero(); n] }
    }

    pub fn one(group: Arc<AbGroup>) -> Self {
        Self::basis(group.clone(), group.identity())
    }

    /// The group element `g` itself.
    pub fn basis(group: Arc<AbGroup>, g: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[g] = Rational::one();
        x
    }

    pub fn from_coeffs(group: Arc<AbGroup>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), group.order());
        Self { group, coeffs }
    }

    pub fn group(&self) -> &Arc<AbGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &Rational {
        &self.coeffs[g]
    }

    pub fn augmentation(&self) -> Rational {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { group: self.group.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { group: self.group.clone(), coeffs }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { group: self.group.clone(), coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.group.clone());
        for (g, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (h, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.coeffs[self.group.mul(g, h)] += a * b;
            }
        }
        out
    }

    /// Pushforward along a surjection: coefficients summed over fibres.
    pub fn project(&self, q: &GroupHom) -> Result<Self, GroupRingError> {
        if q.source() != self.group.as_ref() {
            return Err(GroupRingError::GroupMismatch);
        }
        if !q.is_surjective() {
            return Err(GroupRingError::NotSurjective);
        }
        let mut out = Self::zero(Arc::new(q.target().clone()));
        for (g, a) in self.coeffs.iter().enumerate() {
            out.coeffs[q.image(g)] += a;
        }
        Ok(out)
    }

    /// `chi(x) = sum_g x_g chi(g)`, exact.
    pub fn character_value(&self, chi: &GroupChar) -> CycloElem {
        let level = self.group.exponent();
        let mut total = CycloElem::zero(level);
        for (g, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let term = CycloElem::zeta_pow(level, chi.value_exponent(&self.group, g) as i64).scale(a);
            total = total.checked_add(&term).expect("same level");
        }
        total
    }

    /// Lowest common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()))
    }

    /// Minimum `p`-adic valuation over non-zero coefficients.
    pub fn min_valuation(&self, p: u64) -> Option<i64> {
        self.coeffs
            .iter()
            .filter(|q| !q.is_zero())
            .map(|q| valuation(q.numer(), p).unwrap_or(0) as i64 - valuation(q.denom(), p).unwrap_or(0) as i64)
            .min()
    }

    /// Image in `(Z/p^k)[G]`; fails when a coefficient is not `p`-integral.
    pub fn reduce(&self, p: u64, k: u32) -> Result<ZpGroupRingElem, GroupRingError> {
        let modulus = p.checked_pow(k).filter(|&m| m < 1 << 31).ok_or(GroupRingError::PrecisionTooLarge(k))?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|q| {
                let m = BigInt::from(modulus);
                let den = (q.denom() % &m).to_i64().expect("reduced");
                let inv = inv_mod(den, modulus).ok_or(GroupRingError::NotIntegral(p))?;
                let num = ((q.numer() % &m + &m) % &m).to_u64().expect("reduced");
                Ok((num as u128 * inv as u128 % modulus as u128) as u64)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ZpGroupRingElem { group: self.group.clone(), p, k, coeffs })
    }
}

/// Element of `(Z/p^k)[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpGroupRingElem {
    group: Arc<AbGroup>,
    p: u64,
    k: u32,
    coeffs: Vec<u64>,
}

impl ZpGroupRingElem {
    pub fn new(group: Arc<AbGroup>, p: u64, k: u32, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), group.order());
        let m = p.pow(k) as i64;
        Self { group, p, k, coeffs: coeffs.iter().map(|&c| c.rem_euclid(m) as u64).collect() }
    }

    pub fn zero(group: Arc<AbGroup>, p: u64, k: u32) -> Self {
        let n = group.order();
        Self::new(group, p, k, &vec![0; n])
    }

    pub fn basis(group: Arc<AbGroup>, p: u64, k: u32, g: usize) -> Self {
        let mut x = Self::zero(group, p, k);
        x.coeffs[g] = 1;
        x
    }

    pub fn group(&self) -> &Arc<AbGroup> {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn augmentation(&self) -> u64 {
        self.coeffs.iter().fold(0, |acc, &c| (acc + c) % self.modulus())
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.modulus();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % m).collect();
        Self { coeffs, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.modulus();
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + m - b) % m).collect();
        Self { coeffs, ..self.clone() }
    }

    pub fn scale(&self, s: i64) -> Self {
        let m = self.modulus();
        let s = s.rem_euclid(m as i64) as u128;
        let coeffs = self.coeffs.iter().map(|&a| (a as u128 * s % m as u128) as u64).collect();
        Self { coeffs, ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus() as u128;
        let mut acc = vec![0u128; self.coeffs.len()];
        for (g, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (h, &b) in other.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                let gh = self.group.mul(g, h);
                acc[gh] = (acc[gh] + a as u128 * b as u128) % m;
            }
        }
        Self { coeffs: acc.into_iter().map(|x| x as u64).collect(), ..self.clone() }
    }

    /// `g x` for a group element `g`.
    pub fn translate(&self, g: usize) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        for (h, &a) in self.coeffs.iter().enumerate() {
            coeffs[self.group.mul(g, h)] = a;
        }
        Self { coeffs, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}
