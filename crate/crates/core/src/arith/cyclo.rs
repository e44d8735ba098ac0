use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::nt::{divisors, euler_phi, gcd, modulo};
use super::poly::QPoly;
use super::{ArithError, Rational};

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the n-th cyclotomic polynomial in increasing degree.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` and cached.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(hit) = phi_cache().lock().expect("cache poisoned").get(&n) {
        return hit.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let den = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &den);
    }
    let out = Arc::new(num);
    phi_cache().lock().expect("cache poisoned").insert(n, out.clone());
    out
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (dd..num.len()).rev() {
        let f = r[i];
        if f != 0 {
            for (j, &c) in den.iter().enumerate() {
                r[i - dd + j] -= f * c;
            }
        }
        q[i - dd] = f;
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// An element of `Q(zeta_n)` on the power basis modulo `Phi_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    level: u64,
    coeffs: Vec<Rational>,
}

/// Integer vector with a common positive denominator.
struct Scaled {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    fn from_rationals(v: &[Rational]) -> Scaled {
        let den = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Scaled { num, den }
    }
}

/// Reduces an integer vector modulo `Phi_n` in place; returns the first `phi(n)` entries.
fn reduce_by_phi(mut v: Vec<BigInt>, n: u64) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let support: Vec<(usize, i64)> =
        phi[..deg].iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect();
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let f = std::mem::take(&mut v[i]);
        for &(j, c) in &support {
            v[i - deg + j] -= &f * c;
        }
    }
    v.truncate(deg);
    v.resize(deg, BigInt::zero());
    v
}

impl CycloElem {
    pub fn zero(level: u64) -> Self {
        assert!(level >= 1, "level must be positive");
        let d = euler_phi(level) as usize;
        CycloElem { level, coeffs: vec![Rational::zero(); d] }
    }

    pub fn from_rational(level: u64, q: Rational) -> Self {
        let mut out = Self::zero(level);
        out.coeffs[0] = q;
        out
    }

    pub fn one(level: u64) -> Self {
        Self::from_rational(level, Rational::one())
    }

    /// `zeta_level^k`.
    pub fn zeta_pow(level: u64, k: i64) -> Self {
        Self::from_terms(level, [(k, Rational::one())])
    }

    /// Builds `sum q * zeta^e` from (exponent, coefficient) pairs.
    pub fn from_terms<I>(level: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut acc = vec![Rational::zero(); level as usize];
        for (e, q) in terms {
            acc[modulo(e, level) as usize] += q;
        }
        Self::from_cyclic_vector(level, acc)
    }

    /// Same as [`CycloElem::from_terms`] for integer coefficients.
    pub fn from_int_terms<I>(level: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut acc = vec![BigInt::zero(); level as usize];
        for (e, q) in terms {
            acc[modulo(e, level) as usize] += q;
        }
        let num = reduce_by_phi(acc, level);
        CycloElem { level, coeffs: num.into_iter().map(Rational::from_integer).collect() }
    }

    /// Reduces a vector indexed by exponents mod `level` (i.e. modulo `x^level - 1`).
    fn from_cyclic_vector(level: u64, v: Vec<Rational>) -> Self {
        let s = Scaled::from_rationals(&v);
        let num = reduce_by_phi(s.num, level);
        let coeffs = num.into_iter().map(|a| Rational::new(a, s.den.clone())).collect();
        CycloElem { level, coeffs }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check_level(&self, other: &Self) -> Result<(), ArithError> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(ArithError::LevelMismatch(self.level, other.level))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElem { level: self.level, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_level(other)?;
        let n = self.level as usize;
        let a = Scaled::from_rationals(&self.coeffs);
        let b = Scaled::from_rationals(&other.coeffs);
        let mut acc = vec![BigInt::zero(); n];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    acc[(i + j) % n] += x * y;
                }
            }
        }
        let den = a.den * b.den;
        let coeffs = reduce_by_phi(acc, self.level).into_iter().map(|c| Rational::new(c, den.clone())).collect();
        Ok(CycloElem { level: self.level, coeffs })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloElem { level: self.level, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplies by `zeta^k` (a shift followed by reduction).
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let n = self.level;
        let terms =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64 + k, c.clone()));
        Self::from_terms(n, terms)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_n`.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let m = QPoly::from_ints(&cyclotomic_polynomial(self.level));
        let a = QPoly::new(self.coeffs.clone());
        let (g, s) = a.gcd_cofactor(&m);
        // Phi_n is irreducible, so any nonzero element is coprime to it.
        debug_assert_eq!(g.degree(), Some(0));
        let (_, r) = s.div_rem(&m);
        let mut coeffs = r.0;
        coeffs.resize(self.coeffs.len(), Rational::zero());
        Ok(CycloElem { level: self.level, coeffs })
    }

    /// The automorphism `zeta -> zeta^t`.
    pub fn galois(&self, t: i64) -> Result<Self, ArithError> {
        let n = self.level;
        if gcd(modulo(t, n), n) != 1 {
            return Err(ArithError::NotCoprime { t, level: n });
        }
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (modulo(i as i64 * t, n) as i64, c.clone()));
        Ok(Self::from_terms(n, terms))
    }

    /// Re-expresses the element in `Q(zeta_m)` for a multiple `m` of the level.
    pub fn embed(&self, m: u64) -> Result<Self, ArithError> {
        if !m.is_multiple_of(self.level) {
            return Err(ArithError::NotDivisible { level: self.level, target: m });
        }
        let step = (m / self.level) as i64;
        let terms =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64 * step, c.clone()));
        Ok(Self::from_terms(m, terms))
    }

    /// Complex conjugation, i.e. `galois(-1)`.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Field norm to `Q`: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let n = self.level;
        let prod = (1..=n.max(1))
            .filter(|&t| gcd(t, n) == 1)
            .map(|t| self.galois(t as i64).expect("unit"))
            .fold(CycloElem::one(n), |acc, x| &acc * &x);
        prod.as_rational().expect("norm of a cyclotomic element is rational")
    }

    /// Coefficients on the cyclic basis `zeta^0..zeta^{n-1}` (not canonical).
    pub fn power_coeffs(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .power_coeffs()
            .map(|(i, c)| match i {
                0 => super::rat_string(c),
                _ => format!("({})*z{}^{}", super::rat_string(c), self.level, i),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycloElem> for &CycloElem {
            type Output = CycloElem;
            /// Panics if the levels differ; see the `checked_*` methods.
            fn $m(self, rhs: &CycloElem) -> CycloElem {
                let f: fn(&CycloElem, &CycloElem) -> Result<CycloElem, ArithError> = $body;
                f(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $m(self, rhs: CycloElem) -> CycloElem {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.checked_add(b));
forward_binop!(Sub, sub, |a, b| a.checked_add(&-b));
forward_binop!(Mul, mul, |a, b| a.checked_mul(b));

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}
