//! Software floating point with a fixed working precision of
//! [`WORK_BITS`] bits, and complex numbers on top of it.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;

use crate::arith::Rational;

/// Working precision in bits (about 57 decimal digits).
pub const WORK_BITS: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Self {
        Real(BigFloat::from_i64(0, WORK_BITS))
    }

    pub fn from_i64(n: i64) -> Self {
        Real(BigFloat::from_i64(n, WORK_BITS))
    }

    pub fn from_f64(x: f64) -> Self {
        Real(BigFloat::from_f64(x, WORK_BITS))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self::parse(&n.to_string())
    }

    pub fn from_rational(q: &Rational) -> Self {
        &Self::from_bigint(q.numer()) / &Self::from_bigint(q.denom())
    }

    /// Parses a decimal literal such as `"1.25e-3"`.
    pub fn parse(s: &str) -> Self {
        with_consts(|cc| Real(BigFloat::parse(s, Radix::Dec, WORK_BITS, RM, cc)))
    }

    pub fn pi() -> Self {
        with_consts(|cc| Real(cc.pi(WORK_BITS, RM)))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(WORK_BITS, RM))
    }

    pub fn exp(&self) -> Self {
        with_consts(|cc| Real(self.0.exp(WORK_BITS, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        with_consts(|cc| Real(self.0.ln(WORK_BITS, RM, cc)))
    }

    pub fn sin(&self) -> Self {
        with_consts(|cc| Real(self.0.sin(WORK_BITS, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        with_consts(|cc| Real(self.0.cos(WORK_BITS, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        with_consts(|cc| Real(self.0.atan(WORK_BITS, RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, WORK_BITS, RM))
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        let r = self.0.round(0, RM);
        let s = with_consts(|cc| r.format(Radix::Dec, RM, cc)).expect("format");
        parse_integer_literal(&s)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().unwrap_or(f64::NAN)
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let s = with_consts(|cc| self.0.format(Radix::Dec, RM, cc)).expect("format");
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
        let mut digits_only: String = mant.chars().filter(char::is_ascii_digit).collect();
        digits_only.truncate(digits.max(1));
        let (head, tail) = digits_only.split_at(1);
        let exp: i64 = exp.parse().unwrap_or(0);
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

/// Parses `d.ddddde+k` style output of an integral float into an integer.
fn parse_integer_literal(s: &str) -> BigInt {
    let (mant, exp) = s.split_once('e').unwrap_or((s, "0"));
    let negative = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let exp: i64 = exp.parse().expect("exponent");
    let mut digits = format!("{int_part}{frac_part}");
    let shift = exp - frac_part.len() as i64;
    if shift >= 0 {
        digits.extend(std::iter::repeat_n('0', shift as usize));
    } else {
        let keep = (digits.len() as i64 + shift).max(0) as usize;
        digits.truncate(keep);
    }
    let n: BigInt = if digits.is_empty() { BigInt::from(0) } else { digits.parse().expect("digits") };
    if negative {
        -n
    } else {
        n
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(40)))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.partial_cmp(&other.0) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(self.0.$m(&rhs.0, WORK_BITS, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex::new(Real::zero(), Real::zero())
    }

    pub fn real(re: Real) -> Self {
        Complex::new(re, Real::zero())
    }

    /// `exp(i * theta)`.
    pub fn cis(theta: &Real) -> Self {
        Complex::new(theta.cos(), theta.sin())
    }

    /// `exp(2 pi i k / n)`.
    pub fn root_of_unity(k: i64, n: u64) -> Self {
        let k = k.rem_euclid(n as i64);
        let theta = &(&Real::pi() * &Real::from_i64(2 * k)) / &Real::from_i64(n as i64);
        Self::cis(&theta)
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, r: &Real) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex::new(&self.re / &n, -(&self.im / &n))
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(&(&self.re * &rhs.re) - &(&self.im * &rhs.im), &(&self.re * &rhs.im) + &(&self.im * &rhs.re))
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Complex) -> Complex {
        self * &rhs.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}
