//! Exact rational and cyclotomic arithmetic.

mod cyclo;
pub mod nt;
pub mod poly;

pub use cyclo::{cyclotomic_polynomial, CycloElem};

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational number in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `num/den` (or `num` for integers).
pub fn rat_string(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the `num/den` format written by [`rat_string`].
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(n.trim().parse().ok()?, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("cyclotomic levels differ: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{t} is not coprime to the level {level}")]
    NotCoprime { t: i64, level: u64 },
    #[error("level {level} does not divide {target}")]
    NotDivisible { level: u64, target: u64 },
}
