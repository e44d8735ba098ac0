//! Numerical twisted L-values.

pub mod float;
mod galois;
mod recognize;
mod series;

pub use galois::{galois_equivariance_check, EquivarianceReport};
pub use recognize::{rational_reconstruct, recognize_cyclotomic};
pub use series::{
    an_coeffs, char_value, cyclo_to_complex, primes_dividing, twist_root_number, twisted_lvalue,
    twisted_lvalue_truncated, twisted_lvalue_with_root_number, ApproxValue, LSeriesData, MAX_COEFFS,
};

use thiserror::Error;

use crate::characters::CharError;
use crate::elliptic::CurveError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LError {
    #[error("coefficient bound {0} exceeds the resource guard")]
    BoundTooLarge(usize),
    #[error("{needed} coefficients needed for the tolerance, {available} available")]
    ToleranceUnreachable { needed: usize, available: usize },
    #[error("character conductor {conductor} is not coprime to the level {level}")]
    ChiNotCoprimeToLevel { conductor: u64, level: u64 },
    #[error("the character is odd")]
    ChiNotEven,
    #[error("the root number could not be determined numerically")]
    RootNumberUndetermined,
    #[error("value not recognised as a cyclotomic number")]
    RecognitionFailed,
    #[error("a value in the orbit vanishes numerically")]
    ValueVanishes,
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
