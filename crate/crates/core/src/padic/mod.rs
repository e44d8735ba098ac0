//! p-adic numbers, formal groups and logarithmic resolvents.

mod formal;
mod num;
mod resolvent;
mod unram;

pub use formal::{formal_group_log, FormalLogSeries};
pub use num::PadicNum;
pub use resolvent::{
    embed_cyclotomic, first_prediction_sum, log_resolvent, required_places, working_degree, CyclotomicEmbedding,
    FirstPrediction, SemiLocalPoint, DEFAULT_PRECISION_FLOOR,
};
pub use unram::{fixed_by, UnramExt, UnramExtElem};

use thiserror::Error;

use crate::arith::ArithError;
use crate::characters::CharError;
use crate::elliptic::CurveError;
use crate::theta::ThetaError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PadicError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{p}^{cap} exceeds the supported modulus")]
    PrecisionTooLarge { p: u64, cap: u32 },
    #[error("division by an element that is zero at its precision")]
    DivisionByZero,
    #[error("parameter of valuation {0} is outside the formal group")]
    NotInFormalGroup(i64),
    #[error("parameter is not fixed by the local Frobenius")]
    NotInLocalField,
    #[error("p = {p} divides the cyclotomic level {m}")]
    RamifiedCase { p: u64, m: u64 },
    #[error("{0} ramifies in the field")]
    RamifiedPlace(u64),
    #[error("extension of degree {available} does not contain one of degree {needed}")]
    DegreeTooSmall { needed: usize, available: usize },
    #[error("no root of unity of order {m} with index {skip}")]
    EmbeddingUnavailable { m: u64, skip: usize },
    #[error("level {level} does not divide the embedding level {embedding}")]
    LevelMismatch { level: u64, embedding: u64 },
    #[error("expected {expected} local parameters, got {given}")]
    WrongPlaceCount { expected: usize, given: usize },
    #[error("place set is missing {0}")]
    InvalidPlaceSet(u64),
    #[error("point lives over {found}, not {expected}")]
    PrimeMismatch { expected: u64, found: u64 },
    #[error("the twisted value for the character {0:?} vanishes")]
    CharacterValueUnavailable(Vec<u64>),
    #[error("coefficient {0} is not in Q_p")]
    NotInBaseField(usize),
    #[error("only {available} digits survive, below the floor {floor}")]
    PrecisionExhausted { available: i64, floor: u32 },
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
