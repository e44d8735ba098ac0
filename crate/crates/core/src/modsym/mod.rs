//! Plus modular symbols for `Gamma_0(N)` via Manin's presentation.

mod functional;
mod normalize;
mod p1;
mod space;

pub use functional::{eigen_functional, eigen_functional_with_bound, sturm_bound, ModularSymbolFunctional};
pub use normalize::{
    interpolated_component, normalize_functional, raw_character_component, NormalizationAnchor, MAX_ANCHOR_MODULUS,
};
pub use p1::P1List;
pub use space::{heilbronn_merel, Cusp, ManinSymbolSpace, DEFAULT_MAX_LEVEL};

use thiserror::Error;

use crate::elliptic::CurveError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModSymError {
    #[error("level {level} exceeds the configured maximum {max_level}")]
    LevelTooLarge { level: u64, max_level: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the prime {0} divides the level")]
    PrimeDividesLevel(u64),
    #[error("no rational eigenline for a curve of conductor {conductor} at level {level}")]
    NoEigenline { conductor: u64, level: u64 },
    #[error("eigenspace of dimension {0}: the eigenvalue bound is too small")]
    AmbiguousEigenline(usize),
    #[error("{a}/{c} is not in lowest terms with positive denominator")]
    NotCoprime { a: i64, c: i64 },
    #[error("every twisted L-value up to conductor {0} vanishes numerically")]
    AllTwistsVanish(u64),
    #[error("no small-denominator rational near {0}")]
    ReconstructionFailed(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}
