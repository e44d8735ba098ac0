//! Regularized theta elements of elliptic curves over real abelian fields.

mod element;
mod field;
mod verdict;

pub use element::{
    character_component, distribution_check, regularized_symbol, restrict_to_field, theta_element, theta_for_field,
    DistributionOutcome, ThetaElement,
};
pub use field::FieldSpec;
pub use verdict::{
    curve_functional, hypotheses_report, membership_data, rank0_verdict, rational_valuation, ConditionCheck,
    HypothesesReport, MembershipData, Rank0Conclusion, Rank0Verdict, Verdict, MAX_AUXILIARY_PRIME,
    NONVANISHING_TOLERANCE, NORMALIZATION_DIGITS,
};

use thiserror::Error;

use crate::characters::CharError;
use crate::elliptic::CurveError;
use crate::grouprings::GroupRingError;
use crate::lvalues::LError;
use crate::modsym::ModSymError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThetaError {
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("c = {c} is not coprime to the level {level}")]
    NotCoprimeToLevel { c: u64, level: u64 },
    #[error("{a} is not a unit modulo {c}")]
    NotCoprime { a: i64, c: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("the field has conductor {actual}, not {given}")]
    NotConductor { given: u64, actual: u64 },
    #[error("not a subfield")]
    NotSubfield,
    #[error("element of level {theta} cannot be restricted to a field of conductor {field}")]
    ConductorMismatch { theta: u64, field: u64 },
    #[error("character mod {modulus} does not factor through the Galois group at level {level}")]
    CharacterDoesNotFactor { modulus: u64, level: u64 },
    #[error("twisted L-value of the character {character:?} (conductor {modulus}) vanishes numerically")]
    RankNotZero { character: Vec<u64>, modulus: u64 },
    #[error(transparent)]
    ModSym(#[from] ModSymError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    L(#[from] LError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[cfg(test)]
mod tests;
