//! Group rings of finite abelian groups over `Q` and `Z/p^k`.

mod group;
mod ideals;
mod ring;
mod unitsum;

pub use group::{smith_normal_form, AbGroup, FinitePresentation, GroupChar, GroupHom};
pub use ideals::{
    aug_ideal_membership, fitting_membership, padic_integrality_and_unit, regular_determinant_mod_p, UnitVerdict,
};
pub use ring::{GroupRingElem, ZpGroupRingElem};
pub use unitsum::unit_sum_element;

use thiserror::Error;

/// Which requirement on a subgroup `H_d` failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupCondition {
    /// No subgroup was supplied for this divisor.
    Missing,
    /// A character conductor does not divide `c`.
    ConductorDivides,
    /// `c_psi | d` must hold exactly when `H_d` lies in the kernel of `psi`.
    Kernel,
    /// `|H_d|` must divide `prod_{l | c/d} (l + (-1)^i)`.
    Order,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupRingError {
    #[error("{0:?} are not invariant factors")]
    NotInvariantFactors(Vec<u64>),
    #[error("the presented group is infinite")]
    InfiniteQuotient,
    #[error("the map is not a group homomorphism")]
    NotHomomorphism,
    #[error("the map is not surjective")]
    NotSurjective,
    #[error("element and map have different groups")]
    GroupMismatch,
    #[error("p = 2 is not supported")]
    EvenPrime,
    #[error("a coefficient is not {0}-integral")]
    NotIntegral(u64),
    #[error("precision {0} is too large")]
    PrecisionTooLarge(u32),
    #[error("Fitting index {index} out of range for {generators} generators")]
    IndexOutOfRange { index: usize, generators: usize },
    #[error("subgroup hypothesis {condition:?} fails at divisor {divisor}")]
    HypothesisViolated { divisor: u64, condition: SubgroupCondition },
    #[error("the assembled element is not rational")]
    NotRational,
}
