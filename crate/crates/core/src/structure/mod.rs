//! Ideal structure and homogeneous weights of finite Frobenius rings.
//!
//! Everything here is generic over [`FiniteRing`](crate::ring::FiniteRing) and
//! works by enumeration, so it is limited to rings of moderate size
//! ([`POSET_LIMIT`]). Quaternion rings beyond that limit are handled by
//! [`verify_candidate`], which checks a closed-form minimal ideal directly.

mod minimal;
mod poset;
mod weight;

use thiserror::Error;

pub use minimal::{
    is_frobenius_by_character, minimal_ideal_candidate, verify_candidate, CandidateMode, CandidateReport,
};
pub use poset::{
    additive_span, ideal_contains, ideal_poset, mobius, principal_ideal, socle, unique_minimal_ideal, ElementSet,
    Ideal, IdealPoset, MobiusTable,
};
pub use weight::{
    closed_form_quaternion_weight, f2_quaternion_weight, galois_closed_form_weight, hom_weight_character,
    hom_weight_mobius, hom_weight_unique_minimal, odd_field_quaternion_weight, weight_from_minimal_ideal,
    DefinitionViolation, WeightFunction,
};

/// Largest ring for which the full principal-ideal poset is built.
pub const POSET_LIMIT: usize = 4096;
/// Largest ring for which a single principal ideal is enumerated.
pub const IDEAL_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("ring of order {order} is too large for this operation (limit {limit})")]
    TooLarge { order: usize, limit: usize },
    #[error("character sum at {element} has imaginary part {imag}")]
    NonVanishingImaginaryPart { element: String, imag: String },
    #[error("character sum at {element} is not an integer: {value}")]
    NonIntegralCharacterSum { element: String, value: String },
    #[error("the ring has {0} minimal ideals, not exactly one")]
    NoUniqueMinimalIdeal(usize),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
}

pub(crate) fn check_order(order: usize, limit: usize) -> Result<(), StructureError> {
    if order > limit {
        Err(StructureError::TooLarge { order, limit })
    } else {
        Ok(())
    }
}
