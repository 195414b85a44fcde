//! Weil polynomials, Honda-Tate classes, polarized projectors and
//! quadric-bundle bookkeeping on top of [`phantom_arith`].

pub mod honda_tate;
pub mod json;
pub mod projector;
pub mod quadric;
pub mod weil;

use phantom_arith::ArithError;
use thiserror::Error;

pub use honda_tate::{
    decompose_representation, frobenius_charpoly, ordinary_phantom, phantom_exists,
    phantom_exists_with, simple_class_from_weil, ContainingConvention, PhantomDecision,
    PhantomFactor, SimpleIsogenyClass,
};
pub use projector::{
    adjoint, build_projector, lefschetz_projectors, motive_idempotents, verify_decomposition,
    DecompositionReport, LefschetzData, LefschetzProjectors, MotivePair, PolarizedPair,
    SplitProjector,
};
pub use quadric::{
    discriminant, euler_characteristic, is_ordinary, is_ordinary_at, is_poincare_symmetric,
    nondegenerate_part, prym_bookkeeping, rank_at, smooth_fibration_betti, vial_table, FiberClass,
    FormField, GenusSource, OrdinaryReport, PrymReport, SearchOptions, SymmetricFormMatrix,
};
pub use weil::{
    hodge_polygon, is_effective_weight, is_entire, is_ordinary_polygon, is_weil_polynomial,
    newton_over_hodge, newton_polygon, tate_twist, HodgeNumbers, Polygon, PrimePower,
    WeilPolynomial,
};

/// How a failure should be reported to a caller that maps errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or inconsistent input.
    Validation,
    /// Well-formed input that violates a mathematical precondition.
    Precondition,
    /// A search or precision budget ran out.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial does not have integer coefficients")]
    NotIntegral,
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("not a prime power: {0}")]
    NotPrimePower(String),
    #[error("not a Weil polynomial: {0}")]
    NotWeil(String),
    #[error("polynomial is not irreducible over Q")]
    NotIrreducible,
    #[error("polygon lengths differ: {0} vs {1}")]
    LengthMismatch(String, String),
    #[error("Newton polygon is not ordinary with respect to the Hodge polygon")]
    NotOrdinary,
    #[error("Newton polygon dips below the Hodge polygon")]
    NewtonBelowHodge,
    #[error("twisted polynomial is not entire: {0}")]
    NotEffective(String),
    #[error("invalid Hodge numbers: {0}")]
    InvalidHodge(String),
    #[error("pairing is singular")]
    SingularPairing,
    #[error("not polarized: {0}")]
    NotPolarized(String),
    #[error("decomposition identity fails: {0}")]
    DecompositionFails(String),
    #[error("hard Lefschetz fails in degree {0}")]
    HardLefschetzFails(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("discriminant is identically zero")]
    ZeroDiscriminant,
    #[error("double-cover Betti numbers are required for even relative dimension")]
    MissingDoubleCoverData,
    #[error("invalid genus: {0}")]
    InvalidGenus(String),
}

impl CoreError {
    pub fn class(&self) -> ErrorClass {
        use CoreError::*;
        match self {
            Arith(a) => match a {
                ArithError::PrecisionExhausted(_) | ArithError::SearchBoundExceeded(_) => {
                    ErrorClass::Budget
                }
                ArithError::NotSquarefree
                | ArithError::Singular
                | ArithError::NotInvariant
                | ArithError::ZeroPolynomial => ErrorClass::Precondition,
                _ => ErrorClass::Validation,
            },
            NotMonic | NotIntegral | ZeroConstantTerm | NotPrimePower(_) | LengthMismatch(..)
            | InvalidHodge(_) | Invalid(_) => ErrorClass::Validation,
            NotWeil(_)
            | NotIrreducible
            | NotOrdinary
            | NewtonBelowHodge
            | NotEffective(_)
            | SingularPairing
            | NotPolarized(_)
            | DecompositionFails(_)
            | HardLefschetzFails(_)
            | ZeroDiscriminant
            | MissingDoubleCoverData
            | InvalidGenus(_) => ErrorClass::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
