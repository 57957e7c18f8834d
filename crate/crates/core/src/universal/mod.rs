//! Description-based quotients at finite scale: partition refinement,
//! canonical state fingerprints, the quotient type space and terminality
//! checks.

mod fingerprint;
mod quotient;
mod refine;
mod terminal;

pub use fingerprint::{desc_fingerprint, fingerprint_table, FingerprintTable, Token};
pub use quotient::{quotient, QuotientSpace};
pub use refine::{refine, RefinementTower};
pub use terminal::{
    check_morphism_preserves_descriptions, check_terminality, unique_morphism_via_fingerprints,
    TerminalityReport,
};

use thiserror::Error;

use crate::typespace::SpaceError;

#[derive(Debug, Error)]
pub enum UniversalError {
    #[error("space error: {0}")]
    Space(#[from] SpaceError),
    #[error("space is not a valid type space; run validate for the report")]
    InvalidSpace,
    #[error("the given map is not a type morphism: {0}")]
    NotAMorphism(String),
    #[error("quotient construction: states in one description class induced different pushforwards")]
    IllDefinedQuotient,
}
