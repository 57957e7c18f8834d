//! Finitely additive type spaces at finite scale.
//!
//! The crate provides exact finitely additive probability measures on finite
//! set fields together with the Łoś–Marczewski and Horn–Tarski extension
//! algorithms, finite type spaces with belief operators and type morphisms, a
//! belief-expression language with parser and evaluator, description-based
//! quotients computed by partition refinement, and the two-player sober-drunk
//! record spaces with their inductively constructed beliefs.
//!
//! All measure values are exact rationals; every advertised equality in the
//! test suites is exact, never approximate.

pub mod document;
pub mod expr;
pub mod measure;
pub mod rat;
pub mod set;
pub mod soberdrunk;
pub mod typespace;
pub mod universal;

pub use expr::{Expr, ParseError};
pub use measure::{FAMeasure, MeasureError, SetField};
pub use rat::Rat;
pub use set::ElemSet;
pub use typespace::{NatureSpace, Player, SpaceError, TypeSpace, ValidationReport};
pub use universal::{QuotientSpace, RefinementTower};
