//! Finite categories and truncated symmetric multicategories: validation,
//! constructions, colimits, Karoubi envelopes and model-structure checks.

pub mod colimits;
pub mod constructions;
pub mod error;
pub mod karoubi;
pub mod map;
pub mod modelcheck;
pub mod perm;
pub mod presentation;
pub mod sample;
pub mod search;
pub mod standard;
pub mod structure;
pub mod tables;
pub mod union_find;
pub mod validate;

pub use error::{Budget, Error, Result, DEFAULT_BUDGET};
pub use map::{Functor, Map, MultiFunctor};
pub use perm::Perm;
pub use structure::{FiniteCategory, Graph, MultiGraph, Multicat, Structure};
pub use tables::{Mor, MorphismDecl, Obj, Signature, Tables, TablesBuilder};
pub use validate::{
    validate_category, validate_multicat, ValidationReport, Violation, ViolationKind,
};
