//! Homological algebra for finite-dimensional weight modules over a
//! presented algebra.

mod algebra;
mod diamond;
mod dot;
mod homext;
mod iso;
mod module;
mod radical;
mod resolution;

use thiserror::Error;

pub use algebra::{AlgebraPresentation, Generator, Relation, Term, WeightFn};
pub use diamond::build_diamond;
pub use dot::{loewy_dot, loewy_dot_with};
pub use homext::{ext1, extend, hom, hom_dim, is_coboundary, Cocycle, ExtSpace};
pub use iso::{is_isomorphic, is_isomorphic_seeded};
pub use module::{check_relations, generated_submodule, subquotient, ModuleRep, Subquotient};
pub use radical::{
    head, image_algebra, is_indecomposable, radical_filtration, radical_layers, radical_submodule,
    LoewyLayer, SimpleInventory,
};
pub use resolution::{ext_from_resolution, ext_s, minimal_resolution, ProjectiveCover, ProjectiveCovers, Resolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid cocycle: relation {0} has a nonzero residual")]
    InvalidCocycle(String),
    #[error("layer component not found in the simple inventory: {0}")]
    UnidentifiedLayer(String),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("no diamond with both length-two subquotients nonsplit")]
    NoDiamond,
    #[error("outside the representation window: {0}")]
    Window(String),
    #[error("lifting failed: {0}")]
    Lift(String),
}
