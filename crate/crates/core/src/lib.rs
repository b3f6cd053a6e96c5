//! Finite 2-groups, their group algebras over GF(2), and the exponent of the
//! normalized unit group `V(F₂G)`, with checks of the classification of the
//! groups for which that exponent is 4.

pub mod algebra;
pub mod catalog;
pub mod engine;
pub mod group;
pub mod report;
pub mod theorem;

pub use algebra::{AlgebraElement, AlgebraError, GroupAlgebra};
pub use catalog::{builtin, CatalogEntry, CatalogError};
pub use engine::{EngineConfig, EngineError, ExponentResult, ExponentValue, Method};
pub use group::{Elem, Group, GroupError, Subgroup};
pub use report::{RunConfig, VerificationReport};
pub use theorem::{CheckConfig, NamedCheck, Outcome, PredicateVerdict};
