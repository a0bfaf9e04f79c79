//! Exact computation of actors and split extensions for finite-dimensional
//! non-associative algebras over ℚ and prime fields.

pub mod actor;
pub mod algebra;
pub mod catalog;
pub(crate) mod constraints;
pub mod error;
pub mod extension;
pub mod identity;
pub mod linalg;
pub mod poisson;
pub mod scalar;
pub mod variety;

pub use actor::{
    alt_actor_equations_check, alt_equations_space, bimultiplier_equations_space, derivations, external_weak_actor,
    multipliers, operator_constraints, partial_product, ActorElement, ActorSpace, LambdaMuRules, ProductRules,
};
pub use algebra::{Algebra, Element};
pub use error::{Error, Result};
pub use extension::{
    enumerate_split_extensions, extension_to_acting_morphism, inn_map, permutability_check, semidirect_product,
    verify_bijection, ActingMorphism, AlgebraMorphism, BijectionReport, InnReport, SplitExtensionData, DEFAULT_BUDGET,
};
pub use identity::{check_identity, evaluate_identity, parse_identity, IdentityCheck, MultilinearIdentity};
pub use linalg::{nullspace_basis, solve_linear, subspace_membership, Matrix, RowEchelon, Subspace};
pub use poisson::{
    poisson_acting_check, usga, usga_bracket, usga_multiply, z_center_actor_check, CenterReport, PoissonActorElement,
    PoissonActorSpace,
};
pub use scalar::{Field, Scalar};
pub use variety::{Preset, Variety};
