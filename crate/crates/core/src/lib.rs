//! Quadratic modules over finite groups.
//!
//! Groups are closed multiplication tables; every construction is verified
//! by exhaustion over its elements.

pub mod abelian;
pub mod action;
pub mod bundle;
pub mod catalog;
pub mod coset;
pub mod corpus;
pub mod error;
pub mod group;
pub mod hom;
pub mod induced;
pub mod nil2;
pub mod pullback;
pub mod quadratic;

pub use abelian::{abelian_invariants, tensor_square, tensor_square_order, AbelianDecomposition, TensorSquare};
pub use bundle::{Bundle, Object};
pub use action::{displacement_subgroup, GroupAction};
pub use error::{Error, Result};
pub use group::{normal_closure, normal_subgroups, quotient, FiniteGroup, GroupRef, Subgroup};
pub use hom::{enumerate_homs, GroupHom, HomBound};
pub use nil2::{classify, quadratic_base, Classification, Nil2Module, PreCrossedModule, QuadraticBase};
pub use quadratic::{verify_quadratic, QuadraticCandidate, QuadraticModule, QuadraticMorphism, VerificationReport};
