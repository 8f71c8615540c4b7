//! Polarity and hyperpolarity of isometric actions `(a, b)·g = a g b⁻¹` of
//! subgroups `H ⊆ L × L` on a compact simple Lie group `L`, decided on the
//! Lie algebra level.
//!
//! Algebras are spans of real skew-symmetric matrices ([`LieAlgebra`]),
//! subalgebras of `l` or `l ⊕ l` are orthonormal coefficient bases
//! ([`Subalgebra`]), and [`action::analyze`] samples for a principal point
//! and evaluates the criterion there.

pub mod action;
pub mod catalog;
pub mod error;
pub mod lie_algebras;
pub mod numerics;
pub mod subalgebras;

pub use action::{analyze, cohomogeneity, is_transitive, polarity_check, ActionSpec, PolarityReport};
pub use error::{Error, Result};
pub use lie_algebras::{build_classical, Automorphism, AutomorphismSpec, Family, LieAlgebra};
pub use numerics::{InnerProduct, ToleranceConfig};
pub use subalgebras::{Parent, Subalgebra};
