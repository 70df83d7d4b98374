//! Finite-dimensional bound quiver algebras over the rationals and the
//! homological invariants of their representations.

pub mod algebra;
pub mod error;
pub mod format;
pub mod homological;
pub mod linalg;
pub mod orthogonal;
pub mod repr;
pub mod structure;

pub use algebra::{compute_algebra, named_fixture, AlgebraTable, FixtureTag, QuiverPresentation};
pub use error::{Error, Result};
pub use homological::{Dimension, Resolution};
pub use linalg::{Matrix, Q};
pub use repr::{ModuleMorphism, Representation};
