//! Bound quiver algebras: presentations, multiplication tables, fixtures.

pub mod fixtures;
pub mod presentation;
pub mod table;

pub use fixtures::{named_fixture, FixtureTag};
pub use presentation::{Arrow, QuiverPresentation, Relation, Term};
pub use table::{compute_algebra, opposite_algebra, AlgebraTable, BasisPath, Combination};
