mod dims;
mod projsum;
mod resolution;
mod sequence;

use std::fmt;

pub use dims::{
    default_budget, ext_dim, ext_dims_against, ext_dim_injective, ext_transpose_module, global_dimension, grade, id, pd, pd_within,
};
pub use sequence::{syzygy_sequence, ShortExactSequence};
pub use projsum::{label_of, ProjectiveSum};
pub use resolution::{
    cosyzygy, injective_envelope, min_injective_coresolution, min_projective_resolution, projective_cover, syzygy,
    Approximation, Resolution, ResolutionKind,
};

/// A homological dimension. `Finite` orders below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dimension::Finite(_))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Dimension {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(n) => s.serialize_u64(*n as u64),
            Dimension::Infinite => s.serialize_str("inf"),
        }
    }
}
