mod almost_split;
mod atlas;
mod mos;

pub use almost_split::{almost_split_check, AlmostSplitVerdict};
pub use atlas::{nakayama_atlas, AtlasOrigin, IndecomposableAtlas};
pub use mos::{enumerate_mos, enumerate_with_table, ext_table, orthogonal_sets, ExtTable, SubcategoryCandidate};
