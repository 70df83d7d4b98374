use serde::Serialize;

use super::atlas::IndecomposableAtlas;
use crate::error::{Error, Result};
use crate::homological::ShortExactSequence;
use crate::linalg::{Matrix, Q};
use crate::repr::{end_ring, hom_space, is_indecomposable, is_isomorphic, ModuleMorphism, Representation};

#[derive(Clone, Debug, Serialize)]
pub struct AlmostSplitVerdict {
    pub non_split: bool,
    pub right_almost_split: bool,
    /// Labels of atlas members with a non-retraction that fails to lift.
    pub failures: Vec<String>,
}

impl AlmostSplitVerdict {
    pub fn holds(&self) -> bool {
        self.non_split && self.right_almost_split
    }
}

fn span_matrix(maps: &[ModuleMorphism]) -> Matrix {
    let cols: Vec<Vec<Q>> = maps.iter().map(ModuleMorphism::flatten).collect();
    let len = cols.first().map_or(0, Vec::len);
    Matrix::from_columns(len, &cols)
}

/// Columns of `inner` lie in the column span of `outer`.
fn spans(outer: &Matrix, inner: &Matrix) -> bool {
    if inner.cols() == 0 {
        return true;
    }
    if outer.cols() == 0 {
        return inner.is_zero();
    }
    outer.hstack(inner).rank() == outer.rank()
}

/// `g_* Hom(M, B)` as flattened columns in `Hom(M, C)`.
fn lifted(m: &Representation, g: &ModuleMorphism) -> Result<Matrix> {
    let through: Vec<ModuleMorphism> = hom_space(m, g.source())?.iter().map(|h| g.compose(h)).collect();
    Ok(span_matrix(&through))
}

/// Is `seq` an almost split sequence? Non-split is decided by solving
/// `g ∘ s = id_C`; right almost split by lifting every non-retraction
/// `M -> C` from an atlas member through `g`.
pub fn almost_split_check(seq: &ShortExactSequence, atlas: &IndecomposableAtlas) -> Result<AlmostSplitVerdict> {
    let seq = ShortExactSequence::new(seq.inclusion.clone(), seq.projection.clone())?;
    if !crate::repr::same_algebra(seq.middle().algebra(), &atlas.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if !is_indecomposable(seq.left()) || !is_indecomposable(seq.right()) {
        return Err(Error::NotExact("end terms must be indecomposable".into()));
    }
    let g = &seq.projection;
    let c = seq.right();
    let through = lifted(c, g)?;
    let id = span_matrix(&[ModuleMorphism::identity(c)]);
    let non_split = !spans(&through, &id);

    let mut failures = Vec::new();
    for (m, label) in atlas.modules.iter().zip(&atlas.labels) {
        let ok = if m.dims() == c.dims() && is_isomorphic(m, c)? {
            let end = end_ring(c);
            let rad: Vec<ModuleMorphism> = (0..end.radical.cols())
                .map(|j| {
                    let coords = end.radical.column(j);
                    let terms: Vec<(Q, &ModuleMorphism)> = coords.into_iter().zip(&end.basis).collect();
                    ModuleMorphism::combination(c, c, &terms)
                })
                .collect();
            spans(&through, &span_matrix(&rad))
        } else {
            spans(&lifted(m, g)?, &span_matrix(&hom_space(m, c)?))
        };
        if !ok {
            failures.push(label.clone());
        }
    }
    Ok(AlmostSplitVerdict {
        non_split,
        right_almost_split: failures.is_empty(),
        failures,
    })
}
