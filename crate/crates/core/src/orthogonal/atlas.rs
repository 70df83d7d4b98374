use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::repr::{
    injective_at, is_indecomposable, is_isomorphic, projective_at, quotient, radical_power_bases, radical_layers,
    Representation,
};
use crate::structure::is_nakayama;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtlasOrigin {
    NakayamaEnumeration,
    UserSupplied,
}

/// Pairwise non-isomorphic indecomposables, complete for `mod Λ` when built
/// by enumeration.
#[derive(Clone, Debug)]
pub struct IndecomposableAtlas {
    pub algebra: Arc<AlgebraTable>,
    pub modules: Vec<Representation>,
    pub labels: Vec<String>,
    pub origin: AtlasOrigin,
    /// Atlas index of `P(v)` for each 0-based vertex `v`.
    pub projective_indices: Vec<usize>,
    /// Atlas index of `I(v)`.
    pub injective_indices: Vec<usize>,
}

fn interval_label(v: usize, l: usize, full: usize) -> String {
    match l {
        1 => format!("S({})", v + 1),
        _ if l == full => format!("P({})", v + 1),
        _ => format!("P({})/rad^{l}", v + 1),
    }
}

fn position_of(modules: &[Representation], m: &Representation) -> Result<Option<usize>> {
    for (i, x) in modules.iter().enumerate() {
        if x.dims() == m.dims() && is_isomorphic(x, m)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `P(i)/rad^l M` for every vertex and every `1 <= l <= length P(i)`.
pub fn nakayama_atlas(a: &Arc<AlgebraTable>) -> Result<IndecomposableAtlas> {
    if !is_nakayama(a)? {
        return Err(Error::NotNakayama);
    }
    let mut modules = Vec::new();
    let mut labels = Vec::new();
    for v in 0..a.vertex_count() {
        let p = projective_at(a, v);
        let full = radical_layers(&p).len();
        for l in 1..=full {
            let (m, _) = quotient(&p, &radical_power_bases(&p, l));
            if position_of(&modules, &m)?.is_none() {
                modules.push(m);
                labels.push(interval_label(v, l, full));
            }
        }
    }
    IndecomposableAtlas::assemble(a, modules, labels, AtlasOrigin::NakayamaEnumeration)
}

impl IndecomposableAtlas {
    /// An atlas from a user list. Completeness is attested by the caller;
    /// every member must be indecomposable, and duplicates are dropped.
    pub fn user_supplied(a: &Arc<AlgebraTable>, named: Vec<(String, Representation)>) -> Result<Self> {
        let mut modules = Vec::new();
        let mut labels = Vec::new();
        for (name, m) in named {
            if !crate::repr::same_algebra(m.algebra(), a) {
                return Err(Error::AlgebraMismatch);
            }
            if !is_indecomposable(&m) {
                return Err(Error::InvalidModule(format!("{name} is not indecomposable")));
            }
            if position_of(&modules, &m)?.is_none() {
                modules.push(m);
                labels.push(name);
            }
        }
        Self::assemble(a, modules, labels, AtlasOrigin::UserSupplied)
    }

    fn assemble(
        a: &Arc<AlgebraTable>,
        modules: Vec<Representation>,
        labels: Vec<String>,
        origin: AtlasOrigin,
    ) -> Result<Self> {
        let locate = |m: Representation, what: &str| -> Result<usize> {
            position_of(&modules, &m)?.ok_or_else(|| Error::AtlasIncomplete(what.to_string()))
        };
        let mut projective_indices = Vec::new();
        let mut injective_indices = Vec::new();
        for v in 0..a.vertex_count() {
            projective_indices.push(locate(projective_at(a, v), &format!("P({}) missing", v + 1))?);
            injective_indices.push(locate(injective_at(a, v), &format!("I({}) missing", v + 1))?);
        }
        Ok(IndecomposableAtlas {
            algebra: a.clone(),
            modules,
            labels,
            origin,
            projective_indices,
            injective_indices,
        })
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.origin == AtlasOrigin::NakayamaEnumeration
    }

    pub fn is_projective(&self, i: usize) -> bool {
        self.projective_indices.contains(&i)
    }

    pub fn is_injective(&self, i: usize) -> bool {
        self.injective_indices.contains(&i)
    }

    /// Sorted indices of projectives and injectives.
    pub fn seed(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .projective_indices
            .iter()
            .chain(&self.injective_indices)
            .copied()
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Index of the member isomorphic to `m`.
    pub fn find(&self, m: &Representation) -> Result<Option<usize>> {
        position_of(&self.modules, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compute_algebra, named_fixture, FixtureTag};
    use crate::repr::end_ring;

    fn alg(tag: FixtureTag) -> Arc<AlgebraTable> {
        compute_algebra(&named_fixture(tag).unwrap()).unwrap()
    }

    #[test]
    fn a_n_has_two_n_plus_one_members() {
        for n in 2..=4 {
            let atlas = nakayama_atlas(&alg(FixtureTag::A(n))).unwrap();
            assert_eq!(atlas.len(), 2 * n + 1);
        }
        let atlas = nakayama_atlas(&alg(FixtureTag::A(2))).unwrap();
        assert_eq!(atlas.labels, vec!["S(1)", "S(2)", "P(2)", "S(3)", "P(3)"]);
    }

    #[test]
    fn rem_has_fourteen_members() {
        let atlas = nakayama_atlas(&alg(FixtureTag::Rem)).unwrap();
        assert_eq!(atlas.len(), 14);
        assert!(atlas.is_complete());
    }

    #[test]
    fn members_have_local_endomorphism_rings() {
        for tag in [FixtureTag::A(3), FixtureTag::E410(3), FixtureTag::E66, FixtureTag::Rem] {
            let atlas = nakayama_atlas(&alg(tag)).unwrap();
            let total: usize = atlas.modules.iter().map(|m| end_ring(m).semisimple_dim()).sum();
            assert_eq!(total, atlas.len());
        }
    }

    #[test]
    fn e65_is_rejected() {
        assert!(matches!(nakayama_atlas(&alg(FixtureTag::E65)), Err(Error::NotNakayama)));
    }

    #[test]
    fn user_atlas_requires_projectives_and_injectives() {
        let a = alg(FixtureTag::A(2));
        let named = vec![("S1".to_string(), Representation::simple(&a, 1).unwrap())];
        assert!(matches!(
            IndecomposableAtlas::user_supplied(&a, named),
            Err(Error::AtlasIncomplete(_))
        ));
        let full = nakayama_atlas(&a).unwrap();
        let named = full.labels.iter().cloned().zip(full.modules.iter().cloned()).collect();
        let user = IndecomposableAtlas::user_supplied(&a, named).unwrap();
        assert_eq!(user.len(), 5);
        assert!(!user.is_complete());
    }
}
