use super::resolution::cover_sum;
use crate::error::{Error, Result};
use crate::repr::{kernel, same_algebra, ModuleMorphism, Representation};

/// `0 -> A -> B -> C -> 0` given by `inclusion: A -> B` and
/// `projection: B -> C`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub inclusion: ModuleMorphism,
    pub projection: ModuleMorphism,
}

impl ShortExactSequence {
    /// Checks that the maps are composable, intertwine and form an exact
    /// sequence.
    pub fn new(inclusion: ModuleMorphism, projection: ModuleMorphism) -> Result<Self> {
        if !same_algebra(inclusion.source().algebra(), projection.source().algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if inclusion.target() != projection.source() {
            return Err(Error::NotExact("middle terms differ".into()));
        }
        if !inclusion.intertwines() || !projection.intertwines() {
            return Err(Error::NotExact("a map is not a module homomorphism".into()));
        }
        if !inclusion.is_injective() {
            return Err(Error::NotExact("first map is not injective".into()));
        }
        if !projection.is_surjective() {
            return Err(Error::NotExact("second map is not surjective".into()));
        }
        if !projection.compose(&inclusion).is_zero() {
            return Err(Error::NotExact("composite is nonzero".into()));
        }
        if inclusion.source().dim() + projection.target().dim() != projection.source().dim() {
            return Err(Error::NotExact("image and kernel differ".into()));
        }
        Ok(ShortExactSequence { inclusion, projection })
    }

    pub fn left(&self) -> &Representation {
        self.inclusion.source()
    }

    pub fn middle(&self) -> &Representation {
        self.projection.source()
    }

    pub fn right(&self) -> &Representation {
        self.projection.target()
    }
}

/// `0 -> Ω^{i+1} M -> P_i(M) -> Ω^i M -> 0`, or `None` once `Ω^i M` vanishes.
pub fn syzygy_sequence(m: &Representation, i: usize) -> Option<ShortExactSequence> {
    let mut omega = m.clone();
    for k in 0..=i {
        if omega.is_zero() {
            return None;
        }
        let (_, pi) = cover_sum(&omega);
        let (next, iota) = kernel(&pi);
        if k == i {
            return Some(ShortExactSequence {
                inclusion: iota,
                projection: pi,
            });
        }
        omega = next;
    }
    None
}
