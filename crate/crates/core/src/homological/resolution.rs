use std::fmt;

use serde_json::{json, Value};

use super::projsum::{label_of, ProjectiveSum};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::repr::{kernel, radical_power_bases, ModuleMorphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolutionKind {
    MinimalProjective,
    MinimalInjective,
}

/// A projective cover or injective envelope.
#[derive(Clone, Debug)]
pub struct Approximation {
    /// 0-based vertices of the indecomposable summands.
    pub vertices: Vec<usize>,
    pub module: Representation,
    /// `P -> M` for a cover, `M -> I` for an envelope.
    pub map: ModuleMorphism,
}

pub(crate) fn cover_sum(m: &Representation) -> (ProjectiveSum, ModuleMorphism) {
    let rad = radical_power_bases(m, 1);
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for (v, basis) in rad.iter().enumerate() {
        for c in basis.complement_standard() {
            let mut x = vec![Q::default(); m.dims()[v]];
            x[c] = Q::from_integer(1.into());
            vertices.push(v);
            images.push(x);
        }
    }
    let sum = ProjectiveSum::new(m.algebra(), vertices);
    let map = sum.map_from_generators(m, &images);
    (sum, map)
}

/// Projective cover `⊕ P(i)^{m_i} -> M`, one summand per top basis vector.
pub fn projective_cover(m: &Representation) -> Approximation {
    let (sum, map) = cover_sum(m);
    Approximation {
        vertices: sum.vertices,
        module: sum.module,
        map,
    }
}

/// Injective envelope `M -> ⊕ I(i)^{m_i}`, dual to the cover of `DM`.
pub fn injective_envelope(m: &Representation) -> Approximation {
    let home = m.algebra();
    let (sum, map) = cover_sum(&m.dual());
    let dual = map.dual_onto(home);
    Approximation {
        vertices: sum.vertices,
        module: dual.target().clone(),
        map: ModuleMorphism::from_parts(m.clone(), dual.target().clone(), dual.blocks().to_vec()),
    }
}

/// A minimal projective resolution or minimal injective coresolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub kind: ResolutionKind,
    pub base: Representation,
    pub terms: Vec<Representation>,
    /// 0-based vertices of the summands of each term.
    pub summands: Vec<Vec<usize>>,
    /// Projective: `maps[0]: P_0 -> M`, `maps[k]: P_k -> P_{k-1}`.
    /// Injective: `maps[0]: M -> I^0`, `maps[k]: I^{k-1} -> I^k`.
    pub maps: Vec<ModuleMorphism>,
    /// `Ω^0 M = M, Ω^1 M, ...` (cosyzygies for the injective kind).
    pub syzygies: Vec<Representation>,
    pub exhausted: bool,
    /// Projective terms with path coordinates; for the injective kind these
    /// live over the opposite algebra.
    pub(crate) sums: Vec<ProjectiveSum>,
}

/// Build `P_0, ..., P_{max_len}` or stop once a syzygy vanishes.
pub(crate) fn resolve_projective(m: &Representation, max_len: usize) -> Resolution {
    let mut omega = m.clone();
    let mut incl: Option<ModuleMorphism> = None;
    let mut out = Resolution {
        kind: ResolutionKind::MinimalProjective,
        base: m.clone(),
        terms: Vec::new(),
        summands: Vec::new(),
        maps: Vec::new(),
        syzygies: vec![m.clone()],
        exhausted: false,
        sums: Vec::new(),
    };
    for _ in 0..=max_len {
        if omega.is_zero() {
            break;
        }
        let (sum, pi) = cover_sum(&omega);
        let d = match &incl {
            Some(i) => i.compose(&pi),
            None => pi.clone(),
        };
        let (k, iota) = kernel(&pi);
        out.terms.push(sum.module.clone());
        out.summands.push(sum.vertices.clone());
        out.maps.push(d);
        out.sums.push(sum);
        out.syzygies.push(k.clone());
        omega = k;
        incl = Some(iota);
    }
    out.exhausted = omega.is_zero();
    out
}

pub(crate) fn resolve_injective(m: &Representation, max_len: usize) -> Resolution {
    let home = m.algebra();
    let dual = resolve_projective(&m.dual(), max_len);
    let terms: Vec<Representation> = dual.terms.iter().map(|t| t.dual_onto(home)).collect();
    let mut maps = Vec::with_capacity(dual.maps.len());
    for (k, f) in dual.maps.iter().enumerate() {
        let d = f.dual_onto(home);
        let source = if k == 0 { m.clone() } else { terms[k - 1].clone() };
        maps.push(ModuleMorphism::from_parts(source, terms[k].clone(), d.blocks().to_vec()));
    }
    let mut syzygies: Vec<Representation> = dual.syzygies.iter().map(|s| s.dual_onto(home)).collect();
    syzygies[0] = m.clone();
    Resolution {
        kind: ResolutionKind::MinimalInjective,
        base: m.clone(),
        terms,
        summands: dual.summands,
        maps,
        syzygies,
        exhausted: dual.exhausted,
        sums: dual.sums,
    }
}

/// Minimal projective resolution with at most `max_len + 1` terms.
pub fn min_projective_resolution(m: &Representation, max_len: usize) -> Result<Resolution> {
    let r = resolve_projective(m, max_len);
    if !r.exhausted {
        return Err(Error::BudgetExceeded { max_len });
    }
    Ok(r)
}

pub fn min_injective_coresolution(m: &Representation, max_len: usize) -> Result<Resolution> {
    let r = resolve_injective(m, max_len);
    if !r.exhausted {
        return Err(Error::BudgetExceeded { max_len });
    }
    Ok(r)
}

/// `Ω^i M`.
pub fn syzygy(m: &Representation, i: usize) -> Representation {
    let r = resolve_projective(m, i.saturating_sub(1));
    r.syzygies
        .get(i)
        .cloned()
        .unwrap_or_else(|| Representation::zero(m.algebra().clone()))
}

/// `Ω^{-i} M`.
pub fn cosyzygy(m: &Representation, i: usize) -> Representation {
    let r = resolve_injective(m, i.saturating_sub(1));
    r.syzygies
        .get(i)
        .cloned()
        .unwrap_or_else(|| Representation::zero(m.algebra().clone()))
}

impl Resolution {
    /// Index of the last nonzero term; `None` when the base is zero.
    pub fn length(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn term_label(&self, k: usize) -> String {
        let letter = match self.kind {
            ResolutionKind::MinimalProjective => "P",
            ResolutionKind::MinimalInjective => "I",
        };
        label_of(&self.summands[k], letter)
    }

    /// Composites of consecutive maps vanish and ranks add up at every term.
    pub fn is_exact(&self) -> bool {
        let Some(first) = self.maps.first() else {
            return self.base.is_zero();
        };
        let projective = self.kind == ResolutionKind::MinimalProjective;
        let at_base = if projective { first.is_surjective() } else { first.is_injective() };
        if !at_base {
            return false;
        }
        let last = self.terms.len() - 1;
        (0..self.terms.len()).all(|k| {
            let (into, out_of) = if projective {
                (self.maps.get(k + 1), Some(&self.maps[k]))
            } else {
                (Some(&self.maps[k]), self.maps.get(k + 1))
            };
            if let (Some(i), Some(o)) = (into, out_of) {
                if !o.compose(i).is_zero() {
                    return false;
                }
            }
            if k == last && !self.exhausted {
                return true;
            }
            let r = into.map_or(0, ModuleMorphism::rank) + out_of.map_or(0, ModuleMorphism::rank);
            r == self.terms[k].dim()
        })
    }

    /// Projective kind: each `P_k -> Ω^k` has kernel inside `rad P_k`.
    /// Injective kind: each `Ω^{-k} -> I^k` is socle-essential, i.e. the
    /// socle of `I^k` lies in the image.
    pub fn is_minimal(&self) -> bool {
        match self.kind {
            ResolutionKind::MinimalProjective => (0..self.terms.len()).all(|k| {
                let Some(next) = self.maps.get(k + 1) else {
                    return true;
                };
                let rad = radical_power_bases(&self.terms[k], 1);
                next.blocks().iter().zip(&rad).all(|(b, r)| contains(r, b))
            }),
            ResolutionKind::MinimalInjective => (0..self.terms.len()).all(|k| {
                let (_, incl) = crate::repr::socle(&self.terms[k]);
                incl.blocks()
                    .iter()
                    .zip(self.maps[k].blocks())
                    .all(|(s, img)| contains(img, s))
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = (0..self.terms.len())
            .map(|k| {
                let summands: Vec<usize> = self.summands[k].iter().map(|v| v + 1).collect();
                json!({
                    "index": k,
                    "label": self.term_label(k),
                    "summands": summands,
                    "dims": self.terms[k].dims(),
                })
            })
            .collect();
        let maps: Vec<Value> = self
            .maps
            .iter()
            .map(|f| {
                let blocks: Vec<Vec<Vec<String>>> = f.blocks().iter().map(Matrix::entries_as_strings).collect();
                json!({
                    "source_dims": f.source().dims(),
                    "target_dims": f.target().dims(),
                    "blocks": blocks,
                })
            })
            .collect();
        json!({
            "kind": self.kind,
            "base_dims": self.base.dims(),
            "exhausted": self.exhausted,
            "length": self.length(),
            "terms": terms,
            "maps": maps,
        })
    }
}

/// Column space of `inner` lies inside that of `outer`.
fn contains(outer: &Matrix, inner: &Matrix) -> bool {
    if inner.cols() == 0 || inner.is_zero() {
        return true;
    }
    outer.hstack(inner).rank() == outer.rank()
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            ResolutionKind::MinimalProjective => "P_",
            ResolutionKind::MinimalInjective => "I^",
        };
        for k in 0..self.terms.len() {
            writeln!(f, "{letter}{k} = {}", self.term_label(k))?;
        }
        if !self.exhausted {
            writeln!(f, "(not exhausted)")?;
        }
        Ok(())
    }
}
