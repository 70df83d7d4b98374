mod verify;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::homological::{ext_dim, global_dimension, id, min_injective_coresolution, pd, Dimension};
use crate::repr::{injective_at, is_isomorphic, is_uniserial, projective_at, simple_at, Representation};

pub use verify::{is_canonical_shape, verify_theorem, Evidence, TheoremId, Verdict};

/// Per-vertex facts about indecomposable injectives and projectives, cached
/// for one algebra.
pub(crate) struct Catalogue {
    pub algebra: Arc<AlgebraTable>,
    pub projectives: Vec<Representation>,
    pub injectives: Vec<Representation>,
    /// `I(v)` is isomorphic to some `P(j)`.
    pub injective_is_projective: Vec<bool>,
}

impl Catalogue {
    pub fn new(a: &Arc<AlgebraTable>) -> Result<Self> {
        let projectives: Vec<Representation> = (0..a.vertex_count()).map(|v| projective_at(a, v)).collect();
        let injectives: Vec<Representation> = (0..a.vertex_count()).map(|v| injective_at(a, v)).collect();
        let mut injective_is_projective = Vec::new();
        for i in &injectives {
            let mut hit = false;
            for p in &projectives {
                if p.dims() == i.dims() && is_isomorphic(p, i)? {
                    hit = true;
                    break;
                }
            }
            injective_is_projective.push(hit);
        }
        Ok(Catalogue {
            algebra: a.clone(),
            projectives,
            injectives,
            injective_is_projective,
        })
    }

    /// 0-based summand vertices of `I^0(Λ), ..., I^{upto}(Λ)`.
    pub fn regular_coresolution(&self, upto: usize) -> Result<Vec<Vec<usize>>> {
        let lambda = Representation::regular(&self.algebra);
        let budget = upto.max(2 * self.algebra.dimension());
        let r = min_injective_coresolution(&lambda, budget)?;
        let mut terms: Vec<Vec<usize>> = r.summands.into_iter().take(upto + 1).collect();
        terms.resize(upto + 1, Vec::new());
        Ok(terms)
    }

    /// `pd` of a direct sum of indecomposable injectives.
    pub fn injective_sum_pd(&self, vertices: &[usize]) -> Result<Dimension> {
        let mut best = Dimension::Finite(0);
        for &v in vertices {
            best = best.max(pd(&self.injectives[v])?);
        }
        Ok(best)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleEntry {
    /// 1-based vertex.
    pub vertex: usize,
    pub pd: Dimension,
    pub id: Dimension,
    pub is_projective: bool,
    pub is_injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleClassification {
    pub simples: Vec<SimpleEntry>,
}

impl SimpleClassification {
    pub fn of(a: &Arc<AlgebraTable>) -> Result<Self> {
        let mut simples = Vec::new();
        for v in 0..a.vertex_count() {
            let s = simple_at(a, v);
            let (p, i) = (pd(&s)?, id(&s)?);
            simples.push(SimpleEntry {
                vertex: v + 1,
                pd: p,
                id: i,
                is_projective: p == Dimension::Finite(0),
                is_injective: i == Dimension::Finite(0),
            });
        }
        Ok(SimpleClassification { simples })
    }

    pub fn global_dimension(&self) -> Dimension {
        self.simples.iter().map(|s| s.pd).max().unwrap_or(Dimension::Finite(0))
    }

    /// 1-based vertices of simples with `pd = d`.
    pub fn with_pd(&self, d: Dimension) -> Vec<usize> {
        self.simples.iter().filter(|s| s.pd == d).map(|s| s.vertex).collect()
    }

    pub fn entry(&self, vertex: usize) -> &SimpleEntry {
        &self.simples[vertex - 1]
    }
}

/// `gl.dim <= n + 1` and `I^0(Λ), ..., I^n(Λ)` projective.
pub fn is_n_auslander(a: &Arc<AlgebraTable>, n: usize) -> Result<bool> {
    let cat = Catalogue::new(a)?;
    auslander_with(&cat, global_dimension(a)?, n)
}

pub(crate) fn auslander_with(cat: &Catalogue, gl: Dimension, n: usize) -> Result<bool> {
    if gl > Dimension::Finite(n + 1) {
        return Ok(false);
    }
    let terms = cat.regular_coresolution(n)?;
    Ok(terms.iter().flatten().all(|&v| cat.injective_is_projective[v]))
}

/// `pd I^i(Λ) <= i` for `0 <= i < n`.
pub fn is_n_gorenstein(a: &Arc<AlgebraTable>, n: usize) -> Result<bool> {
    gorenstein_with(&Catalogue::new(a)?, n)
}

pub(crate) fn gorenstein_with(cat: &Catalogue, n: usize) -> Result<bool> {
    if n == 0 {
        return Ok(true);
    }
    let terms = cat.regular_coresolution(n - 1)?;
    for (i, t) in terms.iter().enumerate() {
        if cat.injective_sum_pd(t)? > Dimension::Finite(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The simple-module criterion for a trivial maximal `(n-1)`-orthogonal
/// subcategory, with `n = gl.dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialMosCriterion {
    pub gl_dim: Dimension,
    /// `gl.dim = n >= 2` and the algebra is `(n-1)`-Auslander.
    pub hypothesis_met: bool,
    /// Every simple with `pd = gl.dim` is injective.
    pub holds: bool,
    /// 1-based vertex: an offending simple when `holds` is false, otherwise
    /// the first simple with `pd = gl.dim`.
    pub witness: Option<usize>,
}

pub(crate) fn criterion_with(cat: &Catalogue, simples: &SimpleClassification) -> Result<TrivialMosCriterion> {
    let gl = simples.global_dimension();
    let hypothesis_met = match gl {
        Dimension::Finite(n) if n >= 2 => auslander_with(cat, gl, n - 1)?,
        _ => false,
    };
    let top = simples.with_pd(gl);
    let offending = top.iter().copied().find(|&v| !simples.entry(v).is_injective);
    Ok(TrivialMosCriterion {
        gl_dim: gl,
        hypothesis_met,
        holds: offending.is_none(),
        witness: offending.or(top.first().copied()),
    })
}

/// The criterion without checking its hypothesis.
pub fn trivial_mos_criterion(a: &Arc<AlgebraTable>) -> Result<TrivialMosCriterion> {
    criterion_with(&Catalogue::new(a)?, &SimpleClassification::of(a)?)
}

/// Does the algebra admit a trivial maximal `(n-1)`-orthogonal subcategory?
/// Only asserted for `(n-1)`-Auslander algebras of global dimension `n >= 2`.
pub fn admits_trivial_mos(a: &Arc<AlgebraTable>) -> Result<TrivialMosCriterion> {
    let c = trivial_mos_criterion(a)?;
    if !c.hypothesis_met {
        return Err(Error::PreconditionUnmet(format!(
            "need an (n-1)-Auslander algebra with gl.dim = n >= 2; gl.dim is {}",
            c.gl_dim
        )));
    }
    Ok(c)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Blocks as sorted lists of 1-based vertices, from `Ext^1` between simples.
pub fn blocks(a: &Arc<AlgebraTable>) -> Result<Vec<Vec<usize>>> {
    let k = a.vertex_count();
    let simples: Vec<Representation> = (0..k).map(|v| simple_at(a, v)).collect();
    let mut parent: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in 0..k {
            if i != j && ext_dim(&simples[i], &simples[j], 1)? > 0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..k {
        by_root.entry(find(&mut parent, v)).or_default().push(v + 1);
    }
    let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
    let mut quiver: Vec<Vec<usize>> = a
        .components()
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|v| v + 1).collect();
            c.sort_unstable();
            c
        })
        .collect();
    quiver.sort();
    groups.sort();
    if groups != quiver {
        return Err(Error::Internal(format!(
            "Ext blocks {groups:?} disagree with quiver components {quiver:?}"
        )));
    }
    Ok(groups)
}

/// Every vertex has at most one incoming and one outgoing arrow.
pub fn has_nakayama_quiver(a: &AlgebraTable) -> bool {
    let k = a.vertex_count();
    let (mut ins, mut outs) = (vec![0usize; k], vec![0usize; k]);
    for arrow in 0..a.arrow_count() {
        let (s, t) = a.arrow_ends(arrow);
        outs[s] += 1;
        ins[t] += 1;
    }
    ins.iter().chain(&outs).all(|&d| d <= 1)
}

/// All `P(i)` and `I(i)` uniserial, cross-checked against the quiver shape.
pub fn is_nakayama(a: &Arc<AlgebraTable>) -> Result<bool> {
    let by_modules = (0..a.vertex_count())
        .all(|v| is_uniserial(&projective_at(a, v)) && is_uniserial(&injective_at(a, v)));
    if by_modules != has_nakayama_quiver(a) {
        return Err(Error::Internal(format!(
            "uniseriality ({by_modules}) disagrees with the quiver shape test"
        )));
    }
    Ok(by_modules)
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub vertex_count: usize,
    pub dimension: usize,
    pub is_connected: bool,
    pub blocks: Vec<Vec<usize>>,
    pub gl_dim: Dimension,
    pub simples: SimpleClassification,
    pub auslander_order: Option<usize>,
    pub is_nakayama: bool,
    pub admits_trivial_mos: TrivialMosCriterion,
    /// Set when the criterion is reported outside its hypothesis.
    pub trivial_mos_note: Option<String>,
    pub gorenstein_orders: Vec<usize>,
    /// The largest `n` checked for the Gorenstein property.
    pub gorenstein_range: usize,
    pub corollary_4_12_flag: bool,
}

pub fn structure_report(a: &Arc<AlgebraTable>) -> Result<StructureReport> {
    let cat = Catalogue::new(a)?;
    let simples = SimpleClassification::of(a)?;
    let gl = simples.global_dimension();
    let range = gl.finite().unwrap_or(a.vertex_count()).max(1);
    let mut auslander_order = None;
    for n in 1..=range {
        if auslander_with(&cat, gl, n)? {
            auslander_order = Some(n);
        }
    }
    let mut gorenstein_orders = Vec::new();
    for n in 1..=range {
        if gorenstein_with(&cat, n)? {
            gorenstein_orders.push(n);
        }
    }
    let criterion = criterion_with(&cat, &simples)?;
    let note = (!criterion.hypothesis_met)
        .then(|| "criterion not asserted outside (n-1)-Auslander algebras with gl.dim n >= 2".to_string());
    let corollary_4_12_flag = gl == Dimension::Finite(2) && auslander_with(&cat, gl, 1)? && criterion.holds;
    Ok(StructureReport {
        vertex_count: a.vertex_count(),
        dimension: a.dimension(),
        is_connected: a.is_connected(),
        blocks: blocks(a)?,
        gl_dim: gl,
        simples,
        auslander_order,
        is_nakayama: is_nakayama(a)?,
        admits_trivial_mos: criterion,
        trivial_mos_note: note,
        gorenstein_orders,
        gorenstein_range: range,
        corollary_4_12_flag,
    })
}
