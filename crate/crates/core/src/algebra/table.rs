use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::presentation::{QuiverPresentation, ResolvedRelation};
use crate::error::{Error, Result};
use crate::linalg::Q;

/// Hard cap on enumerated paths; quivers needing more are far outside the
/// scale this crate targets.
const PATH_LIMIT: usize = 200_000;

/// A path of the quiver, kept as arrow indices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisPath {
    /// 0-based source vertex.
    pub source: usize,
    /// 0-based target vertex.
    pub target: usize,
    /// Arrow indices, first-applied arrow first. Empty for `e_v`.
    pub arrows: Vec<usize>,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Sparse linear combination of basis elements.
pub type Combination = Vec<(usize, Q)>;

/// `KQ/I` with a path basis and full structure constants.
pub struct AlgebraTable {
    presentation: QuiverPresentation,
    basis: Vec<BasisPath>,
    /// `product[x][y] = x * y` (apply `y`, then `x`).
    product: Vec<Vec<Combination>>,
    nilpotency_degree: usize,
    arrow_basis: Vec<usize>,
    trivial_basis: Vec<usize>,
    opposite: OnceLock<Arc<AlgebraTable>>,
}

impl PartialEq for AlgebraTable {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.basis == other.basis
    }
}

impl Eq for AlgebraTable {}

impl fmt::Debug for AlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraTable")
            .field("vertices", &self.vertex_count())
            .field("dimension", &self.dimension())
            .field(
                "basis",
                &(0..self.dimension())
                    .map(|i| self.path_label(i))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

type PathKey = (usize, Vec<usize>);

/// Row-echelon store of sparse vectors over path indices, keyed by the
/// largest path index in each row.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl Echelon {
    fn insert(&mut self, mut v: BTreeMap<usize, Q>) {
        v.retain(|_, c| !c.is_zero());
        while let Some((&lead, _)) = v.iter().next_back() {
            match self.rows.get(&lead) {
                Some(row) => {
                    let c = v[&lead].clone();
                    for (k, x) in row {
                        let e = v.entry(*k).or_insert_with(Q::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = v[&lead].recip();
                    for x in v.values_mut() {
                        *x *= &inv;
                    }
                    self.rows.insert(lead, v);
                    return;
                }
            }
        }
    }

    /// Reduce every row's tail by the rows below it.
    fn back_substitute(&mut self) {
        let leads: Vec<usize> = self.rows.keys().copied().collect();
        for lead in leads {
            let row = self.rows.remove(&lead).unwrap();
            let mut tail = row;
            tail.remove(&lead);
            let reduced = self.normal_form(tail);
            let mut row = reduced;
            row.insert(lead, Q::one());
            self.rows.insert(lead, row);
        }
    }

    fn normal_form(&self, mut v: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        loop {
            let hit = v
                .keys()
                .rev()
                .find(|k| self.rows.contains_key(k))
                .copied();
            let Some(k) = hit else { return v };
            let c = v.remove(&k).unwrap();
            for (j, x) in &self.rows[&k] {
                if *j == k {
                    continue;
                }
                let e = v.entry(*j).or_insert_with(Q::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(j);
                }
            }
        }
    }
}

struct PathSpace {
    paths: Vec<PathKey>,
    index: HashMap<PathKey, usize>,
}

impl PathSpace {
    /// All paths of length at most `bound`, sorted by (length, arrows).
    fn enumerate(p: &QuiverPresentation, bound: usize) -> Result<Self> {
        let mut by_len: Vec<Vec<PathKey>> = vec![(0..p.vertex_count).map(|v| (v, vec![])).collect()];
        let mut total = p.vertex_count;
        for len in 1..=bound {
            let mut next = Vec::new();
            for (src, arrows) in &by_len[len - 1] {
                let end = match arrows.last() {
                    Some(&a) => p.arrows[a].target - 1,
                    None => *src,
                };
                for (ai, a) in p.arrows.iter().enumerate() {
                    if a.source - 1 == end {
                        let mut path = arrows.clone();
                        path.push(ai);
                        next.push((*src, path));
                    }
                }
            }
            total += next.len();
            if total > PATH_LIMIT {
                return Err(Error::NotFiniteDimensional { bound });
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|x, y| x.1.cmp(&y.1));
            by_len.push(next);
        }
        let paths: Vec<PathKey> = by_len.into_iter().flatten().collect();
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        Ok(PathSpace { paths, index })
    }

    fn ending_at(&self, p: &QuiverPresentation, v: usize, max_len: usize) -> Vec<&PathKey> {
        self.paths
            .iter()
            .filter(|(s, a)| a.len() <= max_len && end_of(p, *s, a) == v)
            .collect()
    }

    fn starting_at(&self, v: usize, max_len: usize) -> Vec<&PathKey> {
        self.paths
            .iter()
            .filter(|(s, a)| a.len() <= max_len && *s == v)
            .collect()
    }
}

fn end_of(p: &QuiverPresentation, src: usize, arrows: &[usize]) -> usize {
    arrows.last().map_or(src, |&a| p.arrows[a].target - 1)
}

/// Feed the generators `u * r * w` of the ideal into `echelon`, keeping only
/// paths of length `<= budget`. With `truncate`, longer terms are dropped
/// (working modulo a radical power); without it, a generator is used only
/// when all of its terms fit.
fn ideal_generators(
    p: &QuiverPresentation,
    relations: &[ResolvedRelation],
    space: &PathSpace,
    budget: usize,
    truncate: bool,
    echelon: &mut Echelon,
) {
    for rel in relations {
        let reach = if truncate { rel.min_len() } else { rel.max_len() };
        if reach > budget {
            continue;
        }
        let spare = budget - reach;
        for (ws, w) in space.ending_at(p, rel.source, spare) {
            for (_, u) in space.starting_at(rel.target, spare - w.len()) {
                let mut v = BTreeMap::new();
                for (c, term) in &rel.terms {
                    let mut path = w.clone();
                    path.extend(term);
                    path.extend(u);
                    if path.len() > budget {
                        continue;
                    }
                    let idx = space.index[&(*ws, path)];
                    let e = v.entry(idx).or_insert_with(Q::zero);
                    *e += c;
                }
                echelon.insert(v);
            }
        }
    }
}

/// Build `KQ/I` by exact elimination on the path space.
///
/// First the ideal's span inside paths of bounded length is computed without
/// truncation, which certifies the smallest `N` with every length-`N` path in
/// the ideal. Then generators are reduced modulo paths of length `>= N`, and
/// the non-leading paths form the basis.
pub fn compute_algebra(p: &QuiverPresentation) -> Result<Arc<AlgebraTable>> {
    let relations = p.resolve()?;
    let bound = p.path_length_bound();
    let space = PathSpace::enumerate(p, bound)?;

    let mut exact = Echelon::default();
    ideal_generators(p, &relations, &space, bound, false, &mut exact);
    let longest = space.paths.last().map_or(0, |k| k.1.len());
    let in_ideal = |n: usize| {
        space
            .paths
            .iter()
            .enumerate()
            .filter(|(_, k)| k.1.len() == n)
            .all(|(i, _)| {
                exact
                    .normal_form(BTreeMap::from([(i, Q::one())]))
                    .is_empty()
            })
    };
    // Paths longer than `longest` exist only when enumeration hit the bound.
    let cutoff = match (0..=longest).find(|&n| in_ideal(n)) {
        Some(n) => n,
        None if longest < bound => longest + 1,
        None => return Err(Error::NotFiniteDimensional { bound }),
    };

    let mut reduced = Echelon::default();
    if cutoff > 0 {
        ideal_generators(p, &relations, &space, cutoff - 1, true, &mut reduced);
    }
    reduced.back_substitute();

    let below: Vec<usize> = (0..space.paths.len())
        .filter(|&i| space.paths[i].1.len() < cutoff)
        .collect();
    let mut basis_paths: Vec<usize> = below
        .iter()
        .copied()
        .filter(|i| !reduced.rows.contains_key(i))
        .collect();
    basis_paths.sort_by(|&a, &b| {
        let (sa, pa) = &space.paths[a];
        let (sb, pb) = &space.paths[b];
        let wa: Vec<usize> = pa.iter().rev().copied().collect();
        let wb: Vec<usize> = pb.iter().rev().copied().collect();
        (pa.len(), if pa.is_empty() { *sa } else { 0 }, wa).cmp(&(
            pb.len(),
            if pb.is_empty() { *sb } else { 0 },
            wb,
        ))
    });
    let position: HashMap<usize, usize> = basis_paths
        .iter()
        .enumerate()
        .map(|(b, &i)| (i, b))
        .collect();

    let normal = |key: &PathKey| -> Combination {
        if key.1.len() >= cutoff {
            return Vec::new();
        }
        let i = space.index[key];
        let nf = reduced.normal_form(BTreeMap::from([(i, Q::one())]));
        let mut out: Combination = nf.into_iter().map(|(k, c)| (position[&k], c)).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    };

    let basis: Vec<BasisPath> = basis_paths
        .iter()
        .map(|&i| {
            let (s, arrows) = &space.paths[i];
            BasisPath {
                source: *s,
                target: end_of(p, *s, arrows),
                arrows: arrows.clone(),
            }
        })
        .collect();
    let n = basis.len();
    let mut product = vec![vec![Vec::new(); n]; n];
    for (x, bx) in basis.iter().enumerate() {
        for (y, by) in basis.iter().enumerate() {
            if by.target != bx.source {
                continue;
            }
            let mut path = by.arrows.clone();
            path.extend(&bx.arrows);
            product[x][y] = normal(&(by.source, path));
        }
    }

    let mut nilpotency_degree = 1;
    for b in &basis {
        nilpotency_degree = nilpotency_degree.max(b.len() + 1);
    }

    let arrow_basis = (0..p.arrows.len())
        .map(|a| {
            basis
                .iter()
                .position(|b| b.arrows == [a])
                .expect("arrows survive an admissible ideal")
        })
        .collect();
    let trivial_basis = (0..p.vertex_count)
        .map(|v| {
            basis
                .iter()
                .position(|b| b.is_trivial() && b.source == v)
                .unwrap()
        })
        .collect();

    log::debug!(
        "computed algebra: {} vertices, dimension {}, nilpotency {}",
        p.vertex_count,
        n,
        nilpotency_degree
    );
    Ok(Arc::new(AlgebraTable {
        presentation: p.clone(),
        basis,
        product,
        nilpotency_degree,
        arrow_basis,
        trivial_basis,
        opposite: OnceLock::new(),
    }))
}

/// The opposite algebra on the reversed basis: `product_op(x, y) = product(y, x)`.
pub fn opposite_algebra(a: &AlgebraTable) -> Arc<AlgebraTable> {
    a.opposite()
}

impl AlgebraTable {
    fn build_opposite(&self) -> AlgebraTable {
        let n = self.dimension();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisPath {
                source: b.target,
                target: b.source,
                arrows: b.arrows.iter().rev().copied().collect(),
            })
            .collect();
        let product = (0..n)
            .map(|x| (0..n).map(|y| self.product[y][x].clone()).collect())
            .collect();
        AlgebraTable {
            presentation: self.presentation.opposite(),
            basis,
            product,
            nilpotency_degree: self.nilpotency_degree,
            arrow_basis: self.arrow_basis.clone(),
            trivial_basis: self.trivial_basis.clone(),
            opposite: OnceLock::new(),
        }
    }

    /// The opposite algebra, built once and cached.
    pub fn opposite(&self) -> Arc<AlgebraTable> {
        self.opposite
            .get_or_init(|| Arc::new(self.build_opposite()))
            .clone()
    }

    pub fn presentation(&self) -> &QuiverPresentation {
        &self.presentation
    }

    pub fn vertex_count(&self) -> usize {
        self.presentation.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.presentation.arrows.len()
    }

    /// 0-based (source, target) of an arrow.
    pub fn arrow_ends(&self, a: usize) -> (usize, usize) {
        let arrow = &self.presentation.arrows[a];
        (arrow.source - 1, arrow.target - 1)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn product(&self, x: usize, y: usize) -> &[(usize, Q)] {
        &self.product[x][y]
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    pub fn arrow_basis_index(&self, arrow: usize) -> usize {
        self.arrow_basis[arrow]
    }

    pub fn trivial_basis_index(&self, vertex: usize) -> usize {
        self.trivial_basis[vertex]
    }

    /// Basis indices of paths starting at `vertex` (0-based), in basis order.
    pub fn paths_from(&self, vertex: usize) -> Vec<usize> {
        (0..self.dimension())
            .filter(|&i| self.basis[i].source == vertex)
            .collect()
    }

    /// Written (right-to-left) label: `e3`, `b1*b2`.
    pub fn path_label(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.is_trivial() {
            return format!("e{}", b.source + 1);
        }
        b.arrows
            .iter()
            .rev()
            .map(|&a| self.presentation.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Connectivity of the underlying undirected graph of the quiver.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets (0-based) of the connected components of the quiver.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for a in 0..self.arrow_count() {
            let (s, t) = self.arrow_ends(a);
            let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
            if rs != rt {
                parent[rs.max(rt)] = rs.min(rt);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{named_fixture, FixtureTag};
    use crate::algebra::presentation::{Relation, Term};
    use crate::linalg::q;

    fn labels(a: &AlgebraTable) -> Vec<String> {
        (0..a.dimension()).map(|i| a.path_label(i)).collect()
    }

    #[test]
    fn a2_basis() {
        let a = compute_algebra(&named_fixture(FixtureTag::A(2)).unwrap()).unwrap();
        assert_eq!(a.dimension(), 5);
        assert_eq!(labels(&a), ["e1", "e2", "e3", "b1", "b2"]);
    }

    #[test]
    fn e66_basis() {
        let a = compute_algebra(&named_fixture(FixtureTag::E66).unwrap()).unwrap();
        assert_eq!(a.dimension(), 5);
        assert_eq!(a.nilpotency_degree(), 3);
        let mut l = labels(&a);
        l.sort();
        assert_eq!(l, ["alpha", "alpha*beta", "beta", "e1", "e2"]);
    }

    #[test]
    fn rejects_length_one_relation() {
        let p = QuiverPresentation::new(2)
            .with_arrow("a", 1, 2)
            .with_relation(Relation::monomial(&["a"]));
        assert!(matches!(compute_algebra(&p), Err(Error::Admissibility { .. })));
    }

    #[test]
    fn cycle_without_relations_is_infinite() {
        let p = QuiverPresentation::new(1).with_arrow("x", 1, 1);
        assert!(matches!(
            compute_algebra(&p),
            Err(Error::NotFiniteDimensional { .. })
        ));
    }

    #[test]
    fn non_admissible_mixed_degree_is_rejected() {
        // x^2 - x^3 never yields a nilpotent radical.
        let p = QuiverPresentation::new(1)
            .with_arrow("x", 1, 1)
            .with_relation(Relation {
                terms: vec![
                    Term { coefficient: q(1), path: vec!["x".into(), "x".into()] },
                    Term { coefficient: q(-1), path: vec!["x".into(), "x".into(), "x".into()] },
                ],
            });
        assert!(matches!(
            compute_algebra(&p),
            Err(Error::NotFiniteDimensional { .. })
        ));
    }

    #[test]
    fn loop_with_square_zero() {
        let p = QuiverPresentation::new(1)
            .with_arrow("x", 1, 1)
            .with_relation(Relation::monomial(&["x", "x", "x"]));
        let a = compute_algebra(&p).unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.nilpotency_degree(), 3);
    }

    #[test]
    fn commutativity_relation_identifies_paths() {
        let a = compute_algebra(&named_fixture(FixtureTag::E65).unwrap()).unwrap();
        // beta*alpha and delta*gamma coincide: exactly one survives as a basis path.
        let p = a.presentation();
        let ba: Vec<usize> = vec![p.arrow_index("alpha").unwrap(), p.arrow_index("beta").unwrap()];
        let dg: Vec<usize> = vec![p.arrow_index("gamma").unwrap(), p.arrow_index("delta").unwrap()];
        let hits = a
            .basis()
            .iter()
            .filter(|b| b.arrows == ba || b.arrows == dg)
            .count();
        assert_eq!(hits, 1);
    }

    #[test]
    fn opposite_products_are_transposed() {
        let a = compute_algebra(&named_fixture(FixtureTag::E65).unwrap()).unwrap();
        let op = a.opposite();
        assert_eq!(op.dimension(), a.dimension());
        for x in 0..a.dimension() {
            for y in 0..a.dimension() {
                assert_eq!(op.product(x, y), a.product(y, x));
            }
        }
        assert_eq!(*op.opposite(), *a);
    }
}
