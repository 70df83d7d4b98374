use std::fmt;

use num_traits::Zero;

use super::{same_algebra, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};

/// A module homomorphism, one block `dims_target[v] x dims_source[v]` per
/// vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: Representation,
    target: Representation,
    blocks: Vec<Matrix>,
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMorphism")
            .field("source", &self.source.dims())
            .field("target", &self.target.dims())
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl ModuleMorphism {
    /// Validated constructor: shapes and the intertwining identity.
    pub fn new(source: Representation, target: Representation, blocks: Vec<Matrix>) -> Result<Self> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if blocks.len() != source.dims().len() {
            return Err(Error::InvalidModule("one block per vertex expected".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims()[v], source.dims()[v]) {
                return Err(Error::InvalidModule(format!("block at vertex {} has the wrong shape", v + 1)));
            }
        }
        let f = ModuleMorphism { source, target, blocks };
        if !f.intertwines() {
            return Err(Error::InvalidModule("blocks do not commute with the arrow actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: Representation, target: Representation, blocks: Vec<Matrix>) -> Self {
        ModuleMorphism { source, target, blocks }
    }

    pub fn identity(m: &Representation) -> Self {
        let blocks = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        ModuleMorphism::from_parts(m.clone(), m.clone(), blocks)
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let blocks = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| Matrix::zeros(t, s))
            .collect();
        ModuleMorphism::from_parts(source.clone(), target.clone(), blocks)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn intertwines(&self) -> bool {
        let alg = self.source.algebra();
        (0..alg.arrow_count()).all(|a| {
            let (s, t) = alg.arrow_ends(a);
            self.target.action(a).matmul(&self.blocks[s]) == self.blocks[t].matmul(self.source.action(a))
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMorphism) -> ModuleMorphism {
        debug_assert_eq!(other.target.dims(), self.source.dims());
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.matmul(b)).collect();
        ModuleMorphism::from_parts(other.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &ModuleMorphism) -> ModuleMorphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMorphism::from_parts(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, c: &Q) -> ModuleMorphism {
        let blocks = self.blocks.iter().map(|b| b.scale(c)).collect();
        ModuleMorphism::from_parts(self.source.clone(), self.target.clone(), blocks)
    }

    /// `Σ c_i f_i`; all morphisms share source and target.
    pub fn combination(source: &Representation, target: &Representation, terms: &[(Q, &ModuleMorphism)]) -> ModuleMorphism {
        let mut acc = ModuleMorphism::zero(source, target);
        for (c, f) in terms {
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.blocks.iter_mut().zip(&f.blocks) {
                a.add_scaled(c, b);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.blocks.iter().all(Matrix::is_invertible)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<ModuleMorphism> {
        let blocks: Option<Vec<Matrix>> = self.blocks.iter().map(Matrix::inverse).collect();
        Some(ModuleMorphism::from_parts(self.target.clone(), self.source.clone(), blocks?))
    }

    /// All block entries, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<Q> {
        self.blocks.iter().flat_map(|b| b.to_rows().into_iter().flatten()).collect()
    }

    /// `Df: DN -> DM` over the opposite algebra.
    pub fn dual(&self) -> ModuleMorphism {
        ModuleMorphism::from_parts(
            self.target.dual(),
            self.source.dual(),
            self.blocks.iter().map(Matrix::transpose).collect(),
        )
    }

    /// `Df` placed over `home`, the opposite of this morphism's algebra.
    pub(crate) fn dual_onto(&self, home: &std::sync::Arc<crate::algebra::AlgebraTable>) -> ModuleMorphism {
        ModuleMorphism::from_parts(
            self.target.dual_onto(home),
            self.source.dual_onto(home),
            self.blocks.iter().map(Matrix::transpose).collect(),
        )
    }

    /// Block-diagonal map of direct sums.
    pub fn direct_sum(maps: &[ModuleMorphism], source: &Representation, target: &Representation) -> ModuleMorphism {
        let k = source.dims().len();
        let blocks = (0..k)
            .map(|v| {
                let bs: Vec<&Matrix> = maps.iter().map(|f| &f.blocks[v]).collect();
                Matrix::block_diag(&bs)
            })
            .collect();
        ModuleMorphism::from_parts(source.clone(), target.clone(), blocks)
    }
}

/// Offsets of the unknown blocks `X_v` (`N_v x M_v`, row-major) in the
/// flattened hom system.
fn hom_offsets(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for (&dm, &dn) in m.dims().iter().zip(n.dims()) {
        offsets.push(total);
        total += dm * dn;
    }
    (offsets, total)
}

/// Coefficient matrix of the intertwining system `N_α X_a − X_b M_α = 0`.
fn hom_system(m: &Representation, n: &Representation) -> Matrix {
    let alg = m.algebra();
    let (offsets, unknowns) = hom_offsets(m, n);
    let rows: usize = (0..alg.arrow_count())
        .map(|a| {
            let (s, t) = alg.arrow_ends(a);
            n.dims()[t] * m.dims()[s]
        })
        .sum();
    let mut sys = Matrix::zeros(rows, unknowns);
    let mut row = 0;
    for a in 0..alg.arrow_count() {
        let (s, t) = alg.arrow_ends(a);
        let (na, ma) = (n.action(a), m.action(a));
        let (ms, nt, ns, mt) = (m.dims()[s], n.dims()[t], n.dims()[s], m.dims()[t]);
        for r in 0..nt {
            for c in 0..ms {
                for k in 0..ns {
                    let v = &na[(r, k)];
                    if !v.is_zero() {
                        sys[(row, offsets[s] + k * ms + c)] += v;
                    }
                }
                for k in 0..mt {
                    let v = &ma[(k, c)];
                    if !v.is_zero() {
                        sys[(row, offsets[t] + r * mt + k)] -= v;
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

fn unflatten(m: &Representation, n: &Representation, x: &[Q]) -> Vec<Matrix> {
    let mut pos = 0;
    m.dims()
        .iter()
        .zip(n.dims())
        .map(|(&dm, &dn)| {
            let rows = (0..dn)
                .map(|_| {
                    let row = x[pos..pos + dm].to_vec();
                    pos += dm;
                    row
                })
                .collect();
            Matrix::from_rows_shaped(dn, dm, rows).expect("block shape")
        })
        .collect()
}

/// A basis of `Hom(M, N)`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ModuleMorphism>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let null = hom_system(m, n).nullspace();
    Ok((0..null.cols())
        .map(|j| ModuleMorphism::from_parts(m.clone(), n.clone(), unflatten(m, n, &null.column(j))))
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let sys = hom_system(m, n);
    Ok(sys.cols() - sys.rank())
}

/// A hom basis with coordinate lookup.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub morphisms: Vec<ModuleMorphism>,
    /// Flattened positions on which the basis is independent.
    rows: Vec<usize>,
    /// Inverse of the basis restricted to `rows`.
    inverse: Matrix,
}

impl HomBasis {
    pub fn new(m: &Representation, n: &Representation) -> Result<Self> {
        let morphisms = hom_space(m, n)?;
        let (_, unknowns) = hom_offsets(m, n);
        let cols: Vec<Vec<Q>> = morphisms.iter().map(ModuleMorphism::flatten).collect();
        let columns = Matrix::from_columns(unknowns, &cols);
        let rows = columns.transpose().rref().pivots;
        let inverse = columns.select_rows(&rows).inverse().expect("independent basis");
        Ok(HomBasis {
            morphisms,
            rows,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    /// Coordinates of `f`, which must lie in the span.
    pub fn coordinates(&self, f: &ModuleMorphism) -> Vec<Q> {
        let flat = f.flatten();
        let picked: Vec<Q> = self.rows.iter().map(|&r| flat[r].clone()).collect();
        self.inverse.mul_vec(&picked)
    }
}

/// Subrepresentation spanned at each vertex by the columns of `bases`
/// (independent and closed under the arrows), with its inclusion.
pub fn submodule(m: &Representation, bases: Vec<Matrix>) -> (Representation, ModuleMorphism) {
    let alg = m.algebra();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let action = (0..alg.arrow_count())
        .map(|a| {
            let (s, t) = alg.arrow_ends(a);
            let moved = m.action(a).matmul(&bases[s]);
            bases[t].solve(&moved).expect("subspace is a submodule")
        })
        .collect();
    let sub = Representation::from_parts(alg.clone(), dims, action);
    let incl = ModuleMorphism::from_parts(sub.clone(), m.clone(), bases);
    (sub, incl)
}

/// `M / U` for the submodule `U` spanned by the columns of `bases`, with
/// the projection.
pub fn quotient(m: &Representation, bases: &[Matrix]) -> (Representation, ModuleMorphism) {
    let alg = m.algebra();
    let k = m.dims().len();
    let mut lifts = Vec::with_capacity(k);
    let mut projections = Vec::with_capacity(k);
    for (&d, basis) in m.dims().iter().zip(bases) {
        let comp = basis.complement_standard();
        let lift = Matrix::identity(d).select_columns(&comp);
        let full = basis.hstack(&lift);
        let inv = full.inverse().expect("basis of the ambient space");
        let rows: Vec<usize> = (basis.cols()..d).collect();
        projections.push(inv.select_rows(&rows));
        lifts.push(lift);
    }
    let dims: Vec<usize> = lifts.iter().map(Matrix::cols).collect();
    let action = (0..alg.arrow_count())
        .map(|a| {
            let (s, t) = alg.arrow_ends(a);
            projections[t].matmul(&m.action(a).matmul(&lifts[s]))
        })
        .collect();
    let q = Representation::from_parts(alg.clone(), dims, action);
    let proj = ModuleMorphism::from_parts(m.clone(), q.clone(), projections);
    (q, proj)
}

/// `ker f` with its inclusion into the source.
pub fn kernel(f: &ModuleMorphism) -> (Representation, ModuleMorphism) {
    let bases = f.blocks.iter().map(Matrix::nullspace).collect();
    submodule(&f.source, bases)
}

/// `im f` with the corestriction `M -> im f` and inclusion `im f -> N`.
pub fn image(f: &ModuleMorphism) -> (Representation, ModuleMorphism, ModuleMorphism) {
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::column_basis).collect();
    let (im, incl) = submodule(&f.target, bases.clone());
    let corestriction: Vec<Matrix> = bases
        .iter()
        .zip(&f.blocks)
        .map(|(b, blk)| b.solve(blk).expect("columns lie in the image"))
        .collect();
    let epi = ModuleMorphism::from_parts(f.source.clone(), im.clone(), corestriction);
    (im, epi, incl)
}

/// `coker f` with the projection from the target.
pub fn cokernel(f: &ModuleMorphism) -> (Representation, ModuleMorphism) {
    let bases: Vec<Matrix> = f.blocks.iter().map(Matrix::column_basis).collect();
    quotient(&f.target, &bases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compute_algebra, named_fixture, AlgebraTable, FixtureTag};
    use std::sync::Arc;

    fn alg(tag: FixtureTag) -> Arc<AlgebraTable> {
        compute_algebra(&named_fixture(tag).unwrap()).unwrap()
    }

    #[test]
    fn hom_from_projective_is_vertex_dim() {
        for tag in FixtureTag::corpus() {
            let a = alg(tag);
            let targets = [Representation::regular(&a), Representation::coregular(&a)];
            for i in 1..=a.vertex_count() {
                let p = Representation::projective(&a, i).unwrap();
                for n in &targets {
                    assert_eq!(hom_dim(&p, n).unwrap(), n.dims()[i - 1], "{tag} P({i})");
                }
            }
        }
    }

    #[test]
    fn a2_homs_between_projectives() {
        let a = alg(FixtureTag::A(2));
        let p2 = Representation::projective(&a, 2).unwrap();
        let p3 = Representation::projective(&a, 3).unwrap();
        assert_eq!(hom_dim(&p2, &p3).unwrap(), 1);
        assert_eq!(hom_dim(&p3, &p2).unwrap(), 0);
        assert_eq!(hom_dim(&p2, &Representation::zero(a.clone())).unwrap(), 0);
        for f in hom_space(&p2, &p3).unwrap() {
            assert!(f.intertwines());
        }
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let a = alg(FixtureTag::E66);
        let p = Representation::projective(&a, 1).unwrap();
        let (k, _) = kernel(&ModuleMorphism::identity(&p));
        assert!(k.is_zero());
    }

    #[test]
    fn cokernel_of_socle_inclusion() {
        let a = alg(FixtureTag::A(2));
        let s1 = Representation::simple(&a, 1).unwrap();
        let p2 = Representation::projective(&a, 2).unwrap();
        let f = hom_space(&s1, &p2).unwrap().remove(0);
        assert!(f.is_injective());
        let (c, pi) = cokernel(&f);
        assert_eq!(c, Representation::simple(&a, 2).unwrap());
        assert!(pi.intertwines());
        assert!(pi.compose(&f).is_zero());
    }

    #[test]
    fn e66_kernel_of_top_projection() {
        let a = alg(FixtureTag::E66);
        let p2 = Representation::projective(&a, 2).unwrap();
        let s2 = Representation::simple(&a, 2).unwrap();
        let f = hom_space(&p2, &s2).unwrap().remove(0);
        let (k, incl) = kernel(&f);
        assert_eq!(k.dims(), &[1, 0]);
        assert!(incl.intertwines());
    }

    #[test]
    fn image_factors_the_map() {
        let a = alg(FixtureTag::E66);
        let p1 = Representation::projective(&a, 1).unwrap();
        let p2 = Representation::projective(&a, 2).unwrap();
        for f in hom_space(&p2, &p1).unwrap() {
            let (im, epi, mono) = image(&f);
            assert_eq!(mono.compose(&epi), f);
            assert!(epi.is_surjective() && mono.is_injective());
            assert_eq!(im.dim(), f.rank());
            let (_, pi) = cokernel(&f);
            let (ck, _) = kernel(&pi);
            assert_eq!(ck.dims(), im.dims());
        }
    }

    #[test]
    fn coordinates_recover_combinations() {
        let a = alg(FixtureTag::E66);
        let m = Representation::regular(&a);
        let hb = HomBasis::new(&m, &m).unwrap();
        let coeffs: Vec<Q> = (0..hb.len()).map(|i| Q::from_integer((i as i64 - 2).into())).collect();
        let terms: Vec<(Q, &ModuleMorphism)> = coeffs.iter().cloned().zip(&hb.morphisms).collect();
        let f = ModuleMorphism::combination(&m, &m, &terms);
        assert_eq!(hb.coordinates(&f), coeffs);
    }
}
