use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::morphism::{hom_dim, image, kernel, HomBasis};
use super::{same_algebra, ModuleMorphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{q, Matrix, Q};

const RANDOM_TRIALS: usize = 8;
const SEED: u64 = 0x51ab_1e5e_ed00_0001;

/// `End(M)` with structure constants in a hom basis and its Jacobson
/// radical.
#[derive(Clone, Debug)]
pub struct EndRing {
    pub basis: Vec<ModuleMorphism>,
    /// `structure[i][j]` holds the coordinates of `basis[i] ∘ basis[j]`.
    pub structure: Vec<Vec<Vec<Q>>>,
    /// Columns span `rad End(M)` in basis coordinates.
    pub radical: Matrix,
}

impl EndRing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.cols()
    }

    /// `dim End(M) / rad End(M)`.
    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    /// Is `f` (an endomorphism of the same module) in the radical?
    pub fn in_radical(&self, coords: &[Q]) -> bool {
        let v = Matrix::from_columns(coords.len(), &[coords.to_vec()]);
        self.radical.hstack(&v).rank() == self.radical.rank()
    }
}

/// `End(M)` with its radical from the trace form `(x, y) ↦ tr L_{xy}`.
pub fn end_ring(m: &Representation) -> EndRing {
    let hb = HomBasis::new(m, m).expect("same algebra");
    let d = hb.len();
    let structure: Vec<Vec<Vec<Q>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| hb.coordinates(&hb.morphisms[i].compose(&hb.morphisms[j])))
                .collect()
        })
        .collect();
    let traces: Vec<Q> = (0..d)
        .map(|i| (0..d).fold(Q::zero(), |acc, j| acc + &structure[i][j][j]))
        .collect();
    let mut gram = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            gram[(i, j)] = structure[i][j]
                .iter()
                .zip(&traces)
                .fold(Q::zero(), |acc, (c, t)| acc + c * t);
        }
    }
    EndRing {
        radical: gram.nullspace(),
        basis: hb.morphisms,
        structure,
    }
}

/// Nonzero with local endomorphism ring.
pub fn is_indecomposable(m: &Representation) -> bool {
    !m.is_zero() && end_ring(m).semisimple_dim() == 1
}

/// Indecomposable summands with multiplicities.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub summands: Vec<(Representation, usize)>,
    /// Every summand was shown to have a local endomorphism ring.
    pub certified: bool,
}

impl DecompositionReport {
    pub fn summand_count(&self) -> usize {
        self.summands.iter().map(|(_, k)| k).sum()
    }

    /// The summands, repeated by multiplicity.
    pub fn flattened(&self) -> Vec<Representation> {
        self.summands
            .iter()
            .flat_map(|(m, k)| std::iter::repeat_n(m.clone(), *k))
            .collect()
    }
}

fn fitting_power(f: &ModuleMorphism) -> ModuleMorphism {
    let n = f.source().dims().iter().copied().max().unwrap_or(0) as u32;
    let blocks = f.blocks().iter().map(|b| b.pow(n)).collect();
    ModuleMorphism::from_parts(f.source().clone(), f.source().clone(), blocks)
}

/// Candidate endomorphisms: basis elements, signed sums of two and three
/// basis elements, then basis elements shifted by small multiples of the
/// identity.
fn candidates(m: &Representation, basis: &[ModuleMorphism]) -> Vec<ModuleMorphism> {
    let d = basis.len();
    let mut out: Vec<ModuleMorphism> = basis.to_vec();
    let one = Q::one();
    let minus = -Q::one();
    for i in 0..d {
        for j in i + 1..d {
            for s in [&one, &minus] {
                out.push(ModuleMorphism::combination(m, m, &[(one.clone(), &basis[i]), (s.clone(), &basis[j])]));
            }
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                for s in [&one, &minus] {
                    for t in [&one, &minus] {
                        out.push(ModuleMorphism::combination(
                            m,
                            m,
                            &[(one.clone(), &basis[i]), (s.clone(), &basis[j]), (t.clone(), &basis[k])],
                        ));
                    }
                }
            }
        }
    }
    let id = ModuleMorphism::identity(m);
    for c in [1, -1, 2, -2] {
        for b in basis {
            out.push(b.add(&id.scale(&q(-c))));
        }
    }
    out
}

fn split(m: &Representation, out: &mut Vec<(Representation, bool)>) {
    if m.is_zero() {
        return;
    }
    let e = end_ring(m);
    if e.semisimple_dim() == 1 {
        out.push((m.clone(), true));
        return;
    }
    for phi in candidates(m, &e.basis) {
        let psi = fitting_power(&phi);
        if psi.is_zero() || psi.is_isomorphism() {
            continue;
        }
        let (k, _) = kernel(&psi);
        let (i, _, _) = image(&psi);
        split(&k, out);
        split(&i, out);
        return;
    }
    out.push((m.clone(), false));
}

/// Isomorphism of two modules already known to be indecomposable: some
/// `g ∘ f` with `f: X -> Y`, `g: Y -> X` lies outside the radical of the
/// local ring `End(X)`, hence is invertible.
fn indecomposables_isomorphic(x: &Representation, y: &Representation) -> bool {
    if x.dims() != y.dims() {
        return false;
    }
    let fs = HomBasis::new(x, y).expect("same algebra").morphisms;
    if fs.is_empty() {
        return false;
    }
    let gs = HomBasis::new(y, x).expect("same algebra").morphisms;
    fs.iter().any(|f| gs.iter().any(|g| g.compose(f).is_isomorphism()))
}

/// Krull-Schmidt decomposition; pieces that could not be split within the
/// candidate budget are kept whole and the report is marked uncertified.
pub fn try_decompose(m: &Representation) -> DecompositionReport {
    let mut pieces = Vec::new();
    split(m, &mut pieces);
    let certified = pieces.iter().all(|(_, ok)| *ok);
    let mut summands: Vec<(Representation, usize, bool)> = Vec::new();
    for (p, ok) in pieces {
        let found = summands
            .iter_mut()
            .find(|(s, _, sok)| (ok && *sok && indecomposables_isomorphic(s, &p)) || *s == p);
        match found {
            Some(entry) => entry.1 += 1,
            None => summands.push((p, 1, ok)),
        }
    }
    summands.sort_by(|a, b| a.0.dims().cmp(b.0.dims()));
    DecompositionReport {
        summands: summands.into_iter().map(|(s, k, _)| (s, k)).collect(),
        certified,
    }
}

pub fn decompose(m: &Representation) -> Result<DecompositionReport> {
    let report = try_decompose(m);
    if !report.certified {
        return Err(Error::DecompositionInconclusive { dimension: m.dim() });
    }
    Ok(report)
}

/// Exact isomorphism test. Random small-integer combinations of a hom basis
/// are tried first; failing that, both sides are decomposed and the
/// indecomposable summands matched by the local-ring criterion.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() || m == n {
        return Ok(true);
    }
    let h = hom_dim(m, n)?;
    if h == 0 || hom_dim(n, m)? != h || hom_dim(m, m)? != h || hom_dim(n, n)? != h {
        return Ok(false);
    }
    let hb = HomBasis::new(m, n)?;
    let bound = m.dim() as i64 + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<Q> = (0..hb.len()).map(|_| q(rng.gen_range(-bound..=bound))).collect();
        let terms: Vec<(Q, &ModuleMorphism)> = coeffs.into_iter().zip(&hb.morphisms).collect();
        if ModuleMorphism::combination(m, n, &terms).is_isomorphism() {
            return Ok(true);
        }
    }
    let left = decompose(m)?;
    let right = decompose(n)?;
    if left.summand_count() != right.summand_count() {
        return Ok(false);
    }
    let mut unmatched: Vec<(Representation, usize)> = right.summands.clone();
    for (x, k) in &left.summands {
        match unmatched
            .iter_mut()
            .find(|(y, j)| *j == *k && indecomposables_isomorphic(x, y))
        {
            Some(entry) => entry.1 = 0,
            None => return Ok(false),
        }
    }
    Ok(true)
}
