//! Finite-dimensional left modules as quiver representations.

mod endo;
mod layers;
mod morphism;

use std::fmt;
use std::sync::Arc;

use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::format::ModuleLiteral;
use crate::linalg::{Matrix, Q};

pub use endo::{decompose, end_ring, is_indecomposable, is_isomorphic, try_decompose, DecompositionReport, EndRing};
pub use layers::{is_uniserial, length, radical, radical_layers, radical_power_bases, socle, top};
pub use morphism::{cokernel, hom_dim, hom_space, image, kernel, quotient, submodule, HomBasis, ModuleMorphism};

/// A representation of the bound quiver: one space per vertex, one matrix
/// per arrow (`dims[target] x dims[source]`).
#[derive(Clone)]
pub struct Representation {
    algebra: Arc<AlgebraTable>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

pub(crate) fn same_algebra(a: &Arc<AlgebraTable>, b: &Arc<AlgebraTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dims == other.dims && self.action == other.action
    }
}

impl Eq for Representation {}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation{:?}", self.dims)?;
        let names = &self.algebra.presentation().arrows;
        let mut m = f.debug_map();
        for (a, mat) in self.action.iter().enumerate() {
            m.entry(&names[a].name, mat);
        }
        m.finish()
    }
}

fn check_vertex(a: &AlgebraTable, i: usize) -> Result<usize> {
    if i == 0 || i > a.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: i,
            count: a.vertex_count(),
        });
    }
    Ok(i - 1)
}

impl Representation {
    /// Build and validate: shapes must match and every relation must act
    /// by zero.
    pub fn new(algebra: Arc<AlgebraTable>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        if dims.len() != algebra.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "{} dims for {} vertices",
                dims.len(),
                algebra.vertex_count()
            )));
        }
        if action.len() != algebra.arrow_count() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} arrows",
                action.len(),
                algebra.arrow_count()
            )));
        }
        for (a, m) in action.iter().enumerate() {
            let (s, t) = algebra.arrow_ends(a);
            if m.shape() != (dims[t], dims[s]) {
                return Err(Error::InvalidModule(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    algebra.presentation().arrows[a].name,
                    dims[t],
                    dims[s],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let m = Representation { algebra, dims, action };
        let relations = m.algebra.presentation().resolve()?;
        for (ri, rel) in relations.iter().enumerate() {
            let mut acc = Matrix::zeros(m.dims[rel.target], m.dims[rel.source]);
            for (c, path) in &rel.terms {
                acc.add_scaled(c, &m.traversal_matrix(rel.source, path));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!("relation {} does not act by zero", ri + 1)));
            }
        }
        Ok(m)
    }

    pub(crate) fn from_parts(algebra: Arc<AlgebraTable>, dims: Vec<usize>, action: Vec<Matrix>) -> Self {
        debug_assert_eq!(action.len(), algebra.arrow_count());
        Representation { algebra, dims, action }
    }

    /// A module literal from a presentation file, read against `algebra`.
    pub fn from_literal(algebra: Arc<AlgebraTable>, lit: &ModuleLiteral) -> Result<Self> {
        let dims = lit.dims.clone();
        if dims.len() != algebra.vertex_count() {
            return Err(Error::InvalidModule(format!("module `{}` has the wrong number of dims", lit.name)));
        }
        let mut action: Vec<Matrix> = (0..algebra.arrow_count())
            .map(|a| {
                let (s, t) = algebra.arrow_ends(a);
                Matrix::zeros(dims[t], dims[s])
            })
            .collect();
        for (name, mat) in &lit.matrices {
            let a = algebra
                .presentation()
                .arrow_index(name)
                .ok_or_else(|| Error::InvalidModule(format!("unknown arrow `{name}` in module `{}`", lit.name)))?;
            if mat.rows() * mat.cols() == 0 && action[a].rows() * action[a].cols() == 0 {
                continue;
            }
            action[a] = mat.clone();
        }
        Representation::new(algebra, dims, action)
    }

    pub fn zero(algebra: Arc<AlgebraTable>) -> Self {
        let dims = vec![0; algebra.vertex_count()];
        let action = (0..algebra.arrow_count()).map(|_| Matrix::zeros(0, 0)).collect();
        Representation { algebra, dims, action }
    }

    /// `S(i)`, with `i` counted from 1.
    pub fn simple(algebra: &Arc<AlgebraTable>, i: usize) -> Result<Self> {
        let v = check_vertex(algebra, i)?;
        Ok(simple_at(algebra, v))
    }

    /// `P(i) = Λ e_i`, with `i` counted from 1.
    pub fn projective(algebra: &Arc<AlgebraTable>, i: usize) -> Result<Self> {
        let v = check_vertex(algebra, i)?;
        Ok(projective_at(algebra, v))
    }

    /// `I(i) = D(Λ^op e_i)`, with `i` counted from 1.
    pub fn injective(algebra: &Arc<AlgebraTable>, i: usize) -> Result<Self> {
        let v = check_vertex(algebra, i)?;
        Ok(injective_at(algebra, v))
    }

    /// `Λ` as a left module over itself, `P(1) ⊕ ... ⊕ P(k)`.
    pub fn regular(algebra: &Arc<AlgebraTable>) -> Self {
        let ps: Vec<_> = (0..algebra.vertex_count()).map(|v| projective_at(algebra, v)).collect();
        direct_sum(algebra, &ps)
    }

    /// `DΛ^op = I(1) ⊕ ... ⊕ I(k)`.
    pub fn coregular(algebra: &Arc<AlgebraTable>) -> Self {
        let is: Vec<_> = (0..algebra.vertex_count()).map(|v| injective_at(algebra, v)).collect();
        direct_sum(algebra, &is)
    }

    pub fn algebra(&self) -> &Arc<AlgebraTable> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub(crate) fn traversal_matrix(&self, source: usize, arrows: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.dims[source]);
        for &a in arrows {
            acc = self.action[a].matmul(&acc);
        }
        acc
    }

    /// The action of a basis path of the algebra.
    pub fn path_action(&self, basis_index: usize) -> Matrix {
        let b = &self.algebra.basis()[basis_index];
        self.traversal_matrix(b.source, &b.arrows)
    }

    /// Same module viewed over an equal copy of its algebra.
    pub fn rehome(mut self, algebra: &Arc<AlgebraTable>) -> Result<Self> {
        if !same_algebra(&self.algebra, algebra) {
            return Err(Error::AlgebraMismatch);
        }
        self.algebra = algebra.clone();
        Ok(self)
    }

    /// Total dimension vector as a string like `(1,1,0)`.
    pub fn dims_label(&self) -> String {
        let parts: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        format!("({})", parts.join(","))
    }

    /// `DM` over the opposite algebra: transpose every arrow matrix.
    pub fn dual(&self) -> Representation {
        Representation {
            algebra: self.algebra.opposite(),
            dims: self.dims.clone(),
            action: self.action.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `DM` placed directly over `home`, the caller's handle on the
    /// opposite algebra.
    pub(crate) fn dual_onto(&self, home: &Arc<AlgebraTable>) -> Representation {
        debug_assert!(same_algebra(&self.algebra.opposite(), home));
        Representation {
            algebra: home.clone(),
            dims: self.dims.clone(),
            action: self.action.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `D` back over `home`, which must be the opposite of this module's
    /// algebra.
    pub fn dual_over(&self, home: &Arc<AlgebraTable>) -> Result<Representation> {
        self.dual().rehome(home)
    }

    pub fn to_literal(&self, name: &str) -> ModuleLiteral {
        ModuleLiteral {
            name: name.to_string(),
            dims: self.dims.clone(),
            matrices: self
                .algebra
                .presentation()
                .arrows
                .iter()
                .zip(&self.action)
                .filter(|(_, m)| !m.is_zero())
                .map(|(a, m)| (a.name.clone(), m.clone()))
                .collect(),
        }
    }
}

pub(crate) fn simple_at(algebra: &Arc<AlgebraTable>, v: usize) -> Representation {
    let mut dims = vec![0; algebra.vertex_count()];
    dims[v] = 1;
    let action = (0..algebra.arrow_count())
        .map(|a| {
            let (s, t) = algebra.arrow_ends(a);
            Matrix::zeros(dims[t], dims[s])
        })
        .collect();
    Representation::from_parts(algebra.clone(), dims, action)
}

/// Basis indices of `P(v)` grouped by the vertex they live at.
pub(crate) fn projective_layout(algebra: &AlgebraTable, v: usize) -> Vec<Vec<usize>> {
    let mut layout = vec![Vec::new(); algebra.vertex_count()];
    for p in algebra.paths_from(v) {
        layout[algebra.basis()[p].target].push(p);
    }
    layout
}

pub(crate) fn projective_at(algebra: &Arc<AlgebraTable>, v: usize) -> Representation {
    let layout = projective_layout(algebra, v);
    let dims: Vec<usize> = layout.iter().map(Vec::len).collect();
    let action = (0..algebra.arrow_count())
        .map(|a| {
            let (s, t) = algebra.arrow_ends(a);
            let arrow = algebra.arrow_basis_index(a);
            let mut m = Matrix::zeros(dims[t], dims[s]);
            for (col, &p) in layout[s].iter().enumerate() {
                for (r, c) in algebra.product(arrow, p) {
                    let row = layout[t].iter().position(|x| x == r).expect("product stays in P(v)");
                    m[(row, col)] += c;
                }
            }
            m
        })
        .collect();
    Representation::from_parts(algebra.clone(), dims, action)
}

pub(crate) fn injective_at(algebra: &Arc<AlgebraTable>, v: usize) -> Representation {
    let op = algebra.opposite();
    let mut m = projective_at(&op, v).dual();
    m.algebra = algebra.clone();
    m
}

/// `M_1 ⊕ ... ⊕ M_k`, block-diagonal at every vertex.
pub fn direct_sum(algebra: &Arc<AlgebraTable>, parts: &[Representation]) -> Representation {
    let k = algebra.vertex_count();
    let dims: Vec<usize> = (0..k).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let action = (0..algebra.arrow_count())
        .map(|a| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.action[a]).collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    Representation::from_parts(algebra.clone(), dims, action)
}

/// Inclusions `M_j -> ⊕ M` and projections `⊕ M -> M_j` of a direct sum.
pub fn direct_sum_maps(sum: &Representation, parts: &[Representation]) -> (Vec<ModuleMorphism>, Vec<ModuleMorphism>) {
    let k = sum.dims.len();
    let mut offsets = vec![0usize; k];
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for p in parts {
        let blocks: Vec<Matrix> = (0..k)
            .map(|v| {
                let mut b = Matrix::zeros(sum.dims[v], p.dims[v]);
                for i in 0..p.dims[v] {
                    b[(offsets[v] + i, i)] = Q::from_integer(1.into());
                }
                b
            })
            .collect();
        for (o, d) in offsets.iter_mut().zip(&p.dims) {
            *o += d;
        }
        proj.push(ModuleMorphism::from_parts(
            sum.clone(),
            p.clone(),
            blocks.iter().map(Matrix::transpose).collect(),
        ));
        incl.push(ModuleMorphism::from_parts(p.clone(), sum.clone(), blocks));
    }
    (incl, proj)
}
