use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::AlgebraTable;
use crate::linalg::{Matrix, Q};
use crate::repr::{direct_sum, ModuleMorphism, Representation};

/// `P(v_1) ⊕ ... ⊕ P(v_k)` with the path coordinates of every row.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    /// 0-based vertex of each summand.
    pub vertices: Vec<usize>,
    pub module: Representation,
    /// `rows[w]` lists `(summand, basis path)` for every coordinate at `w`.
    rows: Vec<Vec<(usize, usize)>>,
}

impl ProjectiveSum {
    pub fn new(algebra: &Arc<AlgebraTable>, vertices: Vec<usize>) -> Self {
        let k = algebra.vertex_count();
        let mut rows = vec![Vec::new(); k];
        let parts: Vec<Representation> = vertices
            .iter()
            .map(|&v| crate::repr::projective_at(algebra, v))
            .collect();
        for (j, &v) in vertices.iter().enumerate() {
            let layout = crate::repr::projective_layout(algebra, v);
            for (w, paths) in layout.into_iter().enumerate() {
                rows[w].extend(paths.into_iter().map(|p| (j, p)));
            }
        }
        ProjectiveSum {
            module: direct_sum(algebra, &parts),
            vertices,
            rows,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraTable> {
        self.module.algebra()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Row of the generator `e_{v_j}` of summand `j` (at vertex `v_j`).
    pub fn generator_row(&self, j: usize) -> usize {
        let v = self.vertices[j];
        let e = self.algebra().trivial_basis_index(v);
        self.rows[v]
            .iter()
            .position(|&(s, p)| s == j && p == e)
            .expect("generator present")
    }

    /// The element `f(e_{v_j})` of the target at vertex `v_j`.
    pub fn generator_image(&self, f: &ModuleMorphism, j: usize) -> Vec<Q> {
        f.block(self.vertices[j]).column(self.generator_row(j))
    }

    /// The morphism sending the `j`-th generator to `images[j]`, an element
    /// of `target` at vertex `v_j`.
    pub fn map_from_generators(&self, target: &Representation, images: &[Vec<Q>]) -> ModuleMorphism {
        let blocks = self
            .rows
            .iter()
            .enumerate()
            .map(|(w, rows)| {
                let cols: Vec<Vec<Q>> = rows
                    .iter()
                    .map(|&(j, p)| target.path_action(p).mul_vec(&images[j]))
                    .collect();
                Matrix::from_columns(target.dims()[w], &cols)
            })
            .collect();
        ModuleMorphism::from_parts(self.module.clone(), target.clone(), blocks)
    }

    /// Write a vector at vertex `w` as `Σ c · (summand, path)`.
    pub fn expand(&self, w: usize, x: &[Q]) -> Vec<(usize, usize, Q)> {
        self.rows[w]
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(j, p), c)| (j, p, c.clone()))
            .collect()
    }

    /// The vector at vertex `w` with coordinate `c` on `(summand, path)`.
    pub fn vector(&self, w: usize, terms: &[(usize, usize, Q)]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows[w].len()];
        for (j, p, c) in terms {
            let r = self.rows[w]
                .iter()
                .position(|&(s, q)| s == *j && q == *p)
                .expect("path lies in the summand");
            out[r] += c;
        }
        out
    }

    /// `P(i)^m` style label, 1-based, in summand order.
    pub fn label(&self) -> String {
        label_of(&self.vertices, "P")
    }
}

/// `P(1)^2 ⊕ P(3)` for 0-based vertices `[0, 0, 2]`.
pub fn label_of(vertices: &[usize], letter: &str) -> String {
    if vertices.is_empty() {
        return "0".into();
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let m = sorted[i..].iter().take_while(|&&x| x == v).count();
        parts.push(if m == 1 {
            format!("{letter}({})", v + 1)
        } else {
            format!("{letter}({})^{m}", v + 1)
        });
        i += m;
    }
    parts.join(" ⊕ ")
}
