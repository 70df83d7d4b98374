use std::collections::BTreeSet;

use serde::Serialize;

use super::atlas::IndecomposableAtlas;
use crate::error::{Error, Result};
use crate::homological::{ext_dim_injective, ext_dims_against};

/// `cells[k-1][i][j] = dim Ext^k(M_i, M_j)` over an atlas.
#[derive(Clone, Debug, Serialize)]
pub struct ExtTable {
    pub n: usize,
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl ExtTable {
    pub fn size(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    /// `Ext^k(M_i, M_j) = 0` for every `1 <= k <= n`.
    pub fn vanishes(&self, i: usize, j: usize) -> bool {
        self.cells.iter().all(|layer| layer[i][j] == 0)
    }

    /// The same vanishing test restricted to orders `1..=m`.
    pub fn vanishes_up_to(&self, i: usize, j: usize, m: usize) -> bool {
        self.cells.iter().take(m).all(|layer| layer[i][j] == 0)
    }

    /// Recompute each cell from the injective side and compare.
    pub fn balance_check(&self, atlas: &IndecomposableAtlas) -> Result<Vec<(usize, usize, usize)>> {
        let mut bad = Vec::new();
        for (k, layer) in self.cells.iter().enumerate() {
            for (i, row) in layer.iter().enumerate() {
                for (j, &d) in row.iter().enumerate() {
                    if ext_dim_injective(&atlas.modules[i], &atlas.modules[j], k + 1)? != d {
                        bad.push((k + 1, i, j));
                    }
                }
            }
        }
        Ok(bad)
    }
}

pub fn ext_table(atlas: &IndecomposableAtlas, n: usize) -> ExtTable {
    let m = atlas.len();
    let mut cells = vec![vec![Vec::new(); m]; n];
    for (i, x) in atlas.modules.iter().enumerate() {
        for (k, row) in ext_dims_against(x, &atlas.modules, n).into_iter().enumerate() {
            cells[k][i] = row;
        }
    }
    ExtTable { n, cells }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubcategoryCandidate {
    /// Sorted atlas indices.
    pub members: Vec<usize>,
    pub is_n_orthogonal: bool,
    pub is_maximal: bool,
    pub is_trivial: bool,
}

/// `{ X : Ext^k(X, C) = 0 }` and `{ X : Ext^k(C, X) = 0 }` over the atlas.
pub fn orthogonal_sets(table: &ExtTable, members: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let all = 0..table.size();
    let left = all.clone().filter(|&x| members.iter().all(|&c| table.vanishes(x, c))).collect();
    let right = all.filter(|&x| members.iter().all(|&c| table.vanishes(c, x))).collect();
    (left, right)
}

fn compatible(table: &ExtTable, x: usize, y: usize) -> bool {
    table.vanishes(x, y) && table.vanishes(y, x)
}

fn bron_kerbosch(
    table: &ExtTable,
    r: &mut Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| compatible(table, u, v)).count());
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|&v| pivot.is_none_or(|u| !compatible(table, u, v)))
        .collect();
    for v in candidates {
        let np = p.iter().copied().filter(|&w| compatible(table, v, w)).collect();
        let nx = x.iter().copied().filter(|&w| compatible(table, v, w)).collect();
        r.push(v);
        bron_kerbosch(table, r, np, nx, out);
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

/// Maximal `n`-orthogonal subcategories, as member sets of a complete atlas,
/// in lexicographic order.
pub fn enumerate_mos(atlas: &IndecomposableAtlas, n: usize) -> Result<Vec<SubcategoryCandidate>> {
    let table = ext_table(atlas, n);
    enumerate_with_table(atlas, &table)
}

pub fn enumerate_with_table(atlas: &IndecomposableAtlas, table: &ExtTable) -> Result<Vec<SubcategoryCandidate>> {
    if table.size() != atlas.len() {
        return Err(Error::AtlasIncomplete("table and atlas sizes differ".into()));
    }
    let seed = atlas.seed();
    if !seed.iter().all(|&i| seed.iter().all(|&j| table.vanishes(i, j))) {
        log::debug!("projectives and injectives are not orthogonal");
        return Ok(Vec::new());
    }
    let pool: BTreeSet<usize> = (0..atlas.len())
        .filter(|i| !seed.contains(i))
        .filter(|&i| table.vanishes(i, i) && seed.iter().all(|&s| compatible(table, i, s)))
        .collect();
    let mut cliques = Vec::new();
    bron_kerbosch(table, &mut Vec::new(), pool, BTreeSet::new(), &mut cliques);
    let mut out = Vec::new();
    for clique in cliques {
        let mut members: Vec<usize> = seed.iter().chain(&clique).copied().collect();
        members.sort_unstable();
        let (left, right) = orthogonal_sets(table, &members);
        if left == members && right == members {
            out.push(SubcategoryCandidate {
                is_trivial: members == seed,
                members,
                is_n_orthogonal: true,
                is_maximal: true,
            });
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}
