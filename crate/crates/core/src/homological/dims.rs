use std::sync::Arc;

use super::projsum::ProjectiveSum;
use super::resolution::{cover_sum, resolve_injective, resolve_projective, Resolution};
use super::Dimension;
use crate::algebra::AlgebraTable;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};
use crate::repr::{cokernel, hom_dim, hom_space, is_isomorphic, kernel, same_algebra, Representation};

/// Default loop bound for dimension searches.
pub fn default_budget(a: &AlgebraTable) -> usize {
    2 * a.dimension()
}

/// Projective dimension. A syzygy isomorphic to an earlier nonzero one
/// certifies `Infinite`, as does running out of budget.
pub fn pd(m: &Representation) -> Result<Dimension> {
    pd_within(m, default_budget(m.algebra()))
}

pub fn pd_within(m: &Representation, budget: usize) -> Result<Dimension> {
    let mut seen: Vec<Representation> = Vec::new();
    let mut omega = m.clone();
    for k in 0..=budget {
        if omega.is_zero() {
            return Ok(Dimension::Finite(k.saturating_sub(1)));
        }
        for earlier in &seen {
            if earlier.dims() == omega.dims() && is_isomorphic(earlier, &omega)? {
                log::debug!("syzygy {k} repeats; pd is infinite");
                return Ok(Dimension::Infinite);
            }
        }
        seen.push(omega.clone());
        let (_, pi) = cover_sum(&omega);
        omega = kernel(&pi).0;
    }
    Ok(Dimension::Infinite)
}

/// Injective dimension, as `pd` of the dual over the opposite algebra.
pub fn id(m: &Representation) -> Result<Dimension> {
    pd(&m.dual())
}

/// Maximum of `pd S` over the simples.
pub fn global_dimension(a: &Arc<AlgebraTable>) -> Result<Dimension> {
    let mut best = Dimension::Finite(0);
    for v in 0..a.vertex_count() {
        best = best.max(pd(&crate::repr::simple_at(a, v))?);
        if best == Dimension::Infinite {
            break;
        }
    }
    Ok(best)
}

/// `d_k(e_l)` for every generator `l` of `P_k`, written in the path
/// coordinates of `P_{k-1}`.
fn differential_terms(res: &Resolution, k: usize) -> Vec<Vec<(usize, usize, Q)>> {
    let sum = &res.sums[k];
    let prev = &res.sums[k - 1];
    (0..sum.vertices.len())
        .map(|l| prev.expand(sum.vertices[l], &sum.generator_image(&res.maps[k], l)))
        .collect()
}

fn offsets(vertices: &[usize], dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(vertices.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &v in vertices {
        acc += dims[v];
        out.push(acc);
    }
    out
}

/// Rank of `Hom(d_k, N): Hom(P_{k-1}, N) -> Hom(P_k, N)`, `k >= 1`.
fn dual_differential_rank(res: &Resolution, k: usize, n: &Representation) -> usize {
    if k == 0 || k >= res.sums.len() {
        return 0;
    }
    let dims = n.dims();
    let rows = offsets(&res.sums[k].vertices, dims);
    let cols = offsets(&res.sums[k - 1].vertices, dims);
    let mut mat = Matrix::zeros(*rows.last().unwrap(), *cols.last().unwrap());
    for (l, terms) in differential_terms(res, k).into_iter().enumerate() {
        for (j, p, c) in terms {
            let block = n.path_action(p).scale(&c);
            let mut target = Matrix::zeros(mat.rows(), mat.cols());
            target.set_block(rows[l], cols[j], &block);
            mat = mat.add(&target);
        }
    }
    mat.rank()
}

fn hom_from_sum_dim(sum: Option<&ProjectiveSum>, n: &Representation) -> usize {
    sum.map_or(0, |s| s.vertices.iter().map(|&v| n.dims()[v]).sum())
}

fn ext_from_resolution(res: &Resolution, n: &Representation, i: usize) -> usize {
    hom_from_sum_dim(res.sums.get(i), n) - dual_differential_rank(res, i, n) - dual_differential_rank(res, i + 1, n)
}

/// `dim Ext^i(M, N)` from the Hom complex of the minimal projective
/// resolution of `M`.
pub fn ext_dim(m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if i == 0 {
        return hom_dim(m, n);
    }
    let res = resolve_projective(m, i + 1);
    Ok(ext_from_resolution(&res, n, i))
}

/// `dim Ext^i(M, N)` from `Hom(M, I^•(N))`.
pub fn ext_dim_injective(m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let res = resolve_injective(n, i + 1);
    let Some(term) = res.terms.get(i) else {
        return Ok(0);
    };
    let rank_into = |k: usize| -> Result<usize> {
        if k == 0 || k >= res.terms.len() {
            return Ok(0);
        }
        let basis = hom_space(m, &res.terms[k - 1])?;
        let cols: Vec<Vec<Q>> = basis.iter().map(|g| res.maps[k].compose(g).flatten()).collect();
        let len = cols.first().map_or(0, Vec::len);
        Ok(Matrix::from_columns(len, &cols).rank())
    };
    Ok(hom_dim(m, term)? - rank_into(i)? - rank_into(i + 1)?)
}

/// `dims[k-1][j] = dim Ext^k(M, targets[j])` for `1 <= k <= n`, from a single
/// resolution of `M`.
pub fn ext_dims_against(m: &Representation, targets: &[Representation], n: usize) -> Vec<Vec<usize>> {
    let res = resolve_projective(m, n + 1);
    (1..=n)
        .map(|k| targets.iter().map(|t| ext_from_resolution(&res, t, k)).collect())
        .collect()
}

/// `inf { i : Ext^i(M, Λ) != 0 }`, searched up to the default budget.
pub fn grade(m: &Representation) -> Result<Dimension> {
    let a = m.algebra();
    let lambda = Representation::regular(a);
    if hom_dim(m, &lambda)? > 0 {
        return Ok(Dimension::Finite(0));
    }
    let budget = default_budget(a);
    let res = resolve_projective(m, budget + 1);
    for i in 1..=budget.min(res.sums.len()) {
        if ext_from_resolution(&res, &lambda, i) > 0 {
            return Ok(Dimension::Finite(i));
        }
    }
    Ok(Dimension::Infinite)
}

/// `Ext^n(M, Λ)` as a left module over the opposite algebra: the cokernel
/// of `P_{n-1}^* -> P_n^*` with `(-)^* = Hom(-, Λ)`.
pub fn ext_transpose_module(m: &Representation, n: usize) -> Result<Representation> {
    let found = pd(m)?;
    if found != Dimension::Finite(n) || m.is_zero() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: found.to_string(),
        });
    }
    let op = m.algebra().opposite();
    let res = resolve_projective(m, n);
    let star = |k: usize| ProjectiveSum::new(&op, res.sums[k].vertices.clone());
    let top = star(n);
    if n == 0 {
        return Ok(top.module);
    }
    let below = star(n - 1);
    let mut images: Vec<Vec<(usize, usize, Q)>> = vec![Vec::new(); below.vertices.len()];
    for (l, terms) in differential_terms(&res, n).into_iter().enumerate() {
        for (j, p, c) in terms {
            images[j].push((l, p, c));
        }
    }
    let vectors: Vec<Vec<Q>> = images
        .iter()
        .enumerate()
        .map(|(j, t)| top.vector(below.vertices[j], t))
        .collect();
    let d_star = below.map_from_generators(&top.module, &vectors);
    Ok(cokernel(&d_star).0)
}
