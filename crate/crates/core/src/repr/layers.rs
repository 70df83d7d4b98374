use super::morphism::{quotient, submodule};
use super::{ModuleMorphism, Representation};
use crate::linalg::Matrix;

/// Bases (in `M`'s coordinates) of `rad^l M` at every vertex.
pub fn radical_power_bases(m: &Representation, l: usize) -> Vec<Matrix> {
    let alg = m.algebra();
    let mut bases: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
    for _ in 0..l {
        let mut next: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::zeros(d, 0)).collect();
        for a in 0..alg.arrow_count() {
            let (s, t) = alg.arrow_ends(a);
            next[t] = next[t].hstack(&m.action(a).matmul(&bases[s]));
        }
        bases = next.iter().map(Matrix::column_basis).collect();
    }
    bases
}

/// `rad M` with its inclusion.
pub fn radical(m: &Representation) -> (Representation, ModuleMorphism) {
    submodule(m, radical_power_bases(m, 1))
}

/// `soc M`: the joint kernel of all arrows, with its inclusion.
pub fn socle(m: &Representation) -> (Representation, ModuleMorphism) {
    let alg = m.algebra();
    let mut stacked: Vec<Matrix> = m.dims().iter().map(|&d| Matrix::zeros(0, d)).collect();
    for a in 0..alg.arrow_count() {
        let (s, _) = alg.arrow_ends(a);
        stacked[s] = stacked[s].vstack(m.action(a));
    }
    submodule(m, stacked.iter().map(Matrix::nullspace).collect())
}

/// `top M = M / rad M` with the projection.
pub fn top(m: &Representation) -> (Representation, ModuleMorphism) {
    quotient(m, &radical_power_bases(m, 1))
}

/// Dimension vectors of `rad^k M / rad^{k+1} M`, until the radical vanishes.
pub fn radical_layers(m: &Representation) -> Vec<Vec<usize>> {
    let mut layers = Vec::new();
    let mut prev: Vec<usize> = m.dims().to_vec();
    let mut k = 1;
    while prev.iter().any(|&d| d > 0) {
        let next: Vec<usize> = radical_power_bases(m, k).iter().map(Matrix::cols).collect();
        layers.push(prev.iter().zip(&next).map(|(a, b)| a - b).collect());
        prev = next;
        k += 1;
    }
    layers
}

/// Composition length. Simples are one-dimensional, so this is the total
/// dimension.
pub fn length(m: &Representation) -> usize {
    m.dim()
}

/// Every radical layer is simple (or zero).
pub fn is_uniserial(m: &Representation) -> bool {
    radical_layers(m).iter().all(|l| l.iter().sum::<usize>() <= 1)
}
