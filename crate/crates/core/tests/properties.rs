use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use quiveralg::algebra::Relation;
use quiveralg::homological::{ext_dim, ext_dim_injective, id, pd, projective_cover};
use quiveralg::linalg::{q, Matrix};
use quiveralg::orthogonal::nakayama_atlas;
use quiveralg::repr::{decompose, direct_sum, hom_dim, hom_space, is_isomorphic, radical, top, ModuleMorphism};
use quiveralg::{compute_algebra, named_fixture, AlgebraTable, FixtureTag, QuiverPresentation, Representation};

fn alg(tag: FixtureTag) -> Arc<AlgebraTable> {
    compute_algebra(&named_fixture(tag).unwrap()).unwrap()
}

fn corpus_tag() -> impl Strategy<Value = FixtureTag> {
    prop::sample::select(FixtureTag::corpus())
}

fn menu(a: &Arc<AlgebraTable>) -> Vec<Representation> {
    nakayama_atlas(a).map(|at| at.modules).unwrap_or_else(|_| {
        (1..=a.vertex_count())
            .flat_map(|v| {
                [
                    Representation::simple(a, v).unwrap(),
                    Representation::projective(a, v).unwrap(),
                    Representation::injective(a, v).unwrap(),
                ]
            })
            .collect()
    })
}

/// Unit lower triangular times unit upper triangular, entries from `seed`.
fn invertible(n: usize, seed: &[i64]) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    let mut it = seed.iter().cycle();
    for i in 0..n {
        for j in 0..i {
            let mut l = lower.to_rows();
            l[i][j] = q(*it.next().unwrap());
            lower = Matrix::from_rows(l);
            let mut u = upper.to_rows();
            u[j][i] = q(*it.next().unwrap());
            upper = Matrix::from_rows(u);
        }
    }
    lower.matmul(&upper)
}

/// The same module written in another basis at every vertex.
fn rebase(m: &Representation, seed: &[i64]) -> Representation {
    let a = m.algebra();
    let change: Vec<Matrix> = m.dims().iter().map(|&d| invertible(d, seed)).collect();
    let actions = (0..a.arrow_count())
        .map(|arrow| {
            let (s, t) = a.arrow_ends(arrow);
            change[t].inverse().unwrap().matmul(m.action(arrow)).matmul(&change[s])
        })
        .collect();
    Representation::new(a.clone(), m.dims().to_vec(), actions).unwrap()
}

fn combination(x: &Representation, y: &Representation, coeffs: &[i64]) -> ModuleMorphism {
    let basis = hom_space(x, y).unwrap();
    let mut f = ModuleMorphism::zero(x, y);
    for (g, c) in basis.iter().zip(coeffs.iter().cycle()) {
        f = f.add(&g.scale(&q(*c)));
    }
    f
}

/// Linear quiver or oriented cycle on `m` vertices with a subset of the
/// length-2 zero relations.
fn monomial(m: usize, cyclic: bool, mask: u32) -> (QuiverPresentation, Vec<[usize; 2]>) {
    let mut p = QuiverPresentation::new(m);
    let mut forbidden = Vec::new();
    let arrows = if cyclic { m } else { m - 1 };
    for i in 1..=arrows {
        let (s, t) = if cyclic { (i, i % m + 1) } else { (i + 1, i) };
        p = p.with_arrow(&format!("c{i}"), s, t);
    }
    for i in 1..=arrows {
        let next = if cyclic {
            i % m + 1
        } else if i > 1 {
            i - 1
        } else {
            continue;
        };
        if mask & (1 << (i - 1)) != 0 {
            p = p.with_relation(Relation::monomial(&[format!("c{next}"), format!("c{i}")]));
            forbidden.push([i - 1, next - 1]);
        }
    }
    (p, forbidden)
}

/// Composable arrow words avoiding every forbidden consecutive pair.
fn surviving_words(a: &AlgebraTable, forbidden: &[[usize; 2]]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = (0..a.arrow_count()).map(|x| vec![x]).collect();
    while let Some(w) = frontier.pop() {
        assert!(w.len() <= 4 * a.vertex_count(), "word search does not terminate");
        let last = *w.last().unwrap();
        for next in 0..a.arrow_count() {
            if a.arrow_ends(next).0 == a.arrow_ends(last).1 && !forbidden.contains(&[last, next]) {
                let mut longer = w.clone();
                longer.push(next);
                frontier.push(longer);
            }
        }
        out.insert(w);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monomial_basis_matches_word_count(m in 1usize..=5, cyclic in any::<bool>(), mask in 0u32..32) {
        let arrows = if cyclic { m } else { m - 1 };
        let mask = mask & ((1 << arrows) - 1);
        prop_assume!(!cyclic || mask != 0);
        let (p, forbidden) = monomial(m, cyclic, mask);
        let a = compute_algebra(&p).unwrap();
        let words = surviving_words(&a, &forbidden);
        let basis: BTreeSet<Vec<usize>> =
            a.basis().iter().filter(|b| !b.is_trivial()).map(|b| b.arrows.clone()).collect();
        prop_assert_eq!(basis, words);
        prop_assert_eq!(a.dimension(), a.opposite().dimension());
        let n = a.dimension();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut left = vec![q(0); n];
                    for (xy, c) in a.product(x, y) {
                        for (r, d) in a.product(*xy, z) {
                            left[*r] += c * d;
                        }
                    }
                    let mut right = vec![q(0); n];
                    for (yz, c) in a.product(y, z) {
                        for (r, d) in a.product(x, *yz) {
                            right[*r] += c * d;
                        }
                    }
                    prop_assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn hom_dimension_ignores_basis(tag in corpus_tag(), i in 0usize..32, j in 0usize..32,
                                   seed in prop::collection::vec(-2i64..=2, 1..8)) {
        let a = alg(tag);
        let mods = menu(&a);
        let (x, y) = (&mods[i % mods.len()], &mods[j % mods.len()]);
        let x2 = rebase(x, &seed);
        prop_assert_eq!(hom_dim(x, y).unwrap(), hom_dim(&x2, y).unwrap());
        prop_assert_eq!(hom_dim(y, x).unwrap(), hom_dim(y, &x2).unwrap());
        prop_assert!(is_isomorphic(x, &x2).unwrap());
        prop_assert_eq!(pd(x).unwrap(), pd(&x2).unwrap());
    }

    #[test]
    fn decomposition_recovers_summands(tag in corpus_tag(), picks in prop::collection::vec(0usize..32, 1..4),
                                       seed in prop::collection::vec(-2i64..=2, 1..8)) {
        let a = alg(tag);
        let mods = menu(&a);
        let parts: Vec<Representation> = picks.iter().map(|&p| mods[p % mods.len()].clone()).collect();
        let sum = rebase(&direct_sum(&a, &parts), &seed);
        let found = decompose(&sum).unwrap().flattened();
        prop_assert_eq!(found.len(), parts.len());
        prop_assert!(is_isomorphic(&direct_sum(&a, &found), &sum).unwrap());
        let mut unmatched = parts.clone();
        for f in &found {
            let pos = unmatched.iter().position(|u| u.dims() == f.dims() && is_isomorphic(u, f).unwrap());
            prop_assert!(pos.is_some());
            unmatched.remove(pos.unwrap());
        }
    }

    #[test]
    fn ext_is_balanced_and_additive(tag in corpus_tag(), i in 0usize..32, j in 0usize..32, k in 0usize..32,
                                    deg in 1usize..=3) {
        let a = alg(tag);
        let mods = menu(&a);
        let (x, y, z) = (&mods[i % mods.len()], &mods[j % mods.len()], &mods[k % mods.len()]);
        let e = ext_dim(x, y, deg).unwrap();
        prop_assert_eq!(e, ext_dim_injective(x, y, deg).unwrap());
        let yz = direct_sum(&a, &[y.clone(), z.clone()]);
        prop_assert_eq!(ext_dim(x, &yz, deg).unwrap(), e + ext_dim(x, z, deg).unwrap());
    }

    #[test]
    fn duality_reverses_composition(tag in corpus_tag(), i in 0usize..32, j in 0usize..32, k in 0usize..32,
                                    coeffs in prop::collection::vec(-2i64..=2, 1..6)) {
        let a = alg(tag);
        let mods = menu(&a);
        let (x, y, z) = (&mods[i % mods.len()], &mods[j % mods.len()], &mods[k % mods.len()]);
        let f = combination(x, y, &coeffs);
        let g = combination(y, z, &coeffs[1..]);
        let left = g.compose(&f).dual();
        let right = f.dual().compose(&g.dual());
        prop_assert_eq!(left.blocks(), right.blocks());
        prop_assert!(left.intertwines());
        prop_assert_eq!(pd(x).unwrap(), id(&x.dual()).unwrap());
    }

    #[test]
    fn covers_dualize_to_monomorphisms(tag in corpus_tag(), i in 0usize..32) {
        let a = alg(tag);
        let mods = menu(&a);
        let m = &mods[i % mods.len()];
        let cover = projective_cover(m);
        prop_assert!(cover.map.is_surjective());
        prop_assert!(cover.map.dual().is_injective());
        let (rad, _) = radical(m);
        let (t, proj) = top(m);
        let kernel_dims: Vec<usize> = proj.blocks().iter().map(|b| b.cols() - b.rank()).collect();
        prop_assert_eq!(kernel_dims.as_slice(), rad.dims());
        for v in 0..a.vertex_count() {
            prop_assert_eq!(t.dims()[v] + rad.dims()[v], m.dims()[v]);
            prop_assert_eq!(cover.vertices.iter().filter(|&&w| w == v).count(), t.dims()[v]);
        }
    }
}

#[test]
fn indecomposable_projectives_and_injectives_fill_the_algebra() {
    for tag in FixtureTag::corpus() {
        let a = alg(tag);
        let k = a.vertex_count();
        let p: usize = (1..=k).map(|v| Representation::projective(&a, v).unwrap().dim()).sum();
        let i: usize = (1..=k).map(|v| Representation::injective(&a, v).unwrap().dim()).sum();
        assert_eq!((p, i), (a.dimension(), a.dimension()), "{tag}");
    }
}
