//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::sync::Arc;
use std::time::{Duration, Instant};

use quiveralg::algebra::Relation;
use quiveralg::homological::{
    ext_dim, ext_dim_injective, id, min_injective_coresolution, min_projective_resolution, pd, Dimension,
};
use quiveralg::orthogonal::{almost_split_check, enumerate_mos, nakayama_atlas};
use quiveralg::repr::{decompose, direct_sum, hom_dim, is_isomorphic};
use quiveralg::structure::{
    is_canonical_shape, is_n_auslander, is_nakayama, trivial_mos_criterion, verify_theorem, SimpleClassification,
    TheoremId,
};
use quiveralg::homological::{cosyzygy, syzygy_sequence};
use quiveralg::{compute_algebra, named_fixture, AlgebraTable, FixtureTag, QuiverPresentation, Representation};

const AC1_SECONDS_PER_N: u64 = 10;
const AC2_SECONDS: u64 = 120;
const SWEEP_MAX_VERTICES: usize = 5;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn alg(tag: FixtureTag) -> Arc<AlgebraTable> {
    compute_algebra(&named_fixture(tag).unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fin(n: usize) -> Dimension {
    Dimension::Finite(n)
}

fn ac1() -> Check {
    for n in 2..=4 {
        let start = Instant::now();
        let a = alg(FixtureTag::A(n));
        ensure(a.dimension() == 2 * n + 1, format!("A{n}: dim {}", a.dimension()))?;
        let simples = SimpleClassification::of(&a).map_err(|e| e.to_string())?;
        ensure(simples.global_dimension() == fin(n), format!("A{n}: gl.dim"))?;
        ensure(is_n_auslander(&a, n - 1).unwrap(), format!("A{n}: not {}-Auslander", n - 1))?;
        ensure(is_nakayama(&a).unwrap(), format!("A{n}: not Nakayama"))?;
        let c = trivial_mos_criterion(&a).unwrap();
        ensure(c.hypothesis_met && c.holds, format!("A{n}: trivial criterion"))?;
        let found = enumerate_mos(&nakayama_atlas(&a).unwrap(), n - 1).unwrap();
        ensure(
            found.len() == 1 && found[0].members.len() == n + 2 && found[0].is_trivial,
            format!("A{n}: candidates {found:?}"),
        )?;
        let took = start.elapsed();
        ensure(
            took < Duration::from_secs(AC1_SECONDS_PER_N),
            format!("A{n}: {took:?} exceeds {AC1_SECONDS_PER_N}s"),
        )?;
    }
    Ok("A2..A4 canonical invariants and unique trivial candidate".into())
}

/// Directed path `1 <- 2 <- ... <- m` with the chosen consecutive zero
/// relations, or the oriented cycle `1 -> 2 -> ... -> m -> 1`.
fn sweep_presentation(m: usize, cyclic: bool, mask: u32) -> QuiverPresentation {
    let mut p = QuiverPresentation::new(m);
    if cyclic {
        for i in 1..=m {
            p = p.with_arrow(&format!("c{i}"), i, i % m + 1);
        }
        for i in 1..=m {
            if mask & (1 << (i - 1)) != 0 {
                let next = i % m + 1;
                p = p.with_relation(Relation::monomial(&[format!("c{next}"), format!("c{i}")]));
            }
        }
    } else {
        for i in 1..m {
            p = p.with_arrow(&format!("b{i}"), i + 1, i);
        }
        for i in 1..m.saturating_sub(1) {
            if mask & (1 << (i - 1)) != 0 {
                p = p.with_relation(Relation::monomial(&[format!("b{i}"), format!("b{}", i + 1)]));
            }
        }
    }
    p
}

fn ac2() -> Check {
    let start = Instant::now();
    let (mut total, mut positives) = (0, 0);
    for m in 1..=SWEEP_MAX_VERTICES {
        for cyclic in [false, true] {
            let slots = if cyclic { m } else { m.saturating_sub(2) };
            for mask in 0u32..(1 << slots) {
                if cyclic && mask == 0 {
                    continue;
                }
                let a = compute_algebra(&sweep_presentation(m, cyclic, mask))
                    .map_err(|e| format!("m={m} cyclic={cyclic} mask={mask:b}: {e}"))?;
                let c = trivial_mos_criterion(&a).map_err(|e| e.to_string())?;
                let predicate = c.hypothesis_met && c.holds;
                let expected = !cyclic && m >= 3 && mask == (1 << slots) - 1;
                ensure(
                    predicate == expected,
                    format!("m={m} cyclic={cyclic} mask={mask:b}: predicate {predicate}, expected {expected}"),
                )?;
                ensure(is_canonical_shape(&a) == expected, format!("m={m} mask={mask:b}: shape test"))?;
                if predicate {
                    ensure(c.gl_dim == fin(m - 1), format!("m={m}: gl.dim {}", c.gl_dim))?;
                }
                total += 1;
                positives += usize::from(predicate);
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(AC2_SECONDS), format!("sweep took {took:?}"))?;
    Ok(format!("{total} presentations, {positives} positives (A2..A4), {took:.2?}"))
}

fn ac3() -> Check {
    for n in 2..=3 {
        let a = alg(FixtureTag::E410(n));
        let i = Representation::injective(&a, n + 1).unwrap();
        let p = Representation::projective(&a, n + 1).unwrap();
        let e = ext_dim(&i, &p, 1).unwrap();
        ensure(e >= 1, format!("E410-{n}: Ext^1(I, P) = {e}"))?;
        let found = enumerate_mos(&nakayama_atlas(&a).unwrap(), n - 1).unwrap();
        ensure(found.is_empty(), format!("E410-{n}: {} candidates", found.len()))?;
    }
    Ok("E410-2, E410-3: nonzero Ext^1(I(n+1), P(n+1)), no candidates".into())
}

struct SimpleTable {
    pd_two: Vec<usize>,
    ids: Vec<(usize, Dimension)>,
}

fn simple_table(a: &Arc<AlgebraTable>) -> SimpleTable {
    let s = SimpleClassification::of(a).unwrap();
    SimpleTable {
        pd_two: s.with_pd(fin(2)),
        ids: s.simples.iter().map(|e| (e.vertex, e.id)).collect(),
    }
}

fn id_of(t: &SimpleTable, v: usize) -> Dimension {
    t.ids[v - 1].1
}

/// No maximal 1-orthogonal subcategory: the trivial criterion fails and the
/// necessary conditions for a non-trivial one fail.
fn non_existence(a: &Arc<AlgebraTable>) -> std::result::Result<(), String> {
    let c = trivial_mos_criterion(a).unwrap();
    ensure(c.hypothesis_met && c.gl_dim == fin(2), "not an Auslander algebra of gl.dim 2")?;
    ensure(!c.holds, "trivial criterion holds")?;
    let s = SimpleClassification::of(a).unwrap();
    let top = s.with_pd(fin(2));
    let both = top.iter().any(|&v| s.entry(v).id == fin(2));
    let non_inj = top.iter().filter(|&&v| !s.entry(v).is_injective).count();
    ensure(!(both && non_inj >= 2), "necessary conditions for a non-trivial one hold")?;
    if is_nakayama(a).unwrap() {
        let found = enumerate_mos(&nakayama_atlas(a).unwrap(), 1).unwrap();
        ensure(found.is_empty(), "enumeration found a candidate")?;
    }
    Ok(())
}

fn e66_matches(a: &Arc<AlgebraTable>) -> bool {
    let t = simple_table(a);
    t.pd_two == vec![2] && id_of(&t, 2) == fin(2)
}

fn ac4() -> Check {
    let e64 = alg(FixtureTag::E410(2));
    let t = simple_table(&e64);
    ensure(t.pd_two == vec![3, 5], format!("E64 pd-2 simples {:?}", t.pd_two))?;
    ensure(id_of(&t, 3) == fin(2) && id_of(&t, 5) == fin(0), "E64 injective dimensions")?;
    non_existence(&e64).map_err(|e| format!("E64: {e}"))?;

    let e65 = alg(FixtureTag::E65);
    let t = simple_table(&e65);
    ensure(t.pd_two == vec![4, 5, 6], format!("E65 pd-2 simples {:?}", t.pd_two))?;
    ensure(
        id_of(&t, 4) == fin(1) && id_of(&t, 5) == fin(1) && id_of(&t, 6) == fin(0),
        "E65 injective dimensions",
    )?;
    non_existence(&e65).map_err(|e| format!("E65: {e}"))?;

    let e66 = alg(FixtureTag::E66);
    ensure(e66_matches(&e66), "E66 table")?;
    non_existence(&e66).map_err(|e| format!("E66: {e}"))?;
    Ok("E64, E65, E66 simple tables and non-existence verdicts".into())
}

fn ac5() -> Check {
    let a = alg(FixtureTag::Rem);
    let lambda = Representation::regular(&a);
    let co = min_injective_coresolution(&lambda, 2 * a.dimension()).unwrap();
    let i1 = pd(&co.terms[1]).unwrap();
    ensure(i1 == fin(2), format!("pd I^1(Λ) = {i1}"))?;
    ensure(!is_n_auslander(&a, 1).unwrap(), "REM is 1-Auslander")?;
    ensure(is_nakayama(&a).unwrap(), "REM not Nakayama")?;
    let atlas = nakayama_atlas(&a).unwrap();
    let found = enumerate_mos(&atlas, 1).unwrap();
    ensure(found.len() == 1 && found[0].is_trivial, format!("candidates {found:?}"))?;
    let mut expected = Vec::new();
    for v in 1..=5 {
        expected.push(atlas.find(&Representation::projective(&a, v).unwrap()).unwrap().unwrap());
    }
    for v in 3..=5 {
        expected.push(atlas.find(&Representation::injective(&a, v).unwrap()).unwrap().unwrap());
    }
    expected.sort_unstable();
    expected.dedup();
    ensure(found[0].members == expected, format!("members {:?} vs {expected:?}", found[0].members))?;
    Ok("REM: pd I^1 = 2, Nakayama, unique trivial candidate of 8 members".into())
}

fn ac6() -> Check {
    let suite = [
        TheoremId::PdIdSum,
        TheoremId::SimpleSyzygies,
        TheoremId::SyzygyBijection,
        TheoremId::ProjectiveOrRadicalSimple,
        TheoremId::UniqueTopSimple,
        TheoremId::AlmostSplitSyzygies,
    ];
    for n in 2..=4 {
        let a = alg(FixtureTag::A(n));
        for t in suite {
            let v = verify_theorem(&a, t, None).map_err(|e| format!("A{n} {t}: {e}"))?;
            ensure(v.passed, format!("A{n}:\n{v}"))?;
            if t == TheoremId::AlmostSplitSyzygies {
                ensure(v.evidence.len() == n, format!("A{n}: {} sequences", v.evidence.len()))?;
            }
        }
        let atlas = nakayama_atlas(&a).unwrap();
        let s = Representation::simple(&a, n + 1).unwrap();
        for i in 0..n {
            let seq = syzygy_sequence(&s, i).unwrap();
            ensure(almost_split_check(&seq, &atlas).unwrap().holds(), format!("A{n}: sequence {i}"))?;
        }
    }
    Ok("six statements PASS on A2..A4".into())
}

fn ac7() -> Check {
    let p = named_fixture(FixtureTag::E66).unwrap();
    ensure(e66_matches(&compute_algebra(&p).unwrap()), "right-to-left reading does not match")?;
    let flipped = compute_algebra(&p.with_flipped_composition()).unwrap();
    ensure(!e66_matches(&flipped), "flipped reading also matches")?;
    Ok("E66 table matches only under right-to-left composition".into())
}

fn property_modules(a: &Arc<AlgebraTable>) -> Vec<Representation> {
    match nakayama_atlas(a) {
        Ok(atlas) => atlas.modules,
        Err(_) => (1..=a.vertex_count())
            .flat_map(|v| {
                [
                    Representation::simple(a, v).unwrap(),
                    Representation::projective(a, v).unwrap(),
                    Representation::injective(a, v).unwrap(),
                ]
            })
            .collect(),
    }
}

fn ac8() -> Check {
    let mut checks = 0usize;
    for tag in [FixtureTag::A(2), FixtureTag::E66, FixtureTag::Rem] {
        let mods = property_modules(&alg(tag));
        for x in &mods {
            for y in &mods {
                for i in 1..=2 {
                    let (p, q) = (ext_dim(x, y, i).unwrap(), ext_dim_injective(x, y, i).unwrap());
                    ensure(p == q, format!("{tag}: Ext balance {p} vs {q}"))?;
                    checks += 1;
                }
            }
        }
    }
    for tag in FixtureTag::corpus() {
        let a = alg(tag);
        let mods = property_modules(&a);
        let budget = 2 * a.dimension();
        for m in &mods {
            for v in 1..=a.vertex_count() {
                let s = Representation::simple(&a, v).unwrap();
                for i in 1..=3 {
                    let lhs = ext_dim(&s, m, i).unwrap();
                    let rhs = hom_dim(&s, &cosyzygy(m, i)).unwrap();
                    ensure(lhs == rhs, format!("{tag}: Ext^{i}(S, M) {lhs} vs Hom(S, Ω^-i M) {rhs}"))?;
                    checks += 1;
                }
            }
            ensure(pd(m).unwrap() == id(&m.dual()).unwrap(), format!("{tag}: duality"))?;
            let r = min_projective_resolution(m, budget).unwrap();
            let c = min_injective_coresolution(m, budget).unwrap();
            ensure(r.is_exact() && r.is_minimal(), format!("{tag}: projective audit"))?;
            ensure(c.is_exact() && c.is_minimal(), format!("{tag}: injective audit"))?;
            checks += 3;
        }
        let parts: Vec<Representation> = mods.iter().take(4).cloned().collect();
        let doubled: Vec<Representation> = parts.iter().chain(parts.iter().take(2)).cloned().collect();
        let sum = direct_sum(&a, &doubled);
        let found = decompose(&sum).unwrap().flattened();
        ensure(found.len() == doubled.len(), format!("{tag}: {} summands", found.len()))?;
        let mut unmatched = doubled.clone();
        for f in &found {
            let pos = unmatched.iter().position(|u| u.dims() == f.dims() && is_isomorphic(u, f).unwrap());
            match pos {
                Some(p) => {
                    unmatched.remove(p);
                }
                None => return Err(format!("{tag}: unmatched summand {:?}", f.dims())),
            }
        }
        checks += 1;
    }
    Ok(format!("{checks} property checks, zero violations"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(msg) => println!("{name} PASS  {msg} [{:.2?}]", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL  {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
