//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons,
//! each within its time budget. Runs as a plain binary so the lines are
//! always printed.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use polyforge::catalog::{cube_group, polygon_group, regular_corpus};
use polyforge::config::DEFAULT_MAX_COSETS;
use polyforge::fap::{n_minus, n_plus};
use polyforge::fpres::{flat_presentation, universal_presentation, Strategy as Enumeration};
use polyforge::geometry::{build_poset, medial, posets_isomorphic, FacePoset};
use polyforge::kernel::{generator_matching_isomorphic, FiniteGroup, Permutation};
use polyforge::mix::build_flat_tower;
use polyforge::power::{power_2k, predicted_order_2kg, proper_central_involutions};
use polyforge::semireg::{build_semireg_poset, build_semiregular, constituent_posets, doubling_automorphism_exists};
use polyforge::toroidal::{build_torus_group, params_for_exponent, torus_group_for_exponent, TorusParams};
use polyforge::StringCGroup;

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Elements of a small group, by breadth-first closure over the generators.
fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

fn pow2(e: u32) -> u64 {
    1u64 << e
}

fn parabolic_elements(g: &StringCGroup, idx: &[usize]) -> Vec<Permutation> {
    let gens: Vec<Permutation> = idx.iter().map(|&i| g.gen(i).clone()).collect();
    closure(g.degree(), &gens)
}

fn tuples(len: usize, values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat()))
            .collect();
    }
    out
}

fn c1_toroidal_classification() -> Check {
    for n in 5..=10u32 {
        let p = params_for_exponent(n).map_err(e)?;
        let formula = 8 * (p.s as u64 * p.s as u64 + p.t as u64 * p.t as u64);
        let order = build_torus_group(p).map_err(e)?.order().map_err(e)?;
        ensure!(order == pow2(n) && formula == pow2(n), "n={n}: order {order}, formula {formula}");
    }
    for (s, t) in [(3u64, 0u64), (5, 0), (3, 3)] {
        let formula = 8 * (s * s + t * t);
        ensure!(formula & (formula - 1) != 0, "({s},{t}): {formula} is a power of 2");
        let p = TorusParams::new(s as u32, t as u32).map_err(e)?;
        let order = build_torus_group(p).map_err(e)?.order().map_err(e)?;
        ensure!(order == formula, "({s},{t}): built order {order} vs {formula}");
    }
    Ok(())
}

fn c2_toroidal_fap() -> Check {
    for n in 5..=8u32 {
        let g = torus_group_for_exponent(n).map_err(e)?;
        let n0 = n_minus(&g, 0).map_err(e)?;
        let n2 = n_plus(&g, 2).map_err(e)?;
        for (name, nk, comp) in [("N(a0)", &n0, [1, 2]), ("N(a2)", &n2, [0, 1])] {
            let order = nk.order().map_err(e)?;
            ensure!(order == pow2(n - 3), "n={n}: |{name}| = {order}");
            // brute force: only the identity of the dihedral parabolic lies in N
            let mut meet = 0;
            for x in parabolic_elements(&g, &comp) {
                if nk.contains(&x).map_err(e)? {
                    meet += 1;
                }
            }
            ensure!(meet == 1, "n={n}: {name} meets the complement in {meet} elements");
        }
    }
    Ok(())
}

fn c3_flat_towers() -> Check {
    for d in 4..=6usize {
        for ns in tuples(d - 2, &[5, 6, 7]) {
            let t = build_flat_tower(&ns).map_err(e)?;
            let exp = ns.iter().sum::<u32>() - 3 * (d as u32 - 3);
            let order = t.group.order().map_err(e)?;
            ensure!(order == pow2(exp), "{ns:?}: order {order}, expected 2^{exp}");
            ensure!(
                t.group.check_intersection_property().map_err(e)?,
                "{ns:?}: intersection property fails"
            );
            for (j, &n) in ns.iter().enumerate() {
                let section = t.group.parabolic(&[j, j + 1, j + 2]).map_err(e)?;
                let torus = torus_group_for_exponent(n).map_err(e)?;
                ensure!(
                    generator_matching_isomorphic(&section, torus.group()).map_err(e)?,
                    "{ns:?}: section {j} does not match [4,4]^({n})"
                );
            }
        }
    }
    Ok(())
}

fn c4_all_fives() -> Check {
    for d in 3..=7u32 {
        let t = build_flat_tower(&vec![5; d as usize - 2]).map_err(e)?;
        let order = t.group.order().map_err(e)?;
        ensure!(order == pow2(2 * d - 1), "d={d}: order {order}");
    }
    Ok(())
}

fn c5_presentation_theorem() -> Check {
    for ns in [&[5, 5][..], &[5, 6], &[6, 6], &[5, 5, 5]] {
        let tower = build_flat_tower(ns).map_err(e)?;
        let p = flat_presentation(ns, true).map_err(e)?;
        ensure!(p.holds_in(tower.group.gens()), "{ns:?}: relators fail in the tower");
        let enumerated = p.order(DEFAULT_MAX_COSETS, Enumeration::Hlt).map_err(e)? as u64;
        let order = tower.group.order().map_err(e)?;
        ensure!(enumerated == order, "{ns:?}: enumerated {enumerated}, tower {order}");
    }
    let universal = flat_presentation(&[6, 6], false)
        .map_err(e)?
        .order(DEFAULT_MAX_COSETS, Enumeration::Hlt)
        .map_err(e)?;
    ensure!(universal == 1024, "(6,6) without commutators: {universal}");
    Ok(())
}

fn c6_universal_orders() -> Check {
    let base = TorusParams::new(2, 0).map_err(e)?;
    let e1 = 1u32;
    let e2 = 2u32;
    let cases = [
        (TorusParams::new(2, 0).map_err(e)?, 128u64),
        (TorusParams::new(1 << e2, 0).map_err(e)?, pow2(2 * e2 + 5)),
        (TorusParams::new(1 << e1, 1 << e1).map_err(e)?, pow2(2 * e1 + 6)),
    ];
    for (q, expected) in cases {
        let order = universal_presentation(&[base, q])
            .map_err(e)?
            .order(DEFAULT_MAX_COSETS, Enumeration::Hlt)
            .map_err(e)? as u64;
        ensure!(order == expected, "{{{base},{q}}}: {order}, expected {expected}");
    }
    Ok(())
}

/// Every ridge lies in one facet of each family, and around every
/// `(d-3)`-face the facets met in cyclic order alternate between families.
/// Level `r + 1` of the poset holds the rank-`r` faces.
fn alternates(p: &FacePoset) -> bool {
    let d = p.rank();
    let Some(fam) = &p.facet_family else {
        return false;
    };
    let (lower, ridge_level) = (d - 2, d - 1);
    let facets_of = |r: u32| p.up(ridge_level, r as usize);
    let ridges_ok = (0..p.level_size(ridge_level)).all(|r| {
        let up = facets_of(r as u32);
        up.len() == 2 && fam[up[0] as usize] != fam[up[1] as usize]
    });
    if !ridges_ok {
        return false;
    }
    // walk the cycle ridge, facet, ridge, .. around each (d-3)-face
    (0..p.level_size(lower)).all(|f| {
        let ridges = p.up(lower, f);
        let Some(&start) = ridges.first() else {
            return false;
        };
        let (mut ridge, mut facet) = (start, facets_of(start)[0]);
        let mut families = Vec::new();
        loop {
            families.push(fam[facet as usize]);
            let Some(next) = ridges
                .iter()
                .copied()
                .find(|&r| r != ridge && facets_of(r).contains(&facet))
            else {
                return false;
            };
            ridge = next;
            let up = facets_of(ridge);
            facet = if up[0] == facet { up[1] } else { up[0] };
            if ridge == start {
                break;
            }
        }
        families.len() == ridges.len() && families.windows(2).all(|w| w[0] != w[1])
    })
}

fn c7_semiregular() -> Check {
    for len in 0..=1usize {
        let d = len as u32 + 4;
        for ns in tuples(len, &[5, 6, 7]) {
            for last in tuples(2, &[5, 6, 7]) {
                let (n, m) = (last[0], last[1]);
                let t = build_semiregular(&ns, (n, m)).map_err(e)?;
                let exp = ns.iter().sum::<u32>() + n + m - 3 * (d - 3);
                let order = t.group.order().map_err(e)?;
                ensure!(order == pow2(exp), "{ns:?};{n},{m}: order {order}, expected 2^{exp}");
                let doubling = doubling_automorphism_exists(&t).map_err(e)?;
                ensure!(doubling == (n == m), "{ns:?};{n},{m}: doubling {doubling}");
                let s = build_semireg_poset(&t, 1 << 16).map_err(e)?;
                let (p, q, k) = constituent_posets(&t).map_err(e)?;
                let f0 = |x: &FacePoset| x.f_vector()[0];
                ensure!(
                    f0(&s) * f0(&k) == f0(&p) * f0(&q),
                    "{ns:?};{n},{m}: f0 {} * {} vs {} * {}",
                    f0(&s),
                    f0(&k),
                    f0(&p),
                    f0(&q)
                );
                ensure!(alternates(&s), "{ns:?};{n},{m}: facet families do not alternate");
            }
        }
    }
    Ok(())
}

fn c8_medial() -> Check {
    let k = build_torus_group(TorusParams::new(2, 0).map_err(e)?).map_err(e)?;
    let m = medial(&k).map_err(e)?;
    let target = build_poset(&build_torus_group(TorusParams::new(2, 2).map_err(e)?).map_err(e)?).map_err(e)?;
    ensure!(posets_isomorphic(&m.poset, &target).map_err(e)?, "medial of (2,0) is not (2,2)");
    let order = m.group.order().map_err(e)?;
    ensure!(order == 64, "medial group order {order}");
    let c = medial(&cube_group().map_err(e)?).map_err(e)?;
    ensure!(c.poset.f_vector() == [12, 24, 14], "cuboctahedron f-vector {:?}", c.poset.f_vector());
    Ok(())
}

fn c9_power() -> Check {
    let bases = [
        ("{4}", polygon_group(4).map_err(e)?, 3u32, 4u64),
        ("{4,4}_(2,0)", build_torus_group(TorusParams::new(2, 0).map_err(e)?).map_err(e)?, 5, 4),
        ("{4,4}_(2,2)", build_torus_group(TorusParams::new(2, 2).map_err(e)?).map_err(e)?, 6, 8),
    ];
    for (label, k, n, v) in &bases {
        let p = power_2k(k).map_err(e)?;
        let order = p.order().map_err(e)?;
        ensure!(order == pow2(n + *v as u32), "2^{label}: order {order}");
        let d = k.rank();
        let vf = p.parabolic(&(1..=d).collect::<Vec<_>>()).map_err(e)?;
        ensure!(
            generator_matching_isomorphic(&vf, k.group()).map_err(e)?,
            "2^{label}: vertex-figure does not match K"
        );
    }
    let square = power_2k(&bases[0].1).map_err(e)?;
    let t40 = build_torus_group(TorusParams::new(4, 0).map_err(e)?).map_err(e)?;
    ensure!(
        generator_matching_isomorphic(square.group(), t40.group()).map_err(e)?,
        "2^{{4}} does not match [4,4]_(4,0)"
    );
    let k = &bases[1].1;
    let qualifying: Vec<_> = proper_central_involutions(k)
        .map_err(e)?
        .into_iter()
        .filter(|c| c.avoids_facet)
        .collect();
    ensure!(qualifying.len() == 1, "{} qualifying involutions", qualifying.len());
    // verify it directly: order 2, central, outside both parabolics
    let z = &qualifying[0].element;
    ensure!(!z.is_identity() && z.then(z).is_identity(), "not an involution");
    ensure!(k.gens().iter().all(|r| z.then(r) == r.then(z)), "not central");
    ensure!(!parabolic_elements(k, &[1, 2]).contains(z), "inside the vertex-figure subgroup");
    ensure!(!parabolic_elements(k, &[0, 1]).contains(z), "inside the facet subgroup");
    let predicted = predicted_order_2kg(k, 3).map_err(e)?;
    ensure!(predicted == 1 << 13, "predicted {predicted}");
    Ok(())
}

fn polytopal(label: &str, g: &StringCGroup) -> Check {
    let p = build_poset(g).map_err(e)?;
    ensure!(p.check_diamond(), "{label}: diamond condition fails");
    ensure!(p.check_flag_connected(), "{label}: not strongly flag-connected");
    let order = g.order().map_err(e)? as usize;
    ensure!(p.flag_count() == order, "{label}: {} flags, order {order}", p.flag_count());
    Ok(())
}

fn c10_polytopality() -> Check {
    for (label, g) in regular_corpus(1 << 14).map_err(e)? {
        polytopal(&label, &g)?;
    }
    let mut runner = TestRunner::new(Config {
        cases: 24,
        failure_persistence: None,
        ..Config::default()
    });
    let torus = (2u32..=6, any::<bool>()).prop_map(|(s, diag)| (s, if diag { s } else { 0 }));
    runner
        .run(&torus, |(s, t)| {
            let g = build_torus_group(TorusParams::new(s, t).unwrap()).unwrap();
            polytopal(&format!("({s},{t})"), &g).map_err(TestCaseError::fail)
        })
        .map_err(e)?;
    let towers = prop::collection::vec(5u32..=7, 2..=3)
        .prop_filter("order at most 2^14", |ns| {
            ns.iter().sum::<u32>() - 3 * (ns.len() as u32 - 1) <= 14
        });
    runner
        .run(&towers, |ns| {
            let t = build_flat_tower(&ns).unwrap();
            polytopal(&format!("{ns:?}"), &t.group).map_err(TestCaseError::fail)
        })
        .map_err(e)?;
    Ok(())
}

fn c11_kernel_oracles() -> Check {
    for (label, g) in regular_corpus(1 << 12).map_err(e)? {
        let brute = closure(g.degree(), g.gens()).len() as u64;
        let chain = g.order().map_err(e)?;
        ensure!(chain == brute, "{label}: chain {chain}, closure {brute}");
    }
    // random groups: chain order against closure, intersections against
    // filtering
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let gens = prop::collection::vec(Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(), 1..=3);
    runner
        .run(&(gens.clone(), gens), |(a, b)| {
            let to_perms = |v: Vec<Vec<usize>>| -> Vec<Permutation> {
                v.into_iter().map(|x| Permutation::from_images(x).unwrap()).collect()
            };
            let (a, b) = (to_perms(a), to_perms(b));
            let ea = closure(7, &a);
            let eb: HashSet<Permutation> = closure(7, &b).into_iter().collect();
            prop_assume!(ea.len() <= 1 << 12 && eb.len() <= 1 << 12);
            let ga = FiniteGroup::new(7, a).unwrap();
            let gb = FiniteGroup::new(7, b).unwrap();
            prop_assert_eq!(ga.order().unwrap(), ea.len() as u64);
            let filtered = ea.iter().filter(|x| eb.contains(*x)).count() as u64;
            prop_assert_eq!(ga.intersection(&gb).unwrap().order().unwrap(), filtered);
            Ok(())
        })
        .map_err(e)?;
    Ok(())
}

/// Name, check, time budget in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 toroidal classification", c1_toroidal_classification, 5),
        ("2 toroidal FAP", c2_toroidal_fap, 5),
        ("3 flat-tower order formula", c3_flat_towers, 180),
        ("4 all-fives tower orders", c4_all_fives, 30),
        ("5 presentation theorem", c5_presentation_theorem, 60),
        ("6 universal 4-polytope orders", c6_universal_orders, 60),
        ("7 semiregular theorem", c7_semiregular, 120),
        ("8 medial", c8_medial, 5),
        ("9 power polytopes", c9_power, 30),
        ("10 polytopality diagnostics", c10_polytopality, 120),
        ("11 kernel oracle equivalence", c11_kernel_oracles, 60),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("took {elapsed:.1?}, budget {budget} s"))
            } else {
                Ok(())
            }
        });
        match result {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
