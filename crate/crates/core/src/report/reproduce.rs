//! The full reproducibility run: every numeric claim, keyed and checked.

use rayon::prelude::*;

use super::{as_pow2, join, pow2, semireg_report, Claim, Report};
use crate::catalog::{cube_group, polygon_group, regular_corpus};
use crate::config::DEFAULT_MAX_COSETS;
use crate::error::Result;
use crate::fap::{has_fap_cofaces, has_fap_faces, n_minus, n_plus};
use crate::fpres::{check_presentation_theorem, flat_presentation, universal_presentation, Strategy};
use crate::geometry::{build_poset, medial, polytopality, posets_isomorphic};
use crate::kernel::generator_matching_isomorphic;
use crate::mix::{build_flat_tower, predicted_exponent, sections_match};
use crate::power::{power_2k, predicted_order_2kg, proper_central_involutions};
use crate::toroidal::{build_torus_group, torus_group_for_exponent, TorusParams};

/// Poset cap used for rank-5 semiregular posets.
pub const SEMIREG_POSET_CAP: u64 = 1 << 16;

type Criterion = fn() -> Result<Vec<Claim>>;

/// Key prefixes and checks, in run order.
pub const CRITERIA: [(&str, Criterion); 11] = [
    ("01-toroidal-orders", toroidal_orders),
    ("02-toroidal-fap", toroidal_fap),
    ("03-flat-tower-orders", flat_tower_orders),
    ("04-all-fives-orders", all_fives_orders),
    ("05-presentation", presentation),
    ("06-universal-orders", universal_orders),
    ("07-semiregular", semiregular),
    ("08-medial", medial_claims),
    ("09-power", power),
    ("10-polytopality", polytopality_claims),
    ("11-kernel-oracles", kernel_oracles),
];

/// Runs every criterion (in parallel) and collects the claims. A criterion
/// that raises an error contributes one failing claim carrying the message.
pub fn reproduce() -> Report {
    let claims: Vec<Claim> = CRITERIA
        .par_iter()
        .flat_map(|(name, f)| match f() {
            Ok(claims) => claims
                .into_iter()
                .map(|mut c| {
                    c.key = format!("{name}/{}", c.key);
                    c
                })
                .collect(),
            Err(e) => vec![Claim::error(*name, "completes", &e)],
        })
        .collect();
    Report::new(claims)
}

fn toroidal_orders() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for n in 5..=10 {
        let g = torus_group_for_exponent(n)?;
        out.push(Claim::new(format!("n{n:02}"), pow2(n), as_pow2(g.order()?)));
    }
    for (s, t) in [(3, 0), (5, 0), (3, 3)] {
        let p = TorusParams::new(s, t)?;
        let order = build_torus_group(p)?.order()?;
        out.push(Claim::new(format!("{p}/not-2-power"), false, order.is_power_of_two()));
    }
    Ok(out)
}

fn toroidal_fap() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for n in 5..=8u32 {
        let g = torus_group_for_exponent(n)?;
        out.push(Claim::new(format!("n{n}/N0-order"), pow2(n - 3), as_pow2(n_minus(&g, 0)?.order()?)));
        out.push(Claim::new(format!("n{n}/N2-order"), pow2(n - 3), as_pow2(n_plus(&g, 2)?.order()?)));
        out.push(Claim::new(format!("n{n}/N0-trivial-meet"), true, has_fap_cofaces(&g, 0)?));
        out.push(Claim::new(format!("n{n}/N2-trivial-meet"), true, has_fap_faces(&g, 2)?));
    }
    Ok(out)
}

fn tuples(len: usize, values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |&v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn flat_tower_orders() -> Result<Vec<Claim>> {
    let all: Vec<Vec<u32>> = (2..=4).flat_map(|len| tuples(len, &[5, 6, 7])).collect();
    let claims: Result<Vec<Vec<Claim>>> = all
        .par_iter()
        .map(|ns| {
            let t = build_flat_tower(ns)?;
            let key = join(ns);
            Ok(vec![
                Claim::new(format!("{key}/order"), pow2(predicted_exponent(ns)), as_pow2(t.group.order()?)),
                Claim::new(
                    format!("{key}/intersection-property"),
                    true,
                    t.group.check_intersection_property()?,
                ),
                Claim::new(format!("{key}/sections"), true, sections_match(&t)?.iter().all(|&b| b)),
            ])
        })
        .collect();
    Ok(claims?.into_iter().flatten().collect())
}

fn all_fives_orders() -> Result<Vec<Claim>> {
    (3..=7u32)
        .map(|d| {
            let ns = vec![5; d as usize - 2];
            let t = build_flat_tower(&ns)?;
            Ok(Claim::new(format!("d{d}"), pow2(2 * d - 1), as_pow2(t.group.order()?)))
        })
        .collect()
}

fn presentation() -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for ns in [&[5, 5][..], &[5, 6], &[6, 6], &[5, 5, 5]] {
        let c = check_presentation_theorem(ns, DEFAULT_MAX_COSETS, Strategy::Hlt)?;
        out.push(Claim::new(
            format!("{}/enumerated-vs-tower", join(ns)),
            as_pow2(c.tower),
            as_pow2(c.enumerated as u64),
        ));
        out.push(Claim::new(format!("{}/relators-hold", join(ns)), true, c.relators_hold));
    }
    let universal = flat_presentation(&[6, 6], false)?.order(DEFAULT_MAX_COSETS, Strategy::Hlt)?;
    out.push(Claim::new("6,6/without-commutators", pow2(10), as_pow2(universal as u64)));
    Ok(out)
}

fn universal_orders() -> Result<Vec<Claim>> {
    let base = TorusParams::new(2, 0)?;
    let cases = [
        (TorusParams::new(2, 0)?, 7),
        // e = 2: 2^(2e+5)
        (TorusParams::new(4, 0)?, 2 * 2 + 5),
        // e = 1: 2^(2e+6)
        (TorusParams::new(2, 2)?, 2 + 6),
    ];
    cases
        .iter()
        .map(|&(q, e)| {
            let order = universal_presentation(&[base, q])?.order(DEFAULT_MAX_COSETS, Strategy::Hlt)?;
            Ok(Claim::new(format!("{base};{q}"), pow2(e), as_pow2(order as u64)))
        })
        .collect()
}

fn semiregular() -> Result<Vec<Claim>> {
    let mut cases: Vec<(Vec<u32>, (u32, u32))> = Vec::new();
    for len in 0..=1 {
        for ns in tuples(len, &[5, 6, 7]) {
            for last in tuples(2, &[5, 6, 7]) {
                cases.push((ns.clone(), (last[0], last[1])));
            }
        }
    }
    let reports: Result<Vec<_>> = cases
        .par_iter()
        .map(|(ns, last)| semireg_report(ns, *last, SEMIREG_POSET_CAP))
        .collect();
    Ok(reports?.into_iter().flat_map(|r| r.claims).collect())
}

fn medial_claims() -> Result<Vec<Claim>> {
    let k = build_torus_group(TorusParams::new(2, 0)?)?;
    let m = medial(&k)?;
    let target = build_poset(&build_torus_group(TorusParams::new(2, 2)?)?)?;
    let c = medial(&cube_group()?)?;
    Ok(vec![
        Claim::new("{4,4}_(2,0)/isomorphic-to-{4,4}_(2,2)", true, posets_isomorphic(&m.poset, &target)?),
        Claim::new("{4,4}_(2,0)/group-order", 64, m.group.order()?),
        Claim::new("cube/f-vector", "12,24,14", join(&c.poset.f_vector())),
    ])
}

fn power() -> Result<Vec<Claim>> {
    let bases = [
        ("{4}", polygon_group(4)?),
        ("{4,4}_(2,0)", build_torus_group(TorusParams::new(2, 0)?)?),
        ("{4,4}_(2,2)", build_torus_group(TorusParams::new(2, 2)?)?),
    ];
    let mut out = Vec::new();
    for (label, k) in &bases {
        let d = k.rank();
        let n = k.order()?;
        let v = n / k.parabolic(&(1..d).collect::<Vec<_>>())?.order()?;
        let p = power_2k(k)?;
        out.push(Claim::new(format!("{label}/order"), as_pow2(n << v), as_pow2(p.order()?)));
        let vf = p.section(1..d + 1)?;
        out.push(Claim::new(
            format!("{label}/vertex-figure"),
            true,
            generator_matching_isomorphic(vf.group(), k.group())?,
        ));
    }
    let square_power = power_2k(&bases[0].1)?;
    let torus40 = build_torus_group(TorusParams::new(4, 0)?)?;
    out.push(Claim::new(
        "{4}/matches-{4,4}_(4,0)",
        true,
        generator_matching_isomorphic(square_power.group(), torus40.group())?,
    ));
    let k = &bases[1].1;
    let qualifying = proper_central_involutions(k)?.iter().filter(|c| c.avoids_facet).count();
    out.push(Claim::new("{4,4}_(2,0)/qualifying-central-involutions", 1, qualifying));
    out.push(Claim::new(
        "{4,4}_(2,0)/predicted-2kg-m3",
        pow2(13),
        pow2(predicted_order_2kg(k, 3)?.trailing_zeros()),
    ));
    Ok(out)
}

/// Largest group order taken from the corpus for the poset checks.
const POLYTOPALITY_MAX_ORDER: u64 = 1 << 14;

fn polytopality_claims() -> Result<Vec<Claim>> {
    let corpus = regular_corpus(POLYTOPALITY_MAX_ORDER)?;
    let claims: Result<Vec<Claim>> = corpus
        .par_iter()
        .map(|(label, g)| {
            let pt = polytopality(&build_poset(g)?);
            let observed = format!(
                "diamond={} connected={} flags={}",
                pt.diamond, pt.flag_connected, pt.flags
            );
            Ok(Claim::new(
                label.clone(),
                format!("diamond=true connected=true flags={}", g.order()?),
                observed,
            ))
        })
        .collect();
    claims
}

const ORACLE_MAX_ORDER: u64 = 1 << 12;

fn kernel_oracles() -> Result<Vec<Claim>> {
    let corpus = regular_corpus(ORACLE_MAX_ORDER)?;
    let claims: Result<Vec<Vec<Claim>>> = corpus
        .par_iter()
        .map(|(label, g)| {
            let mut out = vec![Claim::new(
                format!("{label}/chain-vs-closure"),
                g.group().order_by_closure()?,
                g.order()?,
            )];
            let d = g.rank();
            let mut agree = true;
            for i in 0..d {
                for j in i + 1..d {
                    let a = g.parabolic(&(0..d).filter(|&x| x != i).collect::<Vec<_>>())?;
                    let b = g.parabolic(&(0..d).filter(|&x| x != j).collect::<Vec<_>>())?;
                    let mut brute = 0u64;
                    for x in a.elements()? {
                        if b.contains(&x)? {
                            brute += 1;
                        }
                    }
                    agree &= a.intersection(&b)?.order()? == brute;
                }
            }
            out.push(Claim::new(format!("{label}/intersection-vs-filter"), true, agree));
            Ok(out)
        })
        .collect();
    Ok(claims?.into_iter().flatten().collect())
}
