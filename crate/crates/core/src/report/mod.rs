//! Keyed claim reports behind the command-line tool.

mod reproduce;

pub use reproduce::{reproduce, CRITERIA};

use serde::Serialize;

use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::fap::{has_fap_cofaces, has_fap_faces};
use crate::fpres::{Presentation, Strategy};
use crate::geometry::{build_poset, polytopality};
use crate::mix::{build_flat_tower, sections_match};
use crate::power::{power_2k, predicted_order_2kg, proper_central_involutions};
use crate::semireg::{
    build_semireg_poset, build_semiregular, check_alternation, constituent_posets, doubling_automorphism_exists,
};
use crate::toroidal::{build_torus_group, polarity_exists, TorusParams};

/// One checked statement: what was expected, what was observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub key: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

impl Claim {
    pub fn new(key: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        Claim {
            key: key.into(),
            passed: expected == observed,
            expected,
            observed,
        }
    }

    /// A reported value with nothing to compare against.
    pub fn info(key: impl Into<String>, observed: impl ToString) -> Self {
        Claim {
            key: key.into(),
            expected: "-".into(),
            observed: observed.to_string(),
            passed: true,
        }
    }

    /// A claim whose check raised an error.
    pub fn error(key: impl Into<String>, expected: impl ToString, err: &Error) -> Self {
        Claim {
            key: key.into(),
            expected: expected.to_string(),
            observed: format!("error: {err}"),
            passed: false,
        }
    }
}

/// Claims sorted by key.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(mut claims: Vec<Claim>) -> Self {
        claims.sort_by(|a, b| a.key.cmp(&b.key));
        Report { claims }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Plain-text table, one claim per line.
    pub fn to_table(&self) -> String {
        let kw = self.claims.iter().map(|c| c.key.len()).max().unwrap_or(3).max(3);
        let ew = self.claims.iter().map(|c| c.expected.len()).max().unwrap_or(8).max(8);
        let mut out = format!("{:<6}{:<kw$}  {:<ew$}  observed\n", "", "key", "expected");
        for c in &self.claims {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status:<6}{:<kw$}  {:<ew$}  {}\n", c.key, c.expected, c.observed));
        }
        out
    }
}

fn pow2(e: u32) -> String {
    format!("2^{e}")
}

fn as_pow2(n: u64) -> String {
    if n.is_power_of_two() {
        pow2(n.trailing_zeros())
    } else {
        n.to_string()
    }
}

/// Order, axioms and self-duality of `{4,4}_(s,t)`.
pub fn toroidal_report(p: TorusParams) -> Result<Report> {
    let g = build_torus_group(p)?;
    let key = |k: &str| format!("toroidal/{p}/{k}");
    Ok(Report::new(vec![
        Claim::new(key("order"), p.group_order(), g.order()?),
        Claim::new(key("string-c-group"), true, g.is_string_c_group()?),
        Claim::new(key("schlafli"), "4,4", join(&g.schlafli()?)),
        Claim::new(key("self-dual"), p.t == 0 || p.t == p.s, polarity_exists(&g)?),
        Claim::new(key("fap-vertices"), true, has_fap_cofaces(&g, 0)?),
        Claim::new(key("fap-faces"), true, has_fap_faces(&g, 2)?),
    ]))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// FAP of a flat group at every rank: for each `k`, both `N_k^+` against
/// `<ρ_0..ρ_{k-1}>` and `N_k^-` against `<ρ_{k+1}..>` where defined.
fn fap_everywhere(g: &StringCGroup) -> Result<bool> {
    let d = g.rank();
    for k in 1..d {
        if !has_fap_faces(g, k)? {
            return Ok(false);
        }
    }
    for k in 0..d - 1 {
        if !has_fap_cofaces(g, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order, intersection property, FAP and sections of the flat tower.
pub fn flat_report(ns: &[u32]) -> Result<Report> {
    let t = build_flat_tower(ns)?;
    let g = &t.group;
    let key = |k: &str| format!("flat/{}/{k}", join(ns));
    let sections = sections_match(&t)?;
    Ok(Report::new(vec![
        Claim::new(key("order"), pow2(t.predicted_exponent()), as_pow2(g.order()?)),
        Claim::new(key("intersection-property"), true, g.check_intersection_property()?),
        Claim::new(key("fap"), true, fap_everywhere(g)?),
        Claim::new(key("sections"), true, sections.iter().all(|&b| b)),
    ]))
}

/// Order, doubling, vertex count and alternation of a semiregular polytope.
pub fn semireg_report(ns: &[u32], last: (u32, u32), poset_cap: u64) -> Result<Report> {
    let t = build_semiregular(ns, last)?;
    let key = |k: &str| format!("semireg/{};{},{}/{k}", join(ns), last.0, last.1);
    let s = build_semireg_poset(&t, poset_cap)?;
    let (p, q, k) = constituent_posets(&t)?;
    let f0 = |x: &crate::geometry::FacePoset| x.f_vector()[0];
    Ok(Report::new(vec![
        Claim::new(key("order"), pow2(t.predicted_exponent()), as_pow2(t.group.order()?)),
        Claim::new(key("doubling"), last.0 == last.1, doubling_automorphism_exists(&t)?),
        Claim::new(key("f0-product"), f0(&p) * f0(&q), f0(&s) * f0(&k)),
        Claim::new(key("alternation"), true, check_alternation(&s)),
    ]))
}

/// Order and vertex-figure of `2^K`, and optionally the predicted order of
/// `2^{K, G(2^m)}` with the central involutions found in `K`.
pub fn power_report(label: &str, base: &StringCGroup, m: Option<u32>) -> Result<Report> {
    let key = |k: &str| format!("power/{label}/{k}");
    let d = base.rank();
    let n = base.order()?;
    let v = n / base.parabolic(&(1..d).collect::<Vec<_>>())?.order()?;
    let p = power_2k(base)?;
    let vf = p.section(1..d + 1)?;
    let mut schlafli = vec![4];
    schlafli.extend(base.schlafli()?);
    let mut claims = vec![
        Claim::new(key("order"), as_pow2(n << v), as_pow2(p.order()?)),
        Claim::new(key("schlafli"), join(&schlafli), join(&p.schlafli()?)),
        Claim::new(key("string-c-group"), true, p.is_string_c_group()?),
        Claim::new(
            key("vertex-figure"),
            true,
            crate::kernel::generator_matching_isomorphic(vf.group(), base.group())?,
        ),
    ];
    if let Some(m) = m {
        let inv = proper_central_involutions(base)?;
        let qualifying = inv.iter().filter(|c| c.avoids_facet).count();
        claims.push(Claim::info(key("proper-central-involutions"), inv.len()));
        claims.push(Claim::info(key("qualifying-central-involutions"), qualifying));
        let predicted = match predicted_order_2kg(base, m) {
            Ok(o) => pow2(o.trailing_zeros()),
            Err(e) => format!("error: {e}"),
        };
        let e = n.trailing_zeros() as u64 + (m as u64 + 1) * v / 2;
        claims.push(Claim::new(key(&format!("predicted-order-m{m}")), format!("2^{e}"), predicted));
    }
    Ok(Report::new(claims))
}

/// Which checks `verify` runs on each group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifySelection {
    pub fap: bool,
    pub intersection: bool,
    pub orders: bool,
    pub diamond: bool,
}

impl VerifySelection {
    pub fn all() -> Self {
        VerifySelection {
            fap: true,
            intersection: true,
            orders: true,
            diamond: true,
        }
    }
}

/// Runs the selected checks on every labelled group.
pub fn verify_report(groups: &[(String, StringCGroup)], sel: VerifySelection) -> Result<Report> {
    let mut claims = Vec::new();
    for (label, g) in groups {
        let key = |k: &str| format!("verify/{label}/{k}");
        if sel.intersection {
            claims.push(Claim::new(key("string-relations"), true, g.relations_hold()));
            claims.push(Claim::new(key("intersection-property"), true, g.check_intersection_property()?));
        }
        if sel.orders {
            claims.push(Claim::new(key("order-chain-vs-closure"), g.group().order_by_closure()?, g.order()?));
        }
        if sel.fap {
            // a property of flat groups, not an axiom: reported, not required
            claims.push(Claim::info(key("fap-all-ranks"), fap_everywhere(g)?));
        }
        if sel.diamond {
            let p = build_poset(g)?;
            let pt = polytopality(&p);
            claims.push(Claim::new(key("diamond"), true, pt.diamond));
            claims.push(Claim::new(key("flag-connected"), true, pt.flag_connected));
            claims.push(Claim::new(key("flags"), g.order()?, pt.flags));
        }
    }
    Ok(Report::new(claims))
}

/// Coset enumeration of a presentation, compared with an expected order
/// when one is known.
pub fn tc_report(label: &str, p: &Presentation, expected: Option<u64>, max: usize, s: Strategy) -> Result<Report> {
    let order = p.order(max, s)?;
    let key = format!("tc/{label}/order");
    let claim = match expected {
        Some(e) => Claim::new(key, as_pow2(e), as_pow2(order as u64)),
        None => Claim::info(key, as_pow2(order as u64)),
    };
    Ok(Report::new(vec![claim]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group_spec;

    #[test]
    fn claims_sorted_and_judged() {
        let r = Report::new(vec![Claim::new("b", 1, 1), Claim::new("a", 2, 3), Claim::info("c", 7)]);
        let keys: Vec<&str> = r.claims.iter().map(|c| c.key.as_str()).collect();
        assert_eq!(keys, ["a", "b", "c"]);
        assert!(!r.passed());
        assert!(r.to_table().lines().nth(1).unwrap().starts_with("FAIL"));
        assert!(r.to_json().unwrap().contains("\"observed\": \"3\""));
    }

    #[test]
    fn toroidal_and_flat() {
        let r = toroidal_report(TorusParams::new(2, 2).unwrap()).unwrap();
        assert!(r.passed());
        assert!(r.claims.iter().any(|c| c.key.ends_with("self-dual") && c.observed == "true"));
        let f = flat_report(&[5, 5]).unwrap();
        assert!(f.passed());
        assert!(f.claims.iter().any(|c| c.key.ends_with("order") && c.observed == "2^7"));
    }

    #[test]
    fn empty_verify() {
        let r = verify_report(&[], VerifySelection::all()).unwrap();
        assert!(r.claims.is_empty() && r.passed());
    }

    #[test]
    fn verify_cube() {
        let groups = vec![("cube".to_string(), parse_group_spec("cube").unwrap())];
        let r = verify_report(&groups, VerifySelection::all()).unwrap();
        assert!(r.passed());
        // the cube is not flat
        assert!(r.claims.iter().any(|c| c.key.ends_with("fap-all-ranks") && c.observed == "false"));
    }

    #[test]
    fn power_and_semireg() {
        let base = parse_group_spec("torus:2,0").unwrap();
        assert!(power_report("torus:2,0", &base, Some(3)).unwrap().passed());
        let r = semireg_report(&[], (5, 5), 1 << 16).unwrap();
        assert!(r.passed());
    }
}
