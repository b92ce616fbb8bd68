//! Presentations on involutory generators and the presentations of the
//! toroidal maps and flat towers.

mod enumerate;

pub use enumerate::{coset_table, todd_coxeter, CosetTable, Strategy};

use serde::{Deserialize, Serialize};

use crate::config::DEFAULT_MAX_COSETS;
use crate::error::{Error, Result};
use crate::kernel::Permutation;
use crate::mix::build_flat_tower;
use crate::toroidal::{params_for_exponent, TorusParams};

/// A word as a list of generator indices.
pub type Word = Vec<usize>;

/// Group presentation whose generators are all involutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Adds `g g` for any generator that lacks it.
    pub fn new(ngens: usize, mut relators: Vec<Word>) -> Result<Self> {
        for g in 0..ngens {
            if !relators.iter().any(|r| r[..] == [g, g]) {
                relators.insert(g, vec![g, g]);
            }
        }
        let p = Presentation { ngens, relators };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ngens == 0 {
            return Err(Error::InvalidParams("presentation needs a generator".into()));
        }
        for r in &self.relators {
            if r.is_empty() {
                return Err(Error::InvalidParams("empty relator".into()));
            }
            if let Some(&g) = r.iter().find(|&&g| g >= self.ngens) {
                return Err(Error::InvalidParams(format!(
                    "relator uses generator {g} of {}",
                    self.ngens
                )));
            }
        }
        for g in 0..self.ngens {
            if !self.relators.iter().any(|r| r[..] == [g, g]) {
                return Err(Error::InvalidParams(format!("generator {g} lacks its involution relator")));
            }
        }
        Ok(())
    }

    /// Whether every relator is the identity under `gens`.
    pub fn holds_in(&self, gens: &[Permutation]) -> bool {
        gens.len() == self.ngens && self.relators.iter().all(|r| evaluate(r, gens).is_identity())
    }

    /// Order of the presented group, by enumerating cosets of the trivial
    /// subgroup.
    pub fn order(&self, max_cosets: usize, strategy: Strategy) -> Result<usize> {
        todd_coxeter(self, &[], max_cosets, strategy)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let p: Presentation = serde_json::from_str(s)?;
        p.validate()?;
        Ok(p)
    }
}

/// Product of the generators named by `w`, applied left to right.
pub fn evaluate(w: &[usize], gens: &[Permutation]) -> Permutation {
    let degree = gens.first().map_or(0, |g| g.degree());
    w.iter().fold(Permutation::identity(degree), |acc, &g| acc.then(&gens[g]))
}

/// Inverse of a word in involutions: the letters reversed.
fn inverse(w: &[usize]) -> Word {
    w.iter().rev().copied().collect()
}

fn commutator(a: &[usize], b: &[usize]) -> Word {
    [inverse(a), inverse(b), a.to_vec(), b.to_vec()].concat()
}

/// String Coxeter relators of `{4, .., 4}` on `ngens` generators, involutions
/// excluded.
fn string_44_relators(ngens: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for i in 0..ngens {
        for j in i + 1..ngens {
            let m = if j == i + 1 { 4 } else { 2 };
            out.push([i, j].repeat(m));
        }
    }
    out
}

/// `T1^s T2^t` on generators `a, a+1, a+2`, with `T1 = r0 r1 r2 r1` the unit
/// horizontal translation and `T2 = r1 T1 r1` the vertical one.
fn translation_relator(p: TorusParams, a: usize) -> Word {
    let t1 = [a, a + 1, a + 2, a + 1];
    let t2 = [a + 1, a, a + 1, a + 2];
    let mut w = t1.repeat(p.s as usize);
    w.extend(t2.repeat(p.t as usize));
    w
}

/// Presentation of the group of `{4,4}_(s,t)`.
pub fn presentation_44(s: u32, t: u32) -> Result<Presentation> {
    let p = TorusParams::new(s, t)?;
    let mut relators = string_44_relators(3);
    relators.push(translation_relator(p, 0));
    Presentation::new(3, relators)
}

/// Coxeter relators of `{4, .., 4}` plus one translation relator per
/// consecutive triple of generators, taken from `sections` in order.
pub fn universal_presentation(sections: &[TorusParams]) -> Result<Presentation> {
    if sections.is_empty() {
        return Err(Error::InvalidParams("need at least one section".into()));
    }
    let ngens = sections.len() + 2;
    let mut relators = string_44_relators(ngens);
    for (a, &p) in sections.iter().enumerate() {
        relators.push(translation_relator(p, a));
    }
    Presentation::new(ngens, relators)
}

/// Presentation for the flat tower of types `ns`: the universal relators,
/// optionally with `[(r_i r_{i+1})^2, (r_{i+2} r_{i+3})^2]` for each `i`.
pub fn flat_presentation(ns: &[u32], with_commutators: bool) -> Result<Presentation> {
    if let Some(&n) = ns.iter().find(|&&n| n < 5) {
        return Err(Error::InvalidParams(format!("section exponent {n} is below 5")));
    }
    let sections = ns.iter().map(|&n| params_for_exponent(n)).collect::<Result<Vec<_>>>()?;
    let mut p = universal_presentation(&sections)?;
    if with_commutators {
        for i in 0..p.ngens.saturating_sub(3) {
            let a = [i, i + 1].repeat(2);
            let b = [i + 2, i + 3].repeat(2);
            p.relators.push(commutator(&a, &b));
        }
    }
    Ok(p)
}

/// Outcome of comparing a flat presentation with the constructed tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub enumerated: usize,
    pub tower: u64,
    pub relators_hold: bool,
}

impl PresentationCheck {
    pub fn passed(&self) -> bool {
        self.relators_hold && self.enumerated as u64 == self.tower
    }
}

/// Compares the enumerated order of the flat presentation with the order
/// of the constructed tower, after checking the relators hold in the tower.
pub fn check_presentation_theorem(ns: &[u32], max_cosets: usize, strategy: Strategy) -> Result<PresentationCheck> {
    let tower = build_flat_tower(ns)?;
    let p = flat_presentation(ns, true)?;
    let relators_hold = p.holds_in(tower.group.gens());
    let enumerated = p.order(max_cosets, strategy)?;
    Ok(PresentationCheck {
        enumerated,
        tower: tower.group.order()?,
        relators_hold,
    })
}

pub fn verify_presentation_theorem(ns: &[u32]) -> Result<bool> {
    Ok(check_presentation_theorem(ns, DEFAULT_MAX_COSETS, Strategy::Hlt)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toroidal::build_torus_group;

    const MAX: usize = DEFAULT_MAX_COSETS;

    fn both(p: &Presentation) -> usize {
        let h = p.order(MAX, Strategy::Hlt).unwrap();
        let f = p.order(MAX, Strategy::Felsch).unwrap();
        assert_eq!(h, f, "strategies disagree");
        h
    }

    #[test]
    fn torus_presentations() {
        for (s, t) in [(2, 0), (4, 0), (2, 2), (3, 0), (3, 3), (4, 4), (8, 0)] {
            let p = presentation_44(s, t).unwrap();
            assert_eq!(both(&p) as u64, 8 * (s as u64 * s as u64 + t as u64 * t as u64), "({s},{t})");
        }
    }

    #[test]
    fn torus_relators_hold_in_affine_model() {
        for (s, t) in [(2, 0), (2, 2), (4, 0), (3, 3)] {
            let g = build_torus_group(TorusParams::new(s, t).unwrap()).unwrap();
            assert!(presentation_44(s, t).unwrap().holds_in(g.gens()));
        }
    }

    #[test]
    fn flat_orders() {
        assert_eq!(both(&flat_presentation(&[5, 5], true).unwrap()), 128);
        assert_eq!(both(&flat_presentation(&[6, 6], true).unwrap()), 512);
        assert_eq!(both(&flat_presentation(&[6, 6], false).unwrap()), 1024);
        assert_eq!(both(&flat_presentation(&[5, 5, 5], true).unwrap()), 512);
        assert!(flat_presentation(&[4, 5], true).is_err());
    }

    #[test]
    fn universal_orders() {
        let small = TorusParams::new(2, 0).unwrap();
        let u = |q: TorusParams| both(&universal_presentation(&[small, q]).unwrap());
        assert_eq!(u(small), 128);
        // e = 2 and e = 1
        assert_eq!(u(TorusParams::new(4, 0).unwrap()), 1 << 9);
        assert_eq!(u(TorusParams::new(2, 2).unwrap()), 1 << 8);
    }

    #[test]
    fn presentation_theorem() {
        for ns in [&[5, 5][..], &[5, 6], &[6, 6], &[5, 5, 5]] {
            let c = check_presentation_theorem(ns, MAX, Strategy::Hlt).unwrap();
            assert!(c.relators_hold, "{ns:?}");
            assert_eq!(c.enumerated as u64, c.tower, "{ns:?}");
        }
        assert!(verify_presentation_theorem(&[5, 6]).unwrap());
    }

    #[test]
    fn kernel_order_identity() {
        // |Γ(a, b)| = 2^(a-5) |Γ(5, b)| = 2^(b-5) |Γ(a, 5)|
        let order = |a: u32, b: u32| flat_presentation(&[a, b], true).unwrap().order(MAX, Strategy::Hlt).unwrap();
        for a in 5..=7 {
            for b in 5..=7 {
                let g = order(a, b);
                assert_eq!(g, order(5, b) << (a - 5));
                assert_eq!(g, order(a, 5) << (b - 5));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p = flat_presentation(&[5, 6], true).unwrap();
        let back = Presentation::from_json(&p.to_json().unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(Presentation::from_json(r#"{"ngens":1,"relators":[[0,1]]}"#).is_err());
    }
}
