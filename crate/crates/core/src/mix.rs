//! Flat amalgamation of two string C-groups (the `(k+1)`-mix) and the towers
//! of flat polytopes with toroidal rank-3 sections built from it.

use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::fap::{has_fap_cofaces, has_fap_faces, n_hat, n_minus};
use crate::kernel::{direct_product, generator_matching_isomorphic, Permutation};
use crate::toroidal::torus_group_for_exponent;

fn precondition(msg: String) -> Error {
    Error::MixPrecondition(msg)
}

/// Checks the hypotheses of the amalgamation for `P1` (rank `c`), `P2`
/// (rank `d`) and overlap parameter `k`.
pub fn check_mix_preconditions(p1: &StringCGroup, p2: &StringCGroup, k: usize) -> Result<()> {
    let c = p1.rank();
    let d = p2.rank();
    if c < 2 || k > c - 2 {
        return Err(precondition(format!("k = {k} violates 0 <= k <= c-2 with c = {c}")));
    }
    if k + d < c {
        return Err(precondition(format!("k = {k} violates k >= c-d with c = {c}, d = {d}")));
    }
    let coface: Vec<usize> = (k + 1..c).collect();
    let face: Vec<usize> = (0..c - k - 1).collect();
    if !generator_matching_isomorphic(&p1.parabolic(&coface)?, &p2.parabolic(&face)?)? {
        return Err(precondition(format!(
            "co-{k}-face of the first group does not match the {}-face of the second",
            c - k - 1
        )));
    }
    if !has_fap_cofaces(p1, k)? {
        return Err(precondition(format!(
            "first group lacks the FAP with respect to its co-{k}-faces"
        )));
    }
    if !has_fap_faces(p2, c - k - 1)? {
        return Err(precondition(format!(
            "second group lacks the FAP with respect to its {}-faces",
            c - k - 1
        )));
    }
    Ok(())
}

/// The `(k+1)`-mix of `P1` and `P2` inside `Γ(P1) × Γ(P2)`. The generators
/// of `P2` are indexed from `k+1`: `ρ_i = (α_i, 1)` for `i <= k`,
/// `(α_i, β_i)` for `k < i < c` and `(1, β_i)` for `c <= i <= k+d`.
///
/// Checks the hypotheses, the string relations and the order identity
/// `|G| = |N_k^-(P1)| |P2|`; see [`verify_mix`] for the remaining
/// conclusions.
pub fn k_mix(p1: &StringCGroup, p2: &StringCGroup, k: usize) -> Result<StringCGroup> {
    check_mix_preconditions(p1, p2, k)?;
    let c = p1.rank();
    let d = p2.rank();
    let (prod, e1, e2) = direct_product(p1.group(), p2.group())?;
    let beta = |i: usize| e2.apply(p2.gen(i - k - 1));
    let gens: Vec<Permutation> = (0..=k + d)
        .map(|i| {
            if i <= k {
                e1.apply(p1.gen(i))
            } else if i < c {
                e1.apply(p1.gen(i)).then(&beta(i))
            } else {
                beta(i)
            }
        })
        .collect();
    let g = StringCGroup::new(prod.subgroup(gens)?)?;
    let diag = g.check_string_relations();
    if !diag.passed() {
        let msg: Vec<String> = diag.failures.iter().map(|f| f.to_string()).collect();
        return Err(Error::RelationsFail(msg.join("; ")));
    }
    let expected = n_minus(p1, k)?.order()? as u128 * p2.order()? as u128;
    if g.order()? as u128 != expected {
        return Err(Error::Inconsistent(format!(
            "mix has order {}, expected |N_k^-| |P2| = {expected}",
            g.order()?
        )));
    }
    Ok(g)
}

/// What the amalgamation guarantees for `g = k_mix(p1, p2, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixReport {
    pub intersection_property: bool,
    pub faces_match_first: bool,
    pub cofaces_match_second: bool,
    pub fap_cofaces: bool,
    pub fap_faces: bool,
}

impl MixReport {
    pub fn passed(&self) -> bool {
        self.intersection_property
            && self.faces_match_first
            && self.cofaces_match_second
            && self.fap_cofaces
            && self.fap_faces
    }
}

pub fn verify_mix(g: &StringCGroup, p1: &StringCGroup, p2: &StringCGroup, k: usize) -> Result<MixReport> {
    let c = p1.rank();
    let r = g.rank();
    let faces: Vec<usize> = (0..c).collect();
    let cofaces: Vec<usize> = (k + 1..r).collect();
    Ok(MixReport {
        intersection_property: g.check_intersection_property()?,
        faces_match_first: generator_matching_isomorphic(&g.parabolic(&faces)?, p1.group())?,
        cofaces_match_second: generator_matching_isomorphic(&g.parabolic(&cofaces)?, p2.group())?,
        fap_cofaces: has_fap_cofaces(g, k)?,
        fap_faces: has_fap_faces(g, c)?,
    })
}

/// A flat regular `d`-polytope group with rank-3 sections `[4,4]^(n_j)`,
/// `j = 3..d`.
#[derive(Clone, Debug)]
pub struct FlatTower {
    pub ns: Vec<u32>,
    pub group: StringCGroup,
}

impl FlatTower {
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// `Σ n_j - 3(d-3)`.
    pub fn predicted_exponent(&self) -> u32 {
        predicted_exponent(&self.ns)
    }
}

pub fn predicted_exponent(ns: &[u32]) -> u32 {
    ns.iter().sum::<u32>() - 3 * (ns.len() as u32 - 1)
}

/// Builds the tower for `(n_3, .., n_d)` by mixing the `(d-1)`-tower with
/// `[4,4]^(n_d)` at `k = d-4`.
pub fn build_flat_tower(ns: &[u32]) -> Result<FlatTower> {
    if ns.is_empty() {
        return Err(Error::InvalidParams("a tower needs at least one type".into()));
    }
    if let Some(n) = ns.iter().find(|&&n| n < 5) {
        return Err(Error::InvalidParams(format!("type exponent {n} is below 5")));
    }
    let mut group = torus_group_for_exponent(ns[0])?;
    for (i, &n) in ns.iter().enumerate().skip(1) {
        let d = i + 3;
        let top = torus_group_for_exponent(n)?;
        group = k_mix(&group, &top, d - 4)?;
    }
    let tower = FlatTower {
        ns: ns.to_vec(),
        group,
    };
    let expected = 1u64 << tower.predicted_exponent();
    if tower.group.order()? != expected {
        return Err(Error::Inconsistent(format!(
            "tower {ns:?} has order {}, expected {expected}",
            tower.group.order()?
        )));
    }
    Ok(tower)
}

/// Orders `[|N̂_0|, |N̂_1|, .., |N̂_{d-3}|, 8]` of the iterated semidirect
/// decomposition.
pub fn iterated_factors(t: &FlatTower) -> Result<Vec<u64>> {
    let d = t.rank();
    let mut out = Vec::with_capacity(d - 1);
    for j in 0..=d - 3 {
        out.push(n_hat(&t.group, j)?.order()?);
    }
    out.push(t.group.parabolic(&[d - 2, d - 1])?.order()?);
    Ok(out)
}

/// For each `j = 3..d`, whether the rank-3 section on generators
/// `{j-3, j-2, j-1}` generator-matches `[4,4]^(n_j)`.
pub fn sections_match(t: &FlatTower) -> Result<Vec<bool>> {
    t.ns.iter()
        .enumerate()
        .map(|(i, &n)| {
            let section = t.group.parabolic(&[i, i + 1, i + 2])?;
            generator_matching_isomorphic(&section, torus_group_for_exponent(n)?.group())
        })
        .collect()
}

/// `[(ρ_i ρ_{i+1})^2, (ρ_{i+2} ρ_{i+3})^2] = 1` for `0 <= i <= d-4`.
pub fn commutator_relators_hold(g: &StringCGroup) -> bool {
    let d = g.rank();
    (0..d.saturating_sub(3)).all(|i| {
        let a = g.gen(i).then(g.gen(i + 1)).pow(2);
        let b = g.gen(i + 2).then(g.gen(i + 3)).pow(2);
        a.commutator(&b).is_identity()
    })
}

/// The conjugates `ρ_1 ρ_0 ρ_1` and `ρ_2 ρ_1 ρ_2` do not commute.
pub fn conjugates_do_not_commute(g: &StringCGroup) -> bool {
    let x = g.gen(0).conjugate_by(g.gen(1));
    let y = g.gen(1).conjugate_by(g.gen(2));
    !x.commutator(&y).is_identity()
}
