//! Normal closures of generator tails and heads, and the flat amalgamation
//! property (FAP).

use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::kernel::FiniteGroup;

fn check_index(g: &StringCGroup, k: usize) -> Result<()> {
    if k >= g.rank() {
        Err(Error::RankOutOfRange {
            index: k,
            rank: g.rank(),
        })
    } else {
        Ok(())
    }
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

/// `N_k^+`: normal closure of `{ρ_k, .., ρ_{d-1}}` in the full group.
pub fn n_plus(g: &StringCGroup, k: usize) -> Result<FiniteGroup> {
    check_index(g, k)?;
    g.group().normal_closure(&g.gens()[k..])
}

/// `N_k^-`: normal closure of `{ρ_0, .., ρ_k}` in the full group.
pub fn n_minus(g: &StringCGroup, k: usize) -> Result<FiniteGroup> {
    check_index(g, k)?;
    g.group().normal_closure(&g.gens()[..=k])
}

/// `N̂_j`: normal closure of `ρ_j` in `<ρ_j, ρ_{j+1}, ρ_{j+2}>`.
pub fn n_hat(g: &StringCGroup, j: usize) -> Result<FiniteGroup> {
    if j + 2 >= g.rank() {
        return Err(Error::RankOutOfRange {
            index: j + 2,
            rank: g.rank(),
        });
    }
    let window = g.parabolic(&[j, j + 1, j + 2])?;
    window.normal_closure(&[g.gen(j).clone()])
}

/// Decides whether `n` meets `complement` trivially, and if so checks that
/// `|n| |complement| = |G|`.
fn trivially_intersecting(g: &StringCGroup, n: &FiniteGroup, complement: &FiniteGroup) -> Result<bool> {
    let trivial = g.group().subgroup(Vec::new())?;
    let meet = n.intersection_order_over(complement, &trivial)?;
    if meet != 1 {
        return Ok(false);
    }
    let product = n.order()? as u128 * complement.order()? as u128;
    if product != g.order()? as u128 {
        return Err(Error::Inconsistent(format!(
            "trivial intersection but |N| |H| = {product} differs from |G| = {}",
            g.order()?
        )));
    }
    Ok(true)
}

/// FAP with respect to the `k`-faces: `N_k^+` meets `<ρ_0, .., ρ_{k-1}>`
/// trivially.
pub fn has_fap_faces(g: &StringCGroup, k: usize) -> Result<bool> {
    let n = n_plus(g, k)?;
    let complement = g.parabolic(&range(0, k))?;
    trivially_intersecting(g, &n, &complement)
}

/// FAP with respect to the co-`k`-faces: `N_k^-` meets
/// `<ρ_{k+1}, .., ρ_{d-1}>` trivially.
pub fn has_fap_cofaces(g: &StringCGroup, k: usize) -> Result<bool> {
    let n = n_minus(g, k)?;
    let complement = g.parabolic(&range(k + 1, g.rank()))?;
    trivially_intersecting(g, &n, &complement)
}

/// Outcome of the hereditary FAP check. Unmet hypotheses are reported apart
/// from a failed conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FapOutcome {
    Holds,
    Fails,
    NotApplicable(String),
}

/// If `G` has the FAP for its co-`k`-faces and the co-`k`-face has the FAP
/// for its own co-`l`-faces, then `G` has the FAP for its co-`(k+l+1)`-faces.
pub fn check_fap_hereditary(g: &StringCGroup, k: usize, l: usize) -> Result<FapOutcome> {
    let d = g.rank();
    if d < 4 {
        return Ok(FapOutcome::NotApplicable(format!("rank {d} is below 4")));
    }
    if k > d - 3 || l + k + 4 > d {
        return Ok(FapOutcome::NotApplicable(format!(
            "indices k={k}, l={l} outside 0 <= k <= d-3, 0 <= l <= d-k-4 for d={d}"
        )));
    }
    if !has_fap_cofaces(g, k)? {
        return Ok(FapOutcome::NotApplicable(format!("no FAP with respect to co-{k}-faces")));
    }
    let coface = g.section(k + 1..d)?;
    if !has_fap_cofaces(&coface, l)? {
        return Ok(FapOutcome::NotApplicable(format!(
            "the co-{k}-face has no FAP with respect to its co-{l}-faces"
        )));
    }
    Ok(if has_fap_cofaces(g, k + l + 1)? {
        FapOutcome::Holds
    } else {
        FapOutcome::Fails
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toroidal::torus_group_for_exponent;

    #[test]
    fn n_plus_zero_is_everything() {
        let g = torus_group_for_exponent(5).unwrap();
        assert_eq!(n_plus(&g, 0).unwrap().order().unwrap(), 32);
        assert_eq!(n_minus(&g, 2).unwrap().order().unwrap(), 32);
        assert!(n_plus(&g, 3).is_err());
    }

    #[test]
    fn toroidal_normal_closures() {
        for n in 5..=8u32 {
            let g = torus_group_for_exponent(n).unwrap();
            let a2 = n_plus(&g, 2).unwrap();
            let a0 = n_minus(&g, 0).unwrap();
            assert_eq!(a2.order().unwrap(), 1 << (n - 3));
            assert_eq!(a0.order().unwrap(), 1 << (n - 3));
            assert!(has_fap_faces(&g, 2).unwrap());
            assert!(has_fap_cofaces(&g, 0).unwrap());
            assert!(has_fap_faces(&g, 0).unwrap());
            assert!(has_fap_cofaces(&g, 2).unwrap());
            assert_eq!(n_hat(&g, 0).unwrap().order().unwrap(), a0.order().unwrap());
        }
    }

    #[test]
    fn edge_fap_agrees_with_membership() {
        // the complement <ρ_0> has order 2, so the intersection is trivial
        // exactly when ρ_0 is outside N_1^+
        for n in 5..=7 {
            let g = torus_group_for_exponent(n).unwrap();
            let n1 = n_plus(&g, 1).unwrap();
            assert_eq!(has_fap_faces(&g, 1).unwrap(), !n1.contains(g.gen(0)).unwrap());
        }
    }

    #[test]
    fn hereditary_not_applicable_on_rank_three() {
        let g = torus_group_for_exponent(5).unwrap();
        assert!(matches!(
            check_fap_hereditary(&g, 0, 0).unwrap(),
            FapOutcome::NotApplicable(_)
        ));
    }
}
