//! Power polytopes `2^K` and proper central involutions.

use crate::cstring::{is_power_of_two_by_halving, StringCGroup};
use crate::error::{Error, Result};
use crate::kernel::{FiniteGroup, Permutation};

/// Largest vertex count accepted, keeping the cube part `{0,1}^v` small.
pub const MAX_POWER_VERTICES: usize = 14;

/// Group of `2^K` acting on `{0,1}^v ⊔ Ω`, where `v` is the number of
/// vertices of `K` and `Ω` is the point set of `K`'s own faithful
/// representation. The new `ρ_0` flips the base-vertex coordinate; `ρ_{i+1}`
/// permutes coordinates as `ρ_i` permutes vertices and acts as `ρ_i` on `Ω`.
pub fn power_2k(k: &StringCGroup) -> Result<StringCGroup> {
    for p in k.schlafli()? {
        if !is_power_of_two_by_halving(p) {
            return Err(Error::InvalidParams(format!("Schläfli entry {p} is not a power of 2")));
        }
    }
    let d = k.rank();
    let vf: Vec<usize> = (1..d).collect();
    let action = k.group().coset_action(&k.parabolic(&vf)?)?;
    let v = action.reps.len();
    if v > MAX_POWER_VERTICES {
        return Err(Error::CapExceeded {
            cap: "power_vertices",
            limit: MAX_POWER_VERTICES as u64,
        });
    }
    let cube = 1usize << v;
    let degree = cube + k.degree();
    let mut gens = Vec::with_capacity(d + 1);
    let mut flip: Vec<usize> = (0..degree).collect();
    for (x, img) in flip.iter_mut().enumerate().take(cube) {
        *img = x ^ 1;
    }
    gens.push(Permutation::from_images(flip)?);
    for (i, r) in k.gens().iter().enumerate() {
        let vertex_perm = &action.perms[i];
        let mut images = Vec::with_capacity(degree);
        for x in 0..cube {
            let mut y = 0usize;
            for j in 0..v {
                if x >> j & 1 == 1 {
                    y |= 1 << vertex_perm.apply(j);
                }
            }
            images.push(y);
        }
        images.extend(r.images().iter().map(|&p| cube + p as usize));
        gens.push(Permutation::from_images(images)?);
    }
    let g = StringCGroup::new(FiniteGroup::with_limits(degree, gens, k.group().limits())?)?;
    let expected = k.order()? << v;
    if g.order()? != expected {
        return Err(Error::Inconsistent(format!(
            "power group has order {}, expected {expected}",
            g.order()?
        )));
    }
    Ok(g)
}

/// A central involution outside the vertex-figure subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralInvolution {
    pub element: Permutation,
    /// Also outside the facet subgroup `<ρ_0, .., ρ_{d-2}>`.
    pub avoids_facet: bool,
}

/// Central elements of order 2 not in `<ρ_1, .., ρ_{d-1}>`, found by
/// filtering all elements.
pub fn proper_central_involutions(g: &StringCGroup) -> Result<Vec<CentralInvolution>> {
    let d = g.rank();
    let vertex_figure = g.parabolic(&(1..d).collect::<Vec<_>>())?;
    let facet = g.parabolic(&(0..d - 1).collect::<Vec<_>>())?;
    let mut central = Vec::new();
    g.group().for_each_element(|x| {
        if x.order() == 2 && g.gens().iter().all(|r| x.then(r) == r.then(x)) {
            central.push(x.clone());
        }
        true
    })?;
    let mut out = Vec::new();
    for x in central {
        if !vertex_figure.contains(&x)? {
            out.push(CentralInvolution {
                avoids_facet: !facet.contains(&x)?,
                element: x,
            });
        }
    }
    Ok(out)
}

/// Order `2^(n + (m+1) v / 2)` predicted for `2^{K, G(2^m)}`, where
/// `|Γ(K)| = 2^n` and `K` has `v` vertices. Requires a central involution
/// avoiding both the vertex-figure and the facet subgroup, and `v` even.
pub fn predicted_order_2kg(k: &StringCGroup, m: u32) -> Result<u128> {
    if m < 3 {
        return Err(Error::InvalidParams(format!("m = {m} is below 3")));
    }
    if !proper_central_involutions(k)?.iter().any(|c| c.avoids_facet) {
        return Err(Error::InvalidParams(
            "no central involution outside both the vertex-figure and facet subgroups".into(),
        ));
    }
    let order = k.order()?;
    if !is_power_of_two_by_halving(order) {
        return Err(Error::InvalidParams(format!("group order {order} is not a power of 2")));
    }
    let n = order.trailing_zeros();
    let d = k.rank();
    let v = order / k.parabolic(&(1..d).collect::<Vec<_>>())?.order()?;
    if v % 2 != 0 {
        return Err(Error::InvalidParams(format!("vertex count {v} is odd")));
    }
    let exp = n as u64 + (m as u64 + 1) * v / 2;
    if exp >= 128 {
        return Err(Error::InvalidParams(format!("exponent {exp} overflows")));
    }
    Ok(1u128 << exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::polygon_group;
    use crate::kernel::generator_matching_isomorphic;
    use crate::toroidal::{build_torus_group, TorusModel, TorusParams};

    fn torus(s: u32, t: u32) -> StringCGroup {
        build_torus_group(TorusParams::new(s, t).unwrap()).unwrap()
    }

    #[test]
    fn power_of_square() {
        let p = power_2k(&polygon_group(4).unwrap()).unwrap();
        assert_eq!(p.order().unwrap(), 128);
        assert_eq!(p.schlafli().unwrap(), vec![4, 4]);
        assert!(p.is_string_c_group().unwrap());
        assert!(generator_matching_isomorphic(p.group(), torus(4, 0).group()).unwrap());
    }

    #[test]
    fn power_of_tori() {
        let k = torus(2, 0);
        let p = power_2k(&k).unwrap();
        assert_eq!(p.order().unwrap(), 512);
        assert_eq!(p.schlafli().unwrap(), vec![4, 4, 4]);
        let vf = p.section(1..4).unwrap();
        assert!(generator_matching_isomorphic(vf.group(), k.group()).unwrap());
        // translations form an elementary abelian normal subgroup of order 2^v
        let n = p.group().normal_closure(&[p.gen(0).clone()]).unwrap();
        assert_eq!(n.order().unwrap(), 16);
        let trivial = p.group().subgroup(vec![]).unwrap();
        assert_eq!(n.intersection_order_over(vf.group(), &trivial).unwrap(), 1);
    }

    #[test]
    fn non_two_power_type_rejected() {
        assert!(power_2k(&polygon_group(3).unwrap()).is_err());
    }

    #[test]
    fn central_involutions_of_small_torus() {
        let k = torus(2, 0);
        let found = proper_central_involutions(&k).unwrap();
        // the translation by (1,1) and the half-turn about the face centre
        assert_eq!(found.len(), 2);
        let qualifying: Vec<_> = found.iter().filter(|c| c.avoids_facet).collect();
        assert_eq!(qualifying.len(), 1);
        let model = TorusModel::new(TorusParams::new(2, 0).unwrap());
        let tr = crate::toroidal::AffineIsometry::new([[1, 0], [0, 1]], (1, 1), &model.lattice);
        assert_eq!(qualifying[0].element, model.regular_permutation(&tr));
    }

    #[test]
    fn central_involutions_of_other_torus() {
        let k = torus(2, 2);
        let found = proper_central_involutions(&k).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].avoids_facet);
        let model = TorusModel::new(TorusParams::new(2, 2).unwrap());
        let tr = crate::toroidal::AffineIsometry::new([[1, 0], [0, 1]], (2, 0), &model.lattice);
        assert_eq!(found[0].element, model.regular_permutation(&tr));
    }

    #[test]
    fn square_half_turn() {
        let found = proper_central_involutions(&polygon_group(4).unwrap()).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].avoids_facet);
    }

    #[test]
    fn predicted_orders() {
        assert_eq!(predicted_order_2kg(&torus(2, 0), 3).unwrap(), 1 << 13);
        assert_eq!(predicted_order_2kg(&torus(2, 0), 4).unwrap(), 1 << 15);
        assert_eq!(predicted_order_2kg(&torus(2, 2), 3).unwrap(), 1 << 22);
        assert!(predicted_order_2kg(&torus(2, 0), 2).is_err());
    }
}
