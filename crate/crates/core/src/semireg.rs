//! Alternating semiregular polytopes from tail-triangle groups: two flat
//! towers `P` and `Q` sharing the facet `K` are amalgamated inside
//! `Γ(P) × Γ(Q)`.

use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::geometry::{build_poset, CosetGeometry, FacePoset};
use crate::kernel::{direct_product, generator_matching_isomorphic, FiniteGroup, Permutation};
use crate::mix::build_flat_tower;

/// Generators `(α_0, .., α_{d-3}, α_{d-2}, β_{d-2})`: a string tail and two
/// commuting apexes closing a triangle.
#[derive(Clone, Debug)]
pub struct TailTriangleGroup {
    pub group: FiniteGroup,
    pub ns: Vec<u32>,
    pub last: (u32, u32),
    pub p: StringCGroup,
    pub q: StringCGroup,
}

impl TailTriangleGroup {
    /// Rank `d`, the number of generators.
    pub fn rank(&self) -> usize {
        self.group.generators().len()
    }

    pub fn tail(&self) -> &[Permutation] {
        &self.group.generators()[..self.rank() - 2]
    }

    pub fn apexes(&self) -> (&Permutation, &Permutation) {
        let g = self.group.generators();
        (&g[self.rank() - 2], &g[self.rank() - 1])
    }

    /// `<tail, α_{d-2}>`, a copy of `Γ(P)`.
    pub fn facet_group_p(&self) -> Result<StringCGroup> {
        let d = self.rank();
        let gens: Vec<Permutation> = self.group.generators()[..d - 1].to_vec();
        StringCGroup::new(self.group.subgroup(gens)?)
    }

    /// `<tail, β_{d-2}>`, a copy of `Γ(Q)`.
    pub fn facet_group_q(&self) -> Result<StringCGroup> {
        let d = self.rank();
        let mut gens: Vec<Permutation> = self.tail().to_vec();
        gens.push(self.group.generators()[d - 1].clone());
        StringCGroup::new(self.group.subgroup(gens)?)
    }

    /// `Σ n_j + n_{d-1} + m_{d-1} - 3(d-3)`.
    pub fn predicted_exponent(&self) -> u32 {
        semireg_exponent(&self.ns, self.last)
    }
}

pub fn semireg_exponent(ns: &[u32], last: (u32, u32)) -> u32 {
    let d = ns.len() as u32 + 4;
    ns.iter().sum::<u32>() + last.0 + last.1 - 3 * (d - 3)
}

fn tower(ns: &[u32], top: u32) -> Result<StringCGroup> {
    let mut all = ns.to_vec();
    all.push(top);
    Ok(build_flat_tower(&all)?.group)
}

/// Builds the tail-triangle group for `ns = (n_3, .., n_{d-2})` and
/// `last = (n_{d-1}, m_{d-1})`.
pub fn build_semiregular(ns: &[u32], last: (u32, u32)) -> Result<TailTriangleGroup> {
    if ns.iter().chain([&last.0, &last.1]).any(|&n| n < 5) {
        return Err(Error::InvalidParams("all parameters must be at least 5".into()));
    }
    let p = tower(ns, last.0)?;
    let q = tower(ns, last.1)?;
    let d = p.rank() + 1;
    let facet: Vec<usize> = (0..d - 2).collect();
    if !generator_matching_isomorphic(&p.parabolic(&facet)?, &q.parabolic(&facet)?)? {
        return Err(Error::Inconsistent("the two towers do not share their facet".into()));
    }
    let (prod, ep, eq) = direct_product(p.group(), q.group())?;
    let mut gens: Vec<Permutation> = (0..d - 2)
        .map(|i| ep.apply(p.gen(i)).then(&eq.apply(q.gen(i))))
        .collect();
    gens.push(ep.apply(p.gen(d - 2)));
    gens.push(eq.apply(q.gen(d - 2)));
    let t = TailTriangleGroup {
        group: prod.subgroup(gens)?,
        ns: ns.to_vec(),
        last,
        p,
        q,
    };
    let expected = 1u64 << t.predicted_exponent();
    if t.group.order()? != expected {
        return Err(Error::Inconsistent(format!(
            "tail-triangle group has order {}, expected {expected}",
            t.group.order()?
        )));
    }
    Ok(t)
}

fn swapped_apexes(t: &TailTriangleGroup) -> Result<FiniteGroup> {
    let mut gens = t.tail().to_vec();
    let (a, b) = t.apexes();
    gens.push(b.clone());
    gens.push(a.clone());
    t.group.subgroup(gens)
}

/// Whether fixing the tail and swapping the apexes extends to an automorphism.
pub fn doubling_automorphism_exists(t: &TailTriangleGroup) -> Result<bool> {
    generator_matching_isomorphic(&t.group, &swapped_apexes(t)?)
}

/// The group with the apex swap adjoined, of twice the order. Requires equal
/// last parameters, so that both factors are the same tower and the swap is
/// the exchange of the two coordinates.
pub fn doubled_group(t: &TailTriangleGroup) -> Result<FiniteGroup> {
    if t.last.0 != t.last.1 || t.p.gens() != t.q.gens() {
        return Err(Error::InvalidParams("doubling needs equal last parameters".into()));
    }
    let n = t.p.degree();
    let swap: Vec<usize> = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
    let mut gens = t.group.generators().to_vec();
    gens.push(Permutation::from_images(swap)?);
    let g = t.group.subgroup(gens)?;
    if g.order()? != 2 * t.group.order()? {
        return Err(Error::Inconsistent("apex swap did not double the group".into()));
    }
    Ok(g)
}

/// Face poset of the semiregular polytope. Rank-`i` faces for `i < d-2` are
/// cosets of the subgroup omitting `α_i`; rank `d-2` faces are cosets of the
/// tail `Γ(K)`; facets are cosets of `Γ(P)` (family 0) and of `Γ(Q)`
/// (family 1).
pub fn build_semireg_poset(t: &TailTriangleGroup, cap: u64) -> Result<FacePoset> {
    let d = t.rank();
    let (a, b) = (d - 2, d - 1);
    let mut families: Vec<Vec<Vec<usize>>> = (0..d - 2)
        .map(|i| vec![(0..d).filter(|&j| j != i).collect()])
        .collect();
    families.push(vec![(0..d - 2).collect()]);
    let tail: Vec<usize> = (0..d - 2).collect();
    let with = |x: usize| -> Vec<usize> {
        let mut v = tail.clone();
        v.push(x);
        v
    };
    families.push(vec![with(a), with(b)]);
    let geo = CosetGeometry::build(&t.group, &families, cap)?;
    if !vertex_transitive(&geo, d) {
        return Err(Error::Inconsistent("group is not transitive on vertices".into()));
    }
    let mut poset = geo.poset;
    let f = poset.f_vector();
    let p_count = t.group.order()? / t.facet_group_p()?.order()?;
    poset.facet_family = Some(
        (0..f[d - 1])
            .map(|i| if (i as u64) < p_count { 0 } else { 1 })
            .collect(),
    );
    Ok(poset)
}

fn vertex_transitive(geo: &CosetGeometry, d: usize) -> bool {
    let actions: Vec<Vec<u32>> = (0..d).map(|g| geo.face_action(0, g)).collect();
    let n = geo.poset.f_vector()[0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for a in &actions {
            let w = a[v] as usize;
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Every `(d-2)`-face lies in exactly one facet of each family, so the two
/// families alternate around each `(d-3)`-face.
pub fn check_alternation(p: &FacePoset) -> bool {
    let Some(fam) = &p.facet_family else {
        return false;
    };
    let d = p.rank();
    (0..p.level_size(d - 1)).all(|r| {
        let up = p.up(d - 1, r);
        up.len() == 2 && fam[up[0] as usize] != fam[up[1] as usize]
    }) && (0..p.level_size(d - 2)).all(|r| p.up(d - 2, r).len().is_multiple_of(2))
}

/// `f_0(P) f_0(Q) / f_0(K)`, which must be an integer.
pub fn semireg_f0_formula(p: &FacePoset, q: &FacePoset, k: &FacePoset) -> Result<usize> {
    let num = p.f_vector()[0] * q.f_vector()[0];
    let den = k.f_vector()[0];
    if !num.is_multiple_of(den) {
        return Err(Error::Inconsistent(format!("f0 prediction {num}/{den} is not an integer")));
    }
    Ok(num / den)
}

/// Posets of `P`, `Q` and the shared facet `K`.
pub fn constituent_posets(t: &TailTriangleGroup) -> Result<(FacePoset, FacePoset, FacePoset)> {
    let d = t.rank();
    let facet: Vec<usize> = (0..d - 2).collect();
    let k = StringCGroup::new(t.p.parabolic(&facet)?)?;
    Ok((build_poset(&t.p)?, build_poset(&t.q)?, build_poset(&k)?))
}

/// Orders of the two normal closures of the apexes in `Γ(P)` and `Γ(Q)`.
pub fn apex_closure_orders(t: &TailTriangleGroup) -> Result<(u64, u64)> {
    let d = t.rank();
    let np = t.p.group().normal_closure(&[t.p.gen(d - 2).clone()])?;
    let nq = t.q.group().normal_closure(&[t.q.gen(d - 2).clone()])?;
    Ok((np.order()?, nq.order()?))
}
