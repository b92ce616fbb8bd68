//! Face posets realized as coset geometries, polytopality checks,
//! isomorphism, and medials of polyhedra.

mod iso;
mod medial;
mod poset;

pub use iso::posets_isomorphic;
pub use medial::{medial, medial_poset, Medial};
pub use poset::{FacePoset, Flag};

use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::kernel::{CayleyGraph, FiniteGroup};

/// A poset whose rank-`r` faces are the left cosets of one or more subgroups
/// generated by generator subsets, incident when they share an element.
#[derive(Clone, Debug)]
pub struct CosetGeometry {
    pub poset: FacePoset,
    pub cayley: CayleyGraph,
    /// `face_of[r][i][e]`: the rank-`r` face (numbered across families) of
    /// family `i` containing element `e`.
    pub face_of: Vec<Vec<Vec<u32>>>,
}

impl CosetGeometry {
    /// `families[r]` lists generator subsets; each contributes its left cosets
    /// as rank-`r` faces, in order.
    pub fn build(group: &FiniteGroup, families: &[Vec<Vec<usize>>], cap: u64) -> Result<Self> {
        let cayley = CayleyGraph::build(group, cap)?;
        let mut face_of = Vec::with_capacity(families.len());
        let mut counts = Vec::with_capacity(families.len());
        for fams in families {
            let mut offset = 0u32;
            let mut per_family = Vec::with_capacity(fams.len());
            for subset in fams {
                let (mut labels, n) = cayley.left_cosets(subset);
                for l in labels.iter_mut() {
                    *l += offset;
                }
                offset += n as u32;
                per_family.push(labels);
            }
            counts.push(offset as usize);
            face_of.push(per_family);
        }
        let covers: Vec<Vec<(u32, u32)>> = (0..families.len().saturating_sub(1))
            .map(|r| {
                let mut pairs = Vec::new();
                for lo in &face_of[r] {
                    for hi in &face_of[r + 1] {
                        pairs.extend(lo.iter().zip(hi).map(|(&a, &b)| (a, b)));
                    }
                }
                pairs.sort_unstable();
                pairs.dedup();
                pairs
            })
            .collect();
        let poset = FacePoset::from_covers(&counts, &covers)?;
        Ok(CosetGeometry {
            poset,
            cayley,
            face_of,
        })
    }

    /// Permutation induced on the rank-`r` faces by left multiplication with
    /// generator `g`.
    pub fn face_action(&self, r: usize, g: usize) -> Vec<u32> {
        let left = self.cayley.left_mult(g);
        self.map_faces(r, r, &left)
    }

    /// Face map induced by an element map `phi`, sending the rank-`from`
    /// face of `e` to the rank-`to` face of `phi(e)`.
    pub fn map_faces(&self, from: usize, to: usize, phi: &[u32]) -> Vec<u32> {
        let n = self.poset.f_vector()[from];
        let mut out = vec![u32::MAX; n];
        for family in 0..self.face_of[from].len() {
            for (e, &f) in self.face_of[from][family].iter().enumerate() {
                out[f as usize] = self.face_of[to][family][phi[e] as usize];
            }
        }
        out
    }
}

/// Face lattice of the regular polytope of a string C-group: rank-`i` faces
/// are the cosets of the parabolic subgroup omitting `ρ_i`.
pub fn regular_geometry(g: &StringCGroup) -> Result<CosetGeometry> {
    if !g.is_string_c_group()? {
        return Err(Error::Inconsistent("C-group axioms do not hold".into()));
    }
    let d = g.rank();
    let families: Vec<Vec<Vec<usize>>> = (0..d)
        .map(|i| vec![(0..d).filter(|&j| j != i).collect()])
        .collect();
    let geo = CosetGeometry::build(g.group(), &families, g.group().limits().max_poset)?;
    let flags = geo.poset.flag_count() as u64;
    if flags != g.order()? {
        return Err(Error::Inconsistent(format!(
            "poset has {flags} flags, group order is {}",
            g.order()?
        )));
    }
    Ok(geo)
}

pub fn build_poset(g: &StringCGroup) -> Result<FacePoset> {
    Ok(regular_geometry(g)?.poset)
}

/// Diamond condition, strong flag connectivity and (for regular inputs)
/// flags matching the group order, in one report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytopality {
    pub diamond: bool,
    pub flag_connected: bool,
    pub flags: usize,
}

pub fn polytopality(p: &FacePoset) -> Polytopality {
    Polytopality {
        diamond: p.check_diamond(),
        flag_connected: p.check_flag_connected(),
        flags: p.flag_count(),
    }
}
