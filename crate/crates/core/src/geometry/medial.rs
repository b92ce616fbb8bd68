use std::collections::HashMap;

use super::poset::FacePoset;
use super::regular_geometry;
use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::kernel::{FiniteGroup, Permutation};
use crate::toroidal::polarity_exists;

/// Medial of a polyhedron together with the group it inherits.
#[derive(Clone, Debug)]
pub struct Medial {
    pub poset: FacePoset,
    /// Acts on all proper faces of the medial: vertices first, then edges,
    /// then faces.
    pub group: FiniteGroup,
    /// Whether a polarity of the original was adjoined.
    pub doubled: bool,
}

/// Incident (vertex, face) pairs of a polyhedron, which become the medial's
/// edges.
fn corners(k: &FacePoset) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for v in 0..k.level_size(1) {
        let mut faces: Vec<u32> = k
            .up(1, v)
            .iter()
            .flat_map(|&e| k.up(2, e as usize).iter().copied())
            .collect();
        faces.sort_unstable();
        faces.dedup();
        out.extend(faces.into_iter().map(|f| (v as u32, f)));
    }
    out
}

/// Medial of a rank-3 poset: its vertices are the edges of `k`, its edges
/// the incident (vertex, face) pairs of `k` (joining the two edges of the
/// face through the vertex), and its faces the faces of `k` followed by the
/// vertices of `k`.
pub fn medial_poset(k: &FacePoset) -> Result<FacePoset> {
    if k.rank() != 3 {
        return Err(Error::InvalidParams(format!("medial needs rank 3, got {}", k.rank())));
    }
    let f = k.f_vector();
    let corners = corners(k);
    let mut vertex_edge = Vec::new();
    let mut edge_face = Vec::new();
    for (i, &(v, face)) in corners.iter().enumerate() {
        for &e in k.up(1, v as usize) {
            if k.up(2, e as usize).contains(&face) {
                vertex_edge.push((e, i as u32));
            }
        }
        edge_face.push((i as u32, face));
        edge_face.push((i as u32, f[2] as u32 + v));
    }
    FacePoset::from_covers(&[f[1], corners.len(), f[2] + f[0]], &[vertex_edge, edge_face])
}

/// Medial of the regular polyhedron of `k`, with `Γ(k)` acting on it, and a
/// polarity adjoined when `k` is self-dual.
pub fn medial(k: &StringCGroup) -> Result<Medial> {
    if k.rank() != 3 {
        return Err(Error::InvalidParams(format!("medial needs rank 3, got {}", k.rank())));
    }
    let geo = regular_geometry(k)?;
    let kp = &geo.poset;
    let poset = medial_poset(kp)?;
    let f = kp.f_vector();
    let corners = corners(kp);
    let corner_index: HashMap<(u32, u32), u32> =
        corners.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let m = poset.f_vector();
    let degree = m.iter().sum::<usize>();

    // assemble a permutation of all medial faces from maps on vertices,
    // edges and faces of the original
    let assemble = |vmap: &[u32], emap: &[u32], fmap: &[u32], swap: bool| -> Result<Permutation> {
        let mut images = Vec::with_capacity(degree);
        images.extend(emap.iter().map(|&e| e as usize));
        for &(v, face) in &corners {
            let key = if swap {
                (fmap[face as usize], vmap[v as usize])
            } else {
                (vmap[v as usize], fmap[face as usize])
            };
            let c = corner_index
                .get(&key)
                .ok_or_else(|| Error::Inconsistent("corner not mapped to a corner".into()))?;
            images.push(m[0] + *c as usize);
        }
        let face_base = m[0] + m[1];
        for face in 0..f[2] {
            let img = fmap[face] as usize + if swap { f[2] } else { 0 };
            images.push(face_base + img);
        }
        for v in 0..f[0] {
            let img = vmap[v] as usize + if swap { 0 } else { f[2] };
            images.push(face_base + img);
        }
        Permutation::from_images(images)
    };

    let mut gens = Vec::new();
    for g in 0..k.rank() {
        let maps: Vec<Vec<u32>> = (0..3).map(|r| geo.face_action(r, g)).collect();
        gens.push(assemble(&maps[0], &maps[1], &maps[2], false)?);
    }
    let doubled = polarity_exists(k)?;
    if doubled {
        let phi = geo.cayley.relabel(&[2, 1, 0]);
        // rank-r faces go to rank-(2-r) faces
        let to_faces = geo.map_faces(0, 2, &phi);
        let edges = geo.map_faces(1, 1, &phi);
        let to_vertices = geo.map_faces(2, 0, &phi);
        gens.push(assemble(&to_faces, &edges, &to_vertices, true)?);
    }
    for g in &gens {
        if !preserves_covers(&poset, g) {
            return Err(Error::Inconsistent("medial generator is not a poset automorphism".into()));
        }
    }
    let group = FiniteGroup::with_limits(degree, gens, k.group().limits())?;
    let expected = k.order()? * if doubled { 2 } else { 1 };
    if group.order()? != expected {
        return Err(Error::Inconsistent(format!(
            "medial group has order {}, expected {expected}",
            group.order()?
        )));
    }
    Ok(Medial {
        poset,
        group,
        doubled,
    })
}

/// Whether a permutation of the proper faces (numbered rank by rank)
/// preserves ranks and covering pairs.
fn preserves_covers(p: &FacePoset, g: &Permutation) -> bool {
    let f = p.f_vector();
    let mut offsets = vec![0usize];
    for (r, n) in f.iter().enumerate() {
        offsets.push(offsets[r] + n);
    }
    for r in 0..f.len() {
        for x in offsets[r]..offsets[r + 1] {
            let y = g.apply(x);
            if y < offsets[r] || y >= offsets[r + 1] {
                return false;
            }
        }
    }
    for r in 0..f.len() - 1 {
        for lo in 0..f[r] {
            let glo = g.apply(offsets[r] + lo) - offsets[r];
            for &hi in p.up(r + 1, lo) {
                let ghi = g.apply(offsets[r + 1] + hi as usize) - offsets[r + 1];
                if !p.up(r + 1, glo).contains(&(ghi as u32)) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geometry::{build_poset, posets_isomorphic};
    use crate::toroidal::{build_torus_group, TorusParams};

    #[test]
    fn cuboctahedron() {
        let m = medial(&catalog::cube_group().unwrap()).unwrap();
        assert_eq!(m.poset.f_vector(), vec![12, 24, 14]);
        assert!(!m.doubled);
        assert_eq!(m.group.order().unwrap(), 48);
        assert!(m.poset.check_diamond());
        assert!(m.poset.check_flag_connected());
    }

    #[test]
    fn medial_of_small_torus() {
        let k = build_torus_group(TorusParams::new(2, 0).unwrap()).unwrap();
        let m = medial(&k).unwrap();
        assert!(m.doubled);
        assert_eq!(m.group.order().unwrap(), 64);
        let target = build_poset(&build_torus_group(TorusParams::new(2, 2).unwrap()).unwrap()).unwrap();
        assert!(posets_isomorphic(&m.poset, &target).unwrap());
    }

    #[test]
    fn medial_of_larger_torus() {
        let k = build_torus_group(TorusParams::new(4, 0).unwrap()).unwrap();
        let m = medial(&k).unwrap();
        assert_eq!(m.poset.f_vector(), vec![32, 64, 32]);
        assert_eq!(m.group.order().unwrap(), 256);
        let kp = build_poset(&k).unwrap();
        let f = kp.f_vector();
        assert_eq!(m.poset.f_vector()[0], f[1]);
        assert_eq!(m.poset.f_vector()[2], f[0] + f[2]);
    }
}
