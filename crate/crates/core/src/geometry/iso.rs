use std::collections::BTreeMap;

use super::poset::FacePoset;
use crate::error::{Error, Result};

/// Above this many faces per poset, only isomorphisms found by colour
/// refinement alone are attempted.
const BACKTRACK_LIMIT: usize = 1 << 10;

/// Both posets as one graph on `na + nb` vertices, covering edges only.
struct Union {
    na: usize,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    level: Vec<usize>,
}

impl Union {
    fn new(a: &FacePoset, b: &FacePoset) -> Self {
        let mut u = Union {
            na: a.total_faces(),
            up: Vec::new(),
            down: Vec::new(),
            level: Vec::new(),
        };
        for p in [a, b] {
            let base = u.up.len();
            let mut offsets = vec![base];
            for level in 0..p.levels() {
                offsets.push(offsets[level] + p.level_size(level));
            }
            for level in 0..p.levels() {
                for f in 0..p.level_size(level) {
                    u.level.push(level);
                    u.up.push(p.up(level, f).iter().map(|&g| offsets[level + 1] + g as usize).collect());
                    u.down.push(
                        p.down(level, f)
                            .iter()
                            .map(|&g| offsets[level - 1] + g as usize)
                            .collect(),
                    );
                }
            }
        }
        u
    }

    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = count_classes(colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..colors.len())
                .map(|v| {
                    let mut up: Vec<usize> = self.up[v].iter().map(|&w| colors[w]).collect();
                    let mut down: Vec<usize> = self.down[v].iter().map(|&w| colors[w]).collect();
                    up.sort_unstable();
                    down.sort_unstable();
                    (colors[v], up, down)
                })
                .collect();
            let mut ids: BTreeMap<&(usize, Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
            for s in &sigs {
                ids.insert(s, 0);
            }
            for (i, v) in ids.values_mut().enumerate() {
                *v = i;
            }
            let next: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();
            let n = ids.len();
            *colors = next;
            if n == classes {
                return;
            }
            classes = n;
        }
    }

    /// Per colour, the vertices of each side.
    fn cells(&self, colors: &[usize]) -> BTreeMap<usize, (Vec<usize>, Vec<usize>)> {
        let mut cells: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            let cell = cells.entry(c).or_default();
            if v < self.na {
                cell.0.push(v);
            } else {
                cell.1.push(v);
            }
        }
        cells
    }

    fn search(&self, mut colors: Vec<usize>, allow_branching: bool) -> Result<bool> {
        self.refine(&mut colors);
        let cells = self.cells(&colors);
        if cells.values().any(|(a, b)| a.len() != b.len()) {
            return Ok(false);
        }
        let target = cells
            .values()
            .filter(|(a, _)| a.len() > 1)
            .min_by_key(|(a, _)| a.len());
        let Some((a, b)) = target else {
            let mut map = vec![0usize; self.na];
            for (a, b) in cells.values() {
                map[a[0]] = b[0];
            }
            return Ok(self.is_isomorphism(&map));
        };
        if !allow_branching {
            return Err(Error::CapExceeded {
                cap: "iso_backtrack_faces",
                limit: BACKTRACK_LIMIT as u64,
            });
        }
        let fresh = colors.len();
        let v = a[0];
        for &w in b {
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            if self.search(next, allow_branching)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn is_isomorphism(&self, map: &[usize]) -> bool {
        for v in 0..self.na {
            let mut image: Vec<usize> = self.up[v].iter().map(|&w| map[w]).collect();
            let mut actual = self.up[map[v]].clone();
            image.sort_unstable();
            actual.sort_unstable();
            if image != actual || self.level[v] != self.level[map[v]] {
                return false;
            }
        }
        true
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Decides whether two posets are isomorphic as ranked posets, by colour
/// refinement with individualization and backtracking.
pub fn posets_isomorphic(a: &FacePoset, b: &FacePoset) -> Result<bool> {
    if a.rank() != b.rank() || a.f_vector() != b.f_vector() {
        return Ok(false);
    }
    let u = Union::new(a, b);
    let colors = u.level.clone();
    u.search(colors, a.total_faces() <= BACKTRACK_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::super::poset::tests::polygon;
    use super::*;

    #[test]
    fn polygons() {
        assert!(posets_isomorphic(&polygon(6), &polygon(6)).unwrap());
        assert!(!posets_isomorphic(&polygon(6), &polygon(5)).unwrap());
        // a hexagon against two triangles: same f-vector, not isomorphic
        let two = polygon(3).disjoint_union(&polygon(3)).unwrap();
        assert!(!posets_isomorphic(&polygon(6), &two).unwrap());
    }

    #[test]
    fn relabelled_polygon() {
        // vertices listed in a scrambled order
        let p = 5u32;
        let perm = [3u32, 0, 4, 1, 2];
        let covers = vec![(0..p).flat_map(|i| [(perm[i as usize], i), (perm[((i + 1) % p) as usize], i)]).collect()];
        let q = FacePoset::from_covers(&[5, 5], &covers).unwrap();
        assert!(posets_isomorphic(&polygon(5), &q).unwrap());
    }
}
