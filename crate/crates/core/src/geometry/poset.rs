use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// A ranked poset with a least face (rank -1) and a greatest face (rank `d`),
/// stored as its Hasse diagram. Faces are numbered within each rank; level
/// `r + 1` holds the faces of rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    rank: usize,
    up: Vec<Vec<Vec<u32>>>,
    down: Vec<Vec<Vec<u32>>>,
    /// Optional tag per face of rank `d - 1` (two facet families of a
    /// semiregular polytope).
    pub facet_family: Option<Vec<u8>>,
}

/// One face per proper rank, `faces[r]` being the index of the rank-`r` face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag(pub Vec<u32>);

impl FacePoset {
    /// Builds a poset of rank `d = counts.len()` from the covering pairs
    /// `(lower, upper)` between ranks `i` and `i + 1`. The improper faces are
    /// added automatically.
    pub fn from_covers(counts: &[usize], covers: &[Vec<(u32, u32)>]) -> Result<Self> {
        let d = counts.len();
        if d == 0 || covers.len() + 1 != d {
            return Err(Error::InvalidParams(format!(
                "{} cover lists given for {d} proper ranks",
                covers.len()
            )));
        }
        let mut level_sizes = vec![1];
        level_sizes.extend_from_slice(counts);
        level_sizes.push(1);
        let mut up: Vec<Vec<Vec<u32>>> = level_sizes.iter().map(|&n| vec![Vec::new(); n]).collect();
        let mut down = up.clone();
        let mut link = |level: usize, lo: u32, hi: u32| -> Result<()> {
            if lo as usize >= level_sizes[level] || hi as usize >= level_sizes[level + 1] {
                return Err(Error::InvalidParams(format!(
                    "cover ({lo},{hi}) out of range at level {level}"
                )));
            }
            up[level][lo as usize].push(hi);
            down[level + 1][hi as usize].push(lo);
            Ok(())
        };
        for v in 0..counts[0] {
            link(0, 0, v as u32)?;
        }
        for (i, pairs) in covers.iter().enumerate() {
            for &(lo, hi) in pairs {
                link(i + 1, lo, hi)?;
            }
        }
        for f in 0..counts[d - 1] {
            link(d, f as u32, 0)?;
        }
        for lists in up.iter_mut().chain(down.iter_mut()) {
            for l in lists.iter_mut() {
                l.sort_unstable();
                l.dedup();
            }
        }
        Ok(FacePoset {
            rank: d,
            up,
            down,
            facet_family: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of levels, `d + 2`.
    pub fn levels(&self) -> usize {
        self.up.len()
    }

    pub fn level_size(&self, level: usize) -> usize {
        self.up[level].len()
    }

    /// Faces covering face `f` of level `level`.
    pub fn up(&self, level: usize, f: usize) -> &[u32] {
        &self.up[level][f]
    }

    pub fn down(&self, level: usize, f: usize) -> &[u32] {
        &self.down[level][f]
    }

    /// Face counts of ranks `0..d`.
    pub fn f_vector(&self) -> Vec<usize> {
        (1..=self.rank).map(|l| self.level_size(l)).collect()
    }

    pub fn total_faces(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Removes one face, with all its incidences.
    pub fn without_face(&self, rank: usize, face: usize) -> Result<FacePoset> {
        if rank >= self.rank || face >= self.level_size(rank + 1) {
            return Err(Error::InvalidParams(format!("no face {face} of rank {rank}")));
        }
        let renumber = |r: usize, f: u32| -> Option<u32> {
            if r != rank {
                Some(f)
            } else if f as usize == face {
                None
            } else if (f as usize) < face {
                Some(f)
            } else {
                Some(f - 1)
            }
        };
        let mut counts = self.f_vector();
        counts[rank] -= 1;
        let covers: Vec<Vec<(u32, u32)>> = (0..self.rank - 1)
            .map(|r| {
                let mut pairs = Vec::new();
                for lo in 0..self.level_size(r + 1) {
                    for &hi in self.up(r + 1, lo) {
                        if let (Some(a), Some(b)) = (renumber(r, lo as u32), renumber(r + 1, hi)) {
                            pairs.push((a, b));
                        }
                    }
                }
                pairs
            })
            .collect();
        FacePoset::from_covers(&counts, &covers)
    }

    /// Disjoint union of two posets of the same rank, sharing only the two
    /// improper faces.
    pub fn disjoint_union(&self, other: &FacePoset) -> Result<FacePoset> {
        if self.rank != other.rank {
            return Err(Error::InvalidParams("ranks differ".into()));
        }
        let a = self.f_vector();
        let counts: Vec<usize> = a.iter().zip(other.f_vector()).map(|(x, y)| x + y).collect();
        let covers = (0..self.rank - 1)
            .map(|r| {
                let mut pairs = Vec::new();
                for (p, shift_lo, shift_hi) in [(self, 0, 0), (other, a[r] as u32, a[r + 1] as u32)] {
                    for lo in 0..p.level_size(r + 1) {
                        for &hi in p.up(r + 1, lo) {
                            pairs.push((lo as u32 + shift_lo, hi + shift_hi));
                        }
                    }
                }
                pairs
            })
            .collect::<Vec<_>>();
        FacePoset::from_covers(&counts, &covers)
    }

    /// Maximal chains, as proper faces.
    pub fn flags(&self) -> Vec<Flag> {
        self.chains(0, 0, self.levels() - 1)
            .into_iter()
            .map(|c| Flag(c[1..c.len() - 1].to_vec()))
            .collect()
    }

    pub fn flag_count(&self) -> usize {
        // count paths through the Hasse diagram instead of materializing them
        let mut ways = vec![1u64];
        for level in 1..self.levels() {
            let mut next = vec![0u64; self.level_size(level)];
            for (f, slot) in next.iter_mut().enumerate() {
                *slot = self.down(level, f).iter().map(|&g| ways[g as usize]).sum();
            }
            ways = next;
        }
        ways[0] as usize
    }

    /// All covering chains from face `start` of level `from` up to level `to`,
    /// each listed with one face per level.
    fn chains(&self, from: usize, start: usize, to: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut stack = vec![start as u32];
        self.extend_chains(from, to, &mut stack, &mut out);
        out
    }

    fn extend_chains(&self, level: usize, to: usize, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if level == to {
            out.push(stack.clone());
            return;
        }
        let f = *stack.last().expect("non-empty chain") as usize;
        for &g in self.up(level, f) {
            stack.push(g);
            self.extend_chains(level + 1, to, stack, out);
            stack.pop();
        }
    }

    /// Between every pair of faces two levels apart there are exactly two
    /// faces in between.
    pub fn check_diamond(&self) -> bool {
        for level in 0..self.levels() - 2 {
            let mut count = vec![0u32; self.level_size(level + 2)];
            for a in 0..self.level_size(level) {
                for &b in self.up(level, a) {
                    for &c in self.up(level + 1, b as usize) {
                        count[c as usize] += 1;
                    }
                }
                for &b in self.up(level, a) {
                    for &c in self.up(level + 1, b as usize) {
                        if count[c as usize] != 2 {
                            return false;
                        }
                    }
                }
                for &b in self.up(level, a) {
                    for &c in self.up(level + 1, b as usize) {
                        count[c as usize] = 0;
                    }
                }
            }
        }
        true
    }

    /// Strong flag connectivity: the flags of every section `G/F` of rank at
    /// least 2, including the whole poset, form a connected graph under
    /// adjacency (flags differing in exactly one face).
    pub fn check_flag_connected(&self) -> bool {
        let top = self.levels() - 1;
        for from in 0..=top {
            for to in from + 3..=top {
                if !self.sections_connected(from, to) {
                    return false;
                }
            }
        }
        // rank-1 sections: flags are the faces in between, all adjacent; a
        // rank-0 poset has a single flag
        true
    }

    fn sections_connected(&self, from: usize, to: usize) -> bool {
        let mut chains = Vec::new();
        for start in 0..self.level_size(from) {
            chains.extend(self.chains(from, start, to));
        }
        let mut uf = UnionFind::new(chains.len());
        let len = to - from + 1;
        for p in 1..len - 1 {
            let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
            for (i, c) in chains.iter().enumerate() {
                let mut key = c.clone();
                key[p] = u32::MAX;
                match seen.get(&key) {
                    Some(&j) => uf.union(i, j),
                    None => {
                        seen.insert(key, i);
                    }
                }
            }
        }
        let mut root_of_section: HashMap<(u32, u32), usize> = HashMap::new();
        for (i, c) in chains.iter().enumerate() {
            let root = uf.find(i);
            let key = (c[0], c[len - 1]);
            if *root_of_section.entry(key).or_insert(root) != root {
                return false;
            }
        }
        true
    }

    /// For each face of level `high`, the set of faces of level `low` below
    /// it, as bitsets.
    fn below_sets(&self, low: usize, high: usize) -> Vec<Vec<u64>> {
        let words = self.level_size(low).div_ceil(64);
        let mut sets: Vec<Vec<u64>> = (0..self.level_size(low))
            .map(|f| {
                let mut b = vec![0u64; words];
                b[f / 64] |= 1 << (f % 64);
                b
            })
            .collect();
        for level in low + 1..=high {
            sets = (0..self.level_size(level))
                .map(|f| {
                    let mut b = vec![0u64; words];
                    for &g in self.down(level, f) {
                        for (x, y) in b.iter_mut().zip(&sets[g as usize]) {
                            *x |= y;
                        }
                    }
                    b
                })
                .collect();
        }
        sets
    }

    /// Whether face `a` of rank `ra` lies below (or equals) face `b` of rank `rb`.
    pub fn incident(&self, ra: usize, a: usize, rb: usize, b: usize) -> bool {
        if ra > rb {
            return self.incident(rb, b, ra, a);
        }
        let sets = self.below_sets(ra + 1, rb + 1);
        sets[b][a / 64] >> (a % 64) & 1 == 1
    }

    /// Every `k`-face is incident with every `l`-face.
    pub fn check_flat(&self, k: usize, l: usize) -> Result<bool> {
        if k >= l || l >= self.rank {
            return Err(Error::InvalidParams(format!(
                "flatness needs 0 <= k < l <= d-1, got k={k}, l={l}, d={}",
                self.rank
            )));
        }
        let fk = self.level_size(k + 1);
        let sets = self.below_sets(k + 1, l + 1);
        Ok(sets
            .iter()
            .all(|b| b.iter().map(|w| w.count_ones() as usize).sum::<usize>() == fk))
    }

    /// The section `G/F` for faces `F` (rank `lo_rank`, may be -1 via `None`)
    /// and `G` (rank `hi_rank`, `None` for the greatest face), as a poset of
    /// rank `hi_rank - lo_rank - 1`.
    pub fn section(&self, lo: Option<(usize, usize)>, hi: Option<(usize, usize)>) -> Result<FacePoset> {
        let (lo_level, lo_face) = lo.map(|(r, f)| (r + 1, f)).unwrap_or((0, 0));
        let (hi_level, hi_face) = hi.map(|(r, f)| (r + 1, f)).unwrap_or((self.levels() - 1, 0));
        if hi_level < lo_level + 2 {
            return Err(Error::InvalidParams("section of rank below 1".into()));
        }
        // faces above lo and below hi, level by level
        let mut above: Vec<Vec<bool>> = (0..self.levels()).map(|l| vec![false; self.level_size(l)]).collect();
        above[lo_level][lo_face] = true;
        for level in lo_level..hi_level {
            for f in 0..self.level_size(level) {
                if above[level][f] {
                    for &g in self.up(level, f) {
                        above[level + 1][g as usize] = true;
                    }
                }
            }
        }
        let mut below: Vec<Vec<bool>> = (0..self.levels()).map(|l| vec![false; self.level_size(l)]).collect();
        below[hi_level][hi_face] = true;
        for level in (lo_level + 1..=hi_level).rev() {
            for f in 0..self.level_size(level) {
                if below[level][f] {
                    for &g in self.down(level, f) {
                        below[level - 1][g as usize] = true;
                    }
                }
            }
        }
        let mut index: Vec<HashMap<u32, u32>> = vec![HashMap::new(); self.levels()];
        for level in lo_level + 1..hi_level {
            for f in 0..self.level_size(level) {
                if above[level][f] && below[level][f] {
                    let n = index[level].len() as u32;
                    index[level].insert(f as u32, n);
                }
            }
        }
        let counts: Vec<usize> = (lo_level + 1..hi_level).map(|l| index[l].len()).collect();
        let covers: Vec<Vec<(u32, u32)>> = (lo_level + 1..hi_level - 1)
            .map(|level| {
                let mut pairs = Vec::new();
                for (&f, &i) in &index[level] {
                    for g in self.up(level, f as usize) {
                        if let Some(&j) = index[level + 1].get(g) {
                            pairs.push((i, j));
                        }
                    }
                }
                pairs
            })
            .collect();
        FacePoset::from_covers(&counts, &covers)
    }

    /// The `j`-adjacent flag of each flag, as indices into `flags()`.
    pub fn flag_adjacency(&self) -> (Vec<Flag>, Vec<Vec<Option<usize>>>) {
        let flags = self.flags();
        let mut adj = vec![vec![None; self.rank]; flags.len()];
        for j in 0..self.rank {
            let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
            for (i, f) in flags.iter().enumerate() {
                let mut key = f.0.clone();
                key[j] = u32::MAX;
                match seen.get(&key) {
                    Some(&other) => {
                        adj[i][j] = Some(other);
                        adj[other][j] = Some(i);
                    }
                    None => {
                        seen.insert(key, i);
                    }
                }
            }
        }
        (flags, adj)
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Face {
            id: usize,
            rank: i64,
            index: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            family: Option<u8>,
        }
        #[derive(Serialize)]
        struct Export {
            rank: usize,
            f_vector: Vec<usize>,
            faces: Vec<Face>,
            incidences: Vec<[usize; 2]>,
        }
        let offsets = self.level_offsets();
        let mut faces = Vec::new();
        let mut incidences = Vec::new();
        for level in 0..self.levels() {
            for f in 0..self.level_size(level) {
                let family = match &self.facet_family {
                    Some(fam) if level == self.rank => Some(fam[f]),
                    _ => None,
                };
                faces.push(Face {
                    id: offsets[level] + f,
                    rank: level as i64 - 1,
                    index: f,
                    family,
                });
                for &g in self.up(level, f) {
                    incidences.push([offsets[level] + f, offsets[level + 1] + g as usize]);
                }
            }
        }
        let export = Export {
            rank: self.rank,
            f_vector: self.f_vector(),
            faces,
            incidences,
        };
        Ok(serde_json::to_string_pretty(&export)?)
    }

    fn level_offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0];
        for level in 0..self.levels() {
            offsets.push(offsets[level] + self.level_size(level));
        }
        offsets
    }

    /// Hasse diagram in DOT, one node per face, edges upward.
    pub fn to_dot_hasse(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for level in 0..self.levels() {
            for f in 0..self.level_size(level) {
                let _ = writeln!(s, "  r{level}_{f} [label=\"{}:{f}\"];", level as i64 - 1);
            }
        }
        for level in 0..self.levels() - 1 {
            for f in 0..self.level_size(level) {
                for &g in self.up(level, f) {
                    let _ = writeln!(s, "  r{level}_{f} -> r{}_{g};", level + 1);
                }
            }
        }
        s.push_str("}\n");
        s
    }

    /// Flag graph in DOT, edges labelled by the adjacency index.
    pub fn to_dot_flags(&self) -> String {
        let (flags, adj) = self.flag_adjacency();
        let mut s = String::from("graph flags {\n");
        for i in 0..flags.len() {
            let _ = writeln!(s, "  f{i};");
        }
        for (i, row) in adj.iter().enumerate() {
            for (j, other) in row.iter().enumerate() {
                if let Some(o) = other {
                    if i < *o {
                        let _ = writeln!(s, "  f{i} -- f{o} [label=\"{j}\"];");
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// A `p`-gon: vertices `i`, edges `i -- i+1`.
    pub(crate) fn polygon(p: u32) -> FacePoset {
        let covers = vec![(0..p).flat_map(|i| [(i, i), ((i + 1) % p, i)]).collect()];
        FacePoset::from_covers(&[p as usize, p as usize], &covers).unwrap()
    }

    #[test]
    fn square_poset() {
        let sq = polygon(4);
        assert_eq!(sq.f_vector(), vec![4, 4]);
        assert_eq!(sq.flag_count(), 8);
        assert_eq!(sq.flags().len(), 8);
        assert!(sq.check_diamond());
        assert!(sq.check_flag_connected());
        assert!(!sq.check_flat(0, 1).unwrap());
    }

    #[test]
    fn deleting_a_face_breaks_the_diamond() {
        let sq = polygon(4);
        let broken = sq.without_face(0, 2).unwrap();
        assert_eq!(broken.f_vector(), vec![3, 4]);
        assert!(!broken.check_diamond());
    }

    #[test]
    fn two_squares_are_not_connected() {
        let sq = polygon(4);
        let two = sq.disjoint_union(&sq).unwrap();
        assert!(two.check_diamond());
        assert!(!two.check_flag_connected());
    }

    #[test]
    fn rank_one_segment() {
        let seg = FacePoset::from_covers(&[2], &[]).unwrap();
        assert_eq!(seg.flag_count(), 2);
        assert!(seg.check_diamond());
        assert!(seg.check_flag_connected());
        let (_, adj) = seg.flag_adjacency();
        assert_eq!(adj[0][0], Some(1));
    }

    #[test]
    fn sections_of_a_polygon() {
        let hex = polygon(6);
        let edge = hex.section(None, Some((1, 0))).unwrap();
        assert_eq!(edge.f_vector(), vec![2]);
        let whole = hex.section(None, None).unwrap();
        assert_eq!(whole, hex);
        assert!(hex.incident(0, 1, 1, 0));
        assert!(!hex.incident(0, 3, 1, 0));
    }

    #[test]
    fn exports() {
        let sq = polygon(4);
        let json: serde_json::Value = serde_json::from_str(&sq.to_json().unwrap()).unwrap();
        assert_eq!(json["f_vector"], serde_json::json!([4, 4]));
        assert_eq!(json["faces"].as_array().unwrap().len(), 10);
        assert_eq!(json["incidences"].as_array().unwrap().len(), 4 + 8 + 4);
        assert_eq!(sq.to_dot_hasse().matches("->").count(), 16);
        assert_eq!(sq.to_dot_flags().matches("--").count(), 8);
    }
}
