use std::collections::HashMap;

use super::group::FiniteGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Right Cayley graph of a group: every element gets an index (the identity
/// is 0) and `right[g][e]` is the index of `e * gen_g`.
///
/// Elements are keyed by their images of a base of the group, which
/// determines them uniquely, so no full permutation is stored per element.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub right: Vec<Vec<u32>>,
    /// BFS tree: `parent[e] = (p, g)` with `e = p * gen_g`; the identity has none.
    pub parent: Vec<Option<(u32, u8)>>,
}

impl CayleyGraph {
    pub fn build(group: &FiniteGroup, cap: u64) -> Result<Self> {
        let order = group.order()?;
        if order > cap {
            return Err(Error::CapExceeded {
                cap: "max_poset",
                limit: cap,
            });
        }
        let base = group.chain()?.base();
        let key_len = base.len();
        let gens = group.generators();
        let n = order as usize;
        let mut keys: Vec<u32> = Vec::with_capacity(n * key_len);
        keys.extend_from_slice(&base);
        let mut index: HashMap<Vec<u32>, u32> = HashMap::with_capacity(n);
        index.insert(base.clone(), 0);
        let mut right: Vec<Vec<u32>> = vec![Vec::with_capacity(n); gens.len()];
        let mut parent: Vec<Option<(u32, u8)>> = vec![None];
        let mut head = 0usize;
        let mut buf = vec![0u32; key_len];
        while head < parent.len() {
            for (gi, g) in gens.iter().enumerate() {
                for k in 0..key_len {
                    buf[k] = g.apply_u32(keys[head * key_len + k]);
                }
                let idx = match index.get(&buf) {
                    Some(&i) => i,
                    None => {
                        let i = parent.len() as u32;
                        index.insert(buf.clone(), i);
                        keys.extend_from_slice(&buf);
                        parent.push(Some((head as u32, gi as u8)));
                        i
                    }
                };
                right[gi].push(idx);
            }
            head += 1;
        }
        if parent.len() != n {
            return Err(Error::Inconsistent(format!(
                "Cayley graph has {} vertices, group order is {n}",
                parent.len()
            )));
        }
        Ok(CayleyGraph { right, parent })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn ngens(&self) -> usize {
        self.right.len()
    }

    /// Elements in BFS order, so that parents precede children.
    fn bfs_order(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.len()
    }

    /// Left multiplication by generator `g`, as a map on element indices.
    pub fn left_mult(&self, g: usize) -> Vec<u32> {
        let mut out = vec![u32::MAX; self.len()];
        out[0] = self.right[g][0];
        for e in self.bfs_order().skip(1) {
            let (p, h) = self.parent[e].expect("non-root");
            out[e] = self.right[h as usize][out[p as usize] as usize];
        }
        out
    }

    /// Extends the generator relabelling `gen_i -> gen_{sigma(i)}` to a map on
    /// elements. Only meaningful when the relabelling is induced by an
    /// automorphism; the caller checks that first.
    pub fn relabel(&self, sigma: &[usize]) -> Vec<u32> {
        let mut out = vec![u32::MAX; self.len()];
        out[0] = 0;
        for e in self.bfs_order().skip(1) {
            let (p, h) = self.parent[e].expect("non-root");
            out[e] = self.right[sigma[h as usize]][out[p as usize] as usize];
        }
        out
    }

    /// Labels the left cosets `e <gens in subset>` (connected components of
    /// the subgraph on the chosen generator edges). Returns the label of each
    /// element and the number of cosets.
    pub fn left_cosets(&self, subset: &[usize]) -> (Vec<u32>, usize) {
        let n = self.len();
        let mut label = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(e) = stack.pop() {
                for &g in subset {
                    let f = self.right[g][e] as usize;
                    if label[f] == u32::MAX {
                        label[f] = count;
                        stack.push(f);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    /// Generator word (indices) for element `e`, read left to right.
    pub fn word(&self, mut e: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parent[e] {
            w.push(g as usize);
            e = p as usize;
        }
        w.reverse();
        w
    }
}

/// Evaluates a generator word as a permutation.
pub fn evaluate_word(gens: &[Permutation], degree: usize, word: &[usize]) -> Permutation {
    let mut p = Permutation::identity(degree);
    for &g in word {
        p.then_assign(&gens[g]);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_graph_of_square_group() {
        let r0 = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let r1 = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        let g = FiniteGroup::new(4, vec![r0, r1]).unwrap();
        let cg = CayleyGraph::build(&g, 1 << 10).unwrap();
        assert_eq!(cg.len(), 8);
        let (_, n0) = cg.left_cosets(&[0]);
        assert_eq!(n0, 4);
        let (_, nall) = cg.left_cosets(&[0, 1]);
        assert_eq!(nall, 1);
        // left multiplication by an involution is an involution on elements
        let l = cg.left_mult(1);
        for e in 0..8 {
            assert_eq!(l[l[e] as usize] as usize, e);
        }
        // words evaluate back to distinct elements
        let mut seen = std::collections::HashSet::new();
        for e in 0..8 {
            seen.insert(evaluate_word(g.generators(), 4, &cg.word(e)));
        }
        assert_eq!(seen.len(), 8);
    }
}
