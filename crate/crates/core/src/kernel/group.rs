use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::chain::StabChain;
use super::perm::Permutation;
use crate::config::Limits;
use crate::error::{Error, Result};

/// A permutation group given by an ordered generator list.
///
/// The stabilizer chain is built on first use and never changes afterwards,
/// so a `FiniteGroup` can be shared freely between threads.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    gens: Vec<Permutation>,
    limits: Limits,
    chain: Arc<OnceLock<Arc<StabChain>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("generators", &self.gens.len())
            .finish()
    }
}

impl FiniteGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        FiniteGroup::with_limits(degree, gens, Limits::from_env())
    }

    pub fn with_limits(degree: usize, gens: Vec<Permutation>, limits: Limits) -> Result<Self> {
        if degree > limits.max_degree {
            return Err(Error::CapExceeded {
                cap: "max_degree",
                limit: limits.max_degree as u64,
            });
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(FiniteGroup {
            degree,
            gens,
            limits,
            chain: Arc::new(OnceLock::new()),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        FiniteGroup::new(degree, Vec::new()).expect("trivial group")
    }

    /// Subgroup generated by `gens`, sharing this group's degree and limits.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<FiniteGroup> {
        FiniteGroup::with_limits(self.degree, gens, self.limits)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn with_new_limits(&self, limits: Limits) -> FiniteGroup {
        FiniteGroup {
            degree: self.degree,
            gens: self.gens.clone(),
            limits,
            chain: self.chain.clone(),
        }
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> Result<&StabChain> {
        if let Some(c) = self.chain.get() {
            return Ok(c);
        }
        let chain = StabChain::new(self.degree, &self.gens);
        if chain.order() > self.limits.max_elements as u128 {
            return Err(Error::CapExceeded {
                cap: "max_elements",
                limit: self.limits.max_elements,
            });
        }
        let _ = self.chain.set(Arc::new(chain));
        Ok(self.chain.get().expect("chain just set"))
    }

    /// Exact group order from the stabilizer chain.
    pub fn order(&self) -> Result<u64> {
        Ok(self.chain()?.order() as u64)
    }

    /// Order by breadth-first closure over the generators. Independent of the
    /// stabilizer chain; used as an oracle.
    pub fn order_by_closure(&self) -> Result<u64> {
        Ok(self.closure_elements()?.len() as u64)
    }

    pub(crate) fn closure_elements(&self) -> Result<Vec<Permutation>> {
        let id = self.identity();
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() as u64 >= self.limits.max_elements {
                        return Err(Error::CapExceeded {
                            cap: "max_elements",
                            limit: self.limits.max_elements,
                        });
                    }
                    seen.insert(y.clone());
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        Ok(self.chain()?.contains(p))
    }

    /// All elements, generated from the stabilizer chain.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let chain = self.chain()?;
        let mut out = Vec::with_capacity(chain.order() as usize);
        chain.for_each_element(|p| {
            out.push(p.clone());
            true
        });
        Ok(out)
    }

    /// Visits elements until `f` returns `false`.
    pub fn for_each_element<F: FnMut(&Permutation) -> bool>(&self, f: F) -> Result<()> {
        self.chain()?.for_each_element(f);
        Ok(())
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.order()? == 1)
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &FiniteGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest normal subgroup containing `set`. Generators are added one at a
    /// time until the subgroup is closed under conjugation by the generators of
    /// `self`.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<FiniteGroup> {
        for s in set {
            if !self.contains(s)? {
                return Err(Error::NotInGroup);
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = self.subgroup(Vec::new())?;
        let mut queue: VecDeque<Permutation> = set.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            if current.contains(&x)? {
                continue;
            }
            gens.push(x.clone());
            current = self.subgroup(gens.clone())?;
            for g in &self.gens {
                queue.push_back(x.conjugate_by(g));
            }
        }
        Ok(current)
    }

    pub fn is_normal_in(&self, ambient: &FiniteGroup) -> Result<bool> {
        for g in ambient.generators() {
            for n in &self.gens {
                if !self.contains(&n.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Common elements of `self` and `other`: enumerate the smaller group and
    /// keep what the larger one contains.
    pub fn intersection(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let (small, large) = if self.order()? <= other.order()? {
            (self, other)
        } else {
            (other, self)
        };
        let large_chain = large.chain()?;
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = StabChain::new(self.degree, &[]);
        small.chain()?.for_each_element(|p| {
            if large_chain.contains(p) && !current.contains(p) {
                gens.push(p.clone());
                current = StabChain::new(self.degree, &gens);
            }
            true
        });
        self.subgroup(gens)
    }

    /// Order of `self ∩ other`, given a subgroup `common` known to lie in both.
    /// Counts the right cosets of `common` in the group of smaller index whose
    /// representatives lie in the other group.
    pub fn intersection_order_over(&self, other: &FiniteGroup, common: &FiniteGroup) -> Result<u64> {
        let m = common.order()?;
        let (a, b) = if self.order()? <= other.order()? {
            (self, other)
        } else {
            (other, self)
        };
        let reps = a.right_coset_reps(common)?;
        let b_chain = b.chain()?;
        let hits = reps.iter().filter(|x| b_chain.contains(x)).count() as u64;
        Ok(hits * m)
    }

    /// Representatives of the right cosets `H x` of a subgroup `H`, starting
    /// with the identity.
    pub fn right_coset_reps(&self, sub: &FiniteGroup) -> Result<Vec<Permutation>> {
        let action = self.coset_action(sub)?;
        Ok(action.reps)
    }

    /// Action of `self` by right multiplication on the right cosets of `sub`.
    /// Coset 0 is `sub` itself.
    pub fn coset_action(&self, sub: &FiniteGroup) -> Result<CosetAction> {
        let sub_chain = sub.chain()?;
        let index = self.order()? / sub.order()?;
        if index > self.limits.max_elements {
            return Err(Error::CapExceeded {
                cap: "max_elements",
                limit: self.limits.max_elements,
            });
        }
        let id = self.identity();
        let mut index_of: HashMap<Permutation, usize> = HashMap::new();
        index_of.insert(sub_chain.canonical_right_coset(&id), 0);
        let mut reps = vec![id];
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); self.gens.len()];
        let mut head = 0;
        while head < reps.len() {
            for (gi, g) in self.gens.iter().enumerate() {
                let y = reps[head].then(g);
                let key = sub_chain.canonical_right_coset(&y);
                let next = index_of.len();
                let idx = *index_of.entry(key).or_insert(next);
                if idx == reps.len() {
                    reps.push(y);
                }
                images[gi].push(idx as u32);
            }
            head += 1;
        }
        if reps.len() as u64 != index {
            return Err(Error::Inconsistent(format!(
                "coset action found {} cosets, expected index {index}",
                reps.len()
            )));
        }
        let perms = images
            .into_iter()
            .map(Permutation::from_u32_unchecked)
            .collect();
        Ok(CosetAction { reps, perms })
    }
}

/// Permutation action on right cosets.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// `reps[i]` is a representative of coset `i`.
    pub reps: Vec<Permutation>,
    /// One permutation of the cosets per generator of the acting group.
    pub perms: Vec<Permutation>,
}

/// Embedding of a factor into a direct product on disjoint point sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub offset: usize,
    pub degree: usize,
    pub total: usize,
}

impl Embedding {
    pub fn apply(&self, p: &Permutation) -> Permutation {
        p.embed(self.total, self.offset)
    }

    /// Component of a product element on this factor's block.
    pub fn project(&self, p: &Permutation) -> Result<Permutation> {
        p.restrict(self.offset, self.degree)
    }
}

/// `A × B` acting on `deg(A) + deg(B)` points, with the two embeddings.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<(FiniteGroup, Embedding, Embedding)> {
    let total = a.degree() + b.degree();
    let ea = Embedding {
        offset: 0,
        degree: a.degree(),
        total,
    };
    let eb = Embedding {
        offset: a.degree(),
        degree: b.degree(),
        total,
    };
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| ea.apply(g)).collect();
    gens.extend(b.generators().iter().map(|g| eb.apply(g)));
    let g = FiniteGroup::with_limits(total, gens, a.limits())?;
    Ok((g, ea, eb))
}

/// Decides whether `a_i -> b_i` (the generator lists) extends to an
/// isomorphism: the subgroup of `A × B` generated by the pairs must have the
/// order of both `A` and `B`.
pub fn generator_matching_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    let ta = a.generators();
    let tb = b.generators();
    if ta.len() != tb.len() {
        return Err(Error::LengthMismatch {
            left: ta.len(),
            right: tb.len(),
        });
    }
    let oa = a.order()?;
    let ob = b.order()?;
    if oa != ob {
        return Ok(false);
    }
    let diag: Vec<Permutation> = ta.iter().zip(tb).map(|(x, y)| x.direct_sum(y)).collect();
    let d = FiniteGroup::with_limits(a.degree() + b.degree(), diag, a.limits())?;
    Ok(d.order()? == oa)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_group() -> FiniteGroup {
        // symmetries of a square on its vertices 0..4 (cyclic order)
        let r0 = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let r1 = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        FiniteGroup::new(4, vec![r0, r1]).unwrap()
    }

    #[test]
    fn trivial_order() {
        let g = FiniteGroup::new(3, vec![Permutation::identity(3)]).unwrap();
        assert_eq!(g.order().unwrap(), 1);
    }

    #[test]
    fn square_reflections_generate_order_eight() {
        let g = square_group();
        assert_eq!(g.order().unwrap(), 8);
        assert_eq!(g.order_by_closure().unwrap(), 8);
    }

    #[test]
    fn membership_degree_mismatch() {
        let g = square_group();
        assert!(g.contains(&Permutation::identity(5)).is_err());
        assert!(g.contains(&Permutation::identity(4)).unwrap());
    }

    #[test]
    fn element_cap_is_an_error() {
        let n = 8;
        let cycle: Vec<usize> = (0..n).collect();
        let gens = vec![
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&cycle]).unwrap(),
        ];
        let g = FiniteGroup::with_limits(n, gens, Limits::default().with_max_elements(1000)).unwrap();
        assert!(matches!(g.order(), Err(Error::CapExceeded { .. })));
        assert!(matches!(g.order_by_closure(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn normal_closure_in_square_group() {
        let g = square_group();
        let r0 = g.generators()[0].clone();
        let n = g.normal_closure(&[r0]).unwrap();
        // r0 and its conjugate by r1 generate a Klein four-group
        assert_eq!(n.order().unwrap(), 4);
        assert!(n.is_normal_in(&g).unwrap());
        let all = g.normal_closure(g.generators()).unwrap();
        assert_eq!(all.order().unwrap(), 8);
    }

    #[test]
    fn normal_closure_rejects_outsiders() {
        let g = square_group();
        let x = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert!(matches!(g.normal_closure(&[x]), Err(Error::NotInGroup)));
    }

    #[test]
    fn intersection_of_reflection_subgroups() {
        let g = square_group();
        let a = g.subgroup(vec![g.generators()[0].clone()]).unwrap();
        let b = g.subgroup(vec![g.generators()[1].clone()]).unwrap();
        assert_eq!(a.intersection(&b).unwrap().order().unwrap(), 1);
        assert_eq!(g.intersection(&g).unwrap().order().unwrap(), 8);
        let triv = g.subgroup(vec![]).unwrap();
        assert_eq!(a.intersection_order_over(&b, &triv).unwrap(), 1);
        assert_eq!(g.intersection_order_over(&a, &a).unwrap(), 2);
    }

    #[test]
    fn coset_action_on_vertices() {
        let g = square_group();
        let stab = g.subgroup(vec![g.generators()[1].clone()]).unwrap();
        let act = g.coset_action(&stab).unwrap();
        assert_eq!(act.reps.len(), 4);
        let image = FiniteGroup::new(4, act.perms.clone()).unwrap();
        assert_eq!(image.order().unwrap(), 8);
    }

    #[test]
    fn direct_product_orders() {
        let g = square_group();
        let (p, ea, eb) = direct_product(&g, &g).unwrap();
        assert_eq!(p.order().unwrap(), 64);
        let x = ea.apply(&g.generators()[0]);
        let y = eb.apply(&g.generators()[1]);
        assert_eq!(x.then(&y), y.then(&x));
        assert_eq!(ea.project(&x).unwrap(), g.generators()[0]);
        let t = FiniteGroup::trivial(2);
        let (tp, _, _) = direct_product(&t, &t).unwrap();
        assert_eq!(tp.degree(), 4);
        assert_eq!(tp.order().unwrap(), 1);
    }

    #[test]
    fn generator_matching() {
        let g = square_group();
        assert!(generator_matching_isomorphic(&g, &g).unwrap());
        let swapped = g
            .subgroup(vec![g.generators()[1].clone(), g.generators()[0].clone()])
            .unwrap();
        // the square is self-dual, so swapping the two reflections is induced by
        // an automorphism
        assert!(generator_matching_isomorphic(&g, &swapped).unwrap());
        let short = g.subgroup(vec![g.generators()[0].clone()]).unwrap();
        assert!(generator_matching_isomorphic(&g, &short).is_err());
    }
}
