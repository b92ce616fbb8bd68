//! String C-groups: a permutation group with an ordered tuple of involutory
//! generators satisfying the string Coxeter relations and the intersection
//! property.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{FiniteGroup, Permutation};

/// A group together with its distinguished generators `(ρ_0, .., ρ_{d-1})`.
///
/// Axiom checks are cached once computed; the value itself is immutable.
#[derive(Clone)]
pub struct StringCGroup {
    group: FiniteGroup,
    relations: Arc<OnceLock<bool>>,
    intersection: Arc<OnceLock<bool>>,
    schlafli: Arc<OnceLock<Vec<u64>>>,
}

impl fmt::Debug for StringCGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StringCGroup")
            .field("rank", &self.rank())
            .field("degree", &self.group.degree())
            .finish()
    }
}

/// A violated string Coxeter relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationFailure {
    /// `ρ_i` is not of order exactly 2.
    NotInvolution { index: usize, order: u64 },
    /// `(ρ_i ρ_j)^2 != 1` although `|i - j| >= 2`.
    FarPairNotCommuting { i: usize, j: usize },
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationFailure::NotInvolution { index, order } => {
                write!(f, "generator {index} has order {order}, not 2")
            }
            RelationFailure::FarPairNotCommuting { i, j } => {
                write!(f, "generators {i} and {j} do not commute")
            }
        }
    }
}

/// Result of [`StringCGroup::check_string_relations`]; empty means pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationDiagnostics {
    pub failures: Vec<RelationFailure>,
}

impl RelationDiagnostics {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// How the intersection property is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IntersectionStrategy {
    /// Every pair of generator subsets `K, J`.
    #[default]
    Exhaustive,
    /// Only `<ρ_i..ρ_{j-1}> ∩ <ρ_{i+1}..ρ_j> = <ρ_{i+1}..ρ_{j-1}>` for every
    /// window `i < j`, which implies the full property by induction on rank
    /// (facet and vertex-figure groups, then their intersection).
    Sequential,
}

impl StringCGroup {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        if group.generators().is_empty() {
            return Err(Error::InvalidParams("a string C-group needs at least one generator".into()));
        }
        Ok(StringCGroup {
            group,
            relations: Arc::new(OnceLock::new()),
            intersection: Arc::new(OnceLock::new()),
            schlafli: Arc::new(OnceLock::new()),
        })
    }

    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        StringCGroup::new(FiniteGroup::new(degree, gens)?)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn gens(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn gen(&self, i: usize) -> &Permutation {
        &self.group.generators()[i]
    }

    pub fn rank(&self) -> usize {
        self.group.generators().len()
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn order(&self) -> Result<u64> {
        self.group.order()
    }

    pub fn check_string_relations(&self) -> RelationDiagnostics {
        let gens = self.gens();
        let mut failures = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let order = g.order();
            if order != 2 {
                failures.push(RelationFailure::NotInvolution { index: i, order });
            }
        }
        for i in 0..gens.len() {
            for j in i + 2..gens.len() {
                if gens[i].then(&gens[j]) != gens[j].then(&gens[i]) {
                    failures.push(RelationFailure::FarPairNotCommuting { i, j });
                }
            }
        }
        let _ = self.relations.set(failures.is_empty());
        RelationDiagnostics { failures }
    }

    pub fn relations_hold(&self) -> bool {
        match self.relations.get() {
            Some(&v) => v,
            None => self.check_string_relations().passed(),
        }
    }

    fn require_relations(&self) -> Result<()> {
        if self.relations_hold() {
            Ok(())
        } else {
            let diag = self.check_string_relations();
            let msg: Vec<String> = diag.failures.iter().map(|f| f.to_string()).collect();
            Err(Error::RelationsFail(msg.join("; ")))
        }
    }

    /// Schläfli symbol: `p_i` is the order of `ρ_{i-1} ρ_i`.
    pub fn schlafli(&self) -> Result<Vec<u64>> {
        self.require_relations()?;
        Ok(self
            .schlafli
            .get_or_init(|| {
                self.gens()
                    .windows(2)
                    .map(|w| w[0].then(&w[1]).order())
                    .collect()
            })
            .clone())
    }

    /// Subgroup generated by the selected generators, in the order given.
    pub fn parabolic(&self, subset: &[usize]) -> Result<FiniteGroup> {
        let gens = subset
            .iter()
            .map(|&i| {
                self.gens()
                    .get(i)
                    .cloned()
                    .ok_or(Error::RankOutOfRange { index: i, rank: self.rank() })
            })
            .collect::<Result<Vec<_>>>()?;
        self.group.subgroup(gens)
    }

    /// Parabolic subgroup on a contiguous index window, as a string C-group
    /// (the group of a section of the polytope).
    pub fn section(&self, range: std::ops::Range<usize>) -> Result<StringCGroup> {
        if range.end > self.rank() || range.start >= range.end {
            return Err(Error::RankOutOfRange {
                index: range.end,
                rank: self.rank(),
            });
        }
        let idx: Vec<usize> = range.collect();
        StringCGroup::new(self.parabolic(&idx)?)
    }

    /// Same group with the generator tuple reversed (the dual polytope).
    pub fn dual(&self) -> Result<StringCGroup> {
        let gens: Vec<Permutation> = self.gens().iter().rev().cloned().collect();
        StringCGroup::new(self.group.subgroup(gens)?)
    }

    pub fn check_intersection_property(&self) -> Result<bool> {
        if let Some(&v) = self.intersection.get() {
            return Ok(v);
        }
        let v = self.check_intersection_property_with(IntersectionStrategy::Exhaustive)?;
        let _ = self.intersection.set(v);
        Ok(v)
    }

    pub fn check_intersection_property_with(&self, strategy: IntersectionStrategy) -> Result<bool> {
        self.require_relations()?;
        let d = self.rank();
        let limits = self.group.limits();
        let ok = match strategy {
            IntersectionStrategy::Exhaustive => {
                if d > limits.max_rank {
                    return Err(Error::CapExceeded {
                        cap: "max_rank",
                        limit: limits.max_rank as u64,
                    });
                }
                self.exhaustive_intersection()?
            }
            IntersectionStrategy::Sequential => self.sequential_intersection()?,
        };
        if ok {
            let _ = self.intersection.set(true);
        }
        Ok(ok)
    }

    fn mask_group(&self, mask: u32) -> Result<FiniteGroup> {
        let idx: Vec<usize> = (0..self.rank()).filter(|i| mask >> i & 1 == 1).collect();
        self.parabolic(&idx)
    }

    fn exhaustive_intersection(&self) -> Result<bool> {
        let d = self.rank();
        let full = 1u32 << d;
        let groups: Vec<FiniteGroup> = (0..full).map(|m| self.mask_group(m)).collect::<Result<_>>()?;
        groups.par_iter().try_for_each(|g| g.order().map(|_| ()))?;
        let mut pairs = Vec::new();
        for k in 0..full {
            for j in k + 1..full {
                if k & j == k || k & j == j {
                    continue;
                }
                pairs.push((k, j));
            }
        }
        let bad = pairs
            .par_iter()
            .map(|&(k, j)| -> Result<bool> {
                let common = &groups[(k & j) as usize];
                let n = groups[k as usize].intersection_order_over(&groups[j as usize], common)?;
                Ok(n != common.order()?)
            })
            .try_fold(|| false, |acc, r| r.map(|b| acc || b))
            .try_reduce(|| false, |a, b| Ok(a || b))?;
        Ok(!bad)
    }

    fn sequential_intersection(&self) -> Result<bool> {
        let d = self.rank();
        for len in 2..=d {
            for i in 0..=d - len {
                let j = i + len - 1;
                let lower: Vec<usize> = (i..j).collect();
                let upper: Vec<usize> = (i + 1..=j).collect();
                let middle: Vec<usize> = (i + 1..j).collect();
                let common = self.parabolic(&middle)?;
                let n = self
                    .parabolic(&lower)?
                    .intersection_order_over(&self.parabolic(&upper)?, &common)?;
                if n != common.order()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// String relations and the exhaustive intersection property.
    pub fn is_string_c_group(&self) -> Result<bool> {
        Ok(self.relations_hold() && self.check_intersection_property()?)
    }
}

/// True iff `n` is a power of two, decided by repeated halving.
pub fn is_power_of_two_by_halving(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(2) {
        n /= 2;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> StringCGroup {
        let r0 = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        let r1 = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        StringCGroup::from_generators(4, vec![r0, r1]).unwrap()
    }

    #[test]
    fn square_is_a_string_c_group() {
        let g = square();
        assert!(g.check_string_relations().passed());
        assert_eq!(g.schlafli().unwrap(), vec![4]);
        assert!(g.check_intersection_property().unwrap());
        assert!(g
            .check_intersection_property_with(IntersectionStrategy::Sequential)
            .unwrap());
    }

    #[test]
    fn rank_one_passes() {
        let r0 = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let g = StringCGroup::from_generators(2, vec![r0]).unwrap();
        assert!(g.check_string_relations().passed());
        assert!(g.check_intersection_property().unwrap());
        assert_eq!(g.schlafli().unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn duplicate_generator_fails_intersection() {
        let r = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let g = StringCGroup::from_generators(2, vec![r.clone(), r]).unwrap();
        assert!(g.check_string_relations().passed());
        assert!(!g.check_intersection_property().unwrap());
        assert!(!g
            .check_intersection_property_with(IntersectionStrategy::Sequential)
            .unwrap());
    }

    #[test]
    fn non_involution_reported() {
        let sq = square();
        let rot = sq.gen(0).then(sq.gen(1));
        let g = StringCGroup::from_generators(4, vec![sq.gen(0).clone(), rot]).unwrap();
        let diag = g.check_string_relations();
        assert_eq!(diag.failures, vec![RelationFailure::NotInvolution { index: 1, order: 4 }]);
        assert!(g.schlafli().is_err());
    }

    #[test]
    fn halving() {
        assert!(is_power_of_two_by_halving(1));
        assert!(is_power_of_two_by_halving(1 << 19));
        assert!(!is_power_of_two_by_halving(72));
        assert!(!is_power_of_two_by_halving(0));
    }
}
