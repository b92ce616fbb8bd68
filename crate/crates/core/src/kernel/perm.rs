use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree - 1}` stored as its image table.
///
/// Products are read left to right: `p * q` first applies `p`, then `q`, so
/// `x^(pq) = q(p(x))`. Every module in the crate uses this convention.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image table {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_u32_unchecked(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut v = images.clone();
            v.sort_unstable();
            v.iter().enumerate().all(|(i, &x)| i as u32 == x)
        });
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on {degree} points"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub(crate) fn apply_u32(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Product `self` then `other`, checking degrees.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Product `self` then `other`; degrees must agree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// In-place `self = self then other`.
    #[inline]
    pub(crate) fn then_assign(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Commutator `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc.then_assign(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// First point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Places `self` on the points `offset .. offset + degree` of a larger set,
    /// fixing everything else.
    pub fn embed(&self, total: usize, offset: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }

    /// Disjoint-union product acting on `self.degree() + other.degree()` points.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + shift));
        Permutation { images }
    }

    /// Restriction to a block `offset .. offset + len` that the permutation
    /// must leave invariant.
    pub fn restrict(&self, offset: usize, len: usize) -> Result<Permutation> {
        let mut images = Vec::with_capacity(len);
        for i in offset..offset + len {
            let x = self.apply(i);
            if x < offset || x >= offset + len {
                return Err(Error::InvalidPermutation(format!(
                    "block {offset}..{} is not invariant",
                    offset + len
                )));
            }
            images.push((x - offset) as u32);
        }
        Ok(Permutation { images })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "permutation degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_with_identity() {
        let p = Permutation::from_cycles(4, &[&[0, 2, 3]]).unwrap();
        let id = Permutation::identity(4);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_three_cycle_with_transposition() {
        let a = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = a.compose(&b).unwrap();
        // image table by hand: 0 -a-> 1 -b-> 0, 1 -a-> 2 -b-> 2, 2 -a-> 0 -b-> 1
        let expected: Vec<usize> = (0..3).map(|x| b.apply(a.apply(x))).collect();
        assert_eq!(expected, vec![0, 2, 1]);
        assert_eq!(c, Permutation::from_cycles(3, &[&[1, 2]]).unwrap());
        assert_eq!(c.to_string(), "(1 2)");
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn order_and_pow() {
        let p = Permutation::from_cycles(7, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert!(!p.pow(3).is_identity());
    }

    #[test]
    fn direct_sum_and_restrict() {
        let a = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 2]]).unwrap();
        let s = a.direct_sum(&b);
        assert_eq!(s.restrict(0, 2).unwrap(), a);
        assert_eq!(s.restrict(2, 3).unwrap(), b);
        assert_eq!(b.embed(5, 2), Permutation::identity(2).direct_sum(&b));
    }
}
