//! Stabilizer chains built by Schreier-Sims.
//!
//! A random sifting phase with a fixed seed proposes strong generators; a
//! deterministic pass then sifts every Schreier generator, so the resulting
//! chain is exact regardless of what the random phase found.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;

const NONE: u32 = u32::MAX;
const RANDOM_SEED: u64 = 0x5eed_2e0f_4e11;
const RANDOM_STREAK: usize = 24;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<u32>,
    /// `slot[p]` indexes `reps` for points in the orbit, `NONE` otherwise.
    slot: Vec<u32>,
    /// `reps[i]` maps `base` to `orbit[i]`.
    reps: Vec<Permutation>,
    inv_reps: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NONE; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        for &p in &self.orbit {
            self.slot[p as usize] = NONE;
        }
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        self.orbit.push(self.base);
        self.slot[self.base as usize] = 0;
        self.reps.push(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let delta = self.orbit[head];
            for g in &self.gens {
                let gamma = g.apply_u32(delta);
                if self.slot[gamma as usize] == NONE {
                    self.slot[gamma as usize] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    let rep = self.reps[head].then(g);
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
        self.inv_reps = self.reps.iter().map(Permutation::inverse).collect();
    }

    #[inline]
    pub fn rep(&self, p: u32) -> Option<&Permutation> {
        match self.slot[p as usize] {
            NONE => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    #[inline]
    fn inv_rep(&self, p: u32) -> Option<&Permutation> {
        match self.slot[p as usize] {
            NONE => None,
            i => Some(&self.inv_reps[i as usize]),
        }
    }
}

/// Stabilizer chain `G = G_0 >= G_1 >= ... >= G_k = 1` with transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            chain.insert_generator(g.clone(), 0);
        }
        chain.random_phase(&gens);
        chain.complete();
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Strong generators at the top level, i.e. a generating set of the group.
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| &l.gens[..]).unwrap_or(&[])
    }

    /// Sifts `h` starting at `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it ran through).
    pub(crate) fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply_u32(level.base);
            match level.inv_rep(beta) {
                Some(inv) => h.then_assign(inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        let (h, _) = self.sift_from(p.clone(), 0);
        h.is_identity()
    }

    /// Adds `g` as a strong generator of the levels `from..=j`, where `j` is the
    /// first level whose base point `g` moves, extending the base if needed.
    /// Returns `j`.
    fn insert_generator(&mut self, g: Permutation, from: usize) -> usize {
        let mut j = from;
        while j < self.levels.len() && g.apply_u32(self.levels[j].base) == self.levels[j].base {
            j += 1;
        }
        if j == self.levels.len() {
            let moved = g.first_moved().expect("non-identity generator") as u32;
            self.levels.push(Level::new(moved, self.degree));
        }
        for l in from..=j {
            self.levels[l].gens.push(g.clone());
            self.levels[l].rebuild_orbit(self.degree);
        }
        j
    }

    fn random_phase(&mut self, gens: &[Permutation]) {
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        let mut pool: Vec<Permutation> = gens.to_vec();
        while pool.len() < 10 {
            pool.push(gens[pool.len() % gens.len()].clone());
        }
        let mut acc = Permutation::identity(self.degree);
        for _ in 0..40 {
            product_replacement(&mut pool, &mut acc, &mut rng);
        }
        let mut streak = 0;
        while streak < RANDOM_STREAK {
            let x = product_replacement(&mut pool, &mut acc, &mut rng);
            let (h, _) = self.sift_from(x, 0);
            if h.is_identity() {
                streak += 1;
            } else {
                self.insert_generator(h, 0);
                streak = 0;
            }
        }
    }

    /// Deterministic Schreier-Sims pass: every Schreier generator of every
    /// level must sift to the identity through the levels below it.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level_idx = i - 1;
            match self.find_missing(level_idx) {
                Some(h) => {
                    let j = self.insert_generator(h, level_idx + 1);
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
    }

    fn find_missing(&self, level_idx: usize) -> Option<Permutation> {
        let level = &self.levels[level_idx];
        for (k, &delta) in level.orbit.iter().enumerate() {
            let u = &level.reps[k];
            for s in &level.gens {
                let gamma = s.apply_u32(delta);
                let inv = level.inv_rep(gamma).expect("orbit closed under generators");
                let mut h = u.then(s);
                h.then_assign(inv);
                if h.is_identity() {
                    continue;
                }
                let (res, _) = self.sift_from(h, level_idx + 1);
                if !res.is_identity() {
                    return Some(res);
                }
            }
        }
        None
    }

    /// Calls `f` on every element, as products of transversal elements.
    pub fn for_each_element<F: FnMut(&Permutation) -> bool>(&self, mut f: F) {
        let id = Permutation::identity(self.degree);
        if self.levels.is_empty() {
            f(&id);
            return;
        }
        self.walk(self.levels.len(), id, &mut f);
    }

    // Elements are u_{k-1} ... u_0 read left to right.
    fn walk<F: FnMut(&Permutation) -> bool>(&self, depth: usize, prefix: Permutation, f: &mut F) -> bool {
        if depth == 0 {
            return f(&prefix);
        }
        let level = &self.levels[depth - 1];
        for rep in &level.reps {
            if !self.walk(depth - 1, prefix.then(rep), f) {
                return false;
            }
        }
        true
    }

    /// Lexicographically least element of the right coset `H x` with respect
    /// to the base images of this chain (the chain of `H`).
    pub(crate) fn canonical_right_coset(&self, x: &Permutation) -> Permutation {
        let mut y = x.clone();
        for level in &self.levels {
            let mut best = NONE;
            let mut best_pt = NONE;
            for &delta in &level.orbit {
                let img = y.apply_u32(delta);
                if img < best {
                    best = img;
                    best_pt = delta;
                }
            }
            let u = level.rep(best_pt).expect("orbit point");
            y = u.then(&y);
        }
        y
    }
}

fn product_replacement(pool: &mut [Permutation], acc: &mut Permutation, rng: &mut ChaCha8Rng) -> Permutation {
    let n = pool.len();
    let s = rng.gen_range(0..n);
    let mut t = rng.gen_range(0..n);
    while t == s {
        t = rng.gen_range(0..n);
    }
    pool[s] = if rng.gen_bool(0.5) {
        pool[s].then(&pool[t])
    } else {
        pool[t].then(&pool[s])
    };
    acc.then_assign(&pool[s]);
    acc.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Permutation> {
        let cycle: Vec<usize> = (0..n).collect();
        vec![
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&cycle]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_group_orders() {
        let mut fact = 1u128;
        for n in 2..8 {
            fact *= n as u128;
            assert_eq!(StabChain::new(n, &sym(n)).order(), fact);
        }
    }

    #[test]
    fn trivial_group() {
        let c = StabChain::new(5, &[Permutation::identity(5)]);
        assert_eq!(c.order(), 1);
        let mut count = 0;
        c.for_each_element(|_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn element_walk_is_exhaustive_and_distinct() {
        let c = StabChain::new(5, &sym(5));
        let mut seen = std::collections::HashSet::new();
        c.for_each_element(|p| {
            assert!(seen.insert(p.clone()));
            true
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn canonical_coset_is_constant_on_cosets() {
        // H = <(0 1)> in S4
        let h = StabChain::new(4, &[Permutation::from_cycles(4, &[&[0, 1]]).unwrap()]);
        let g = StabChain::new(4, &sym(4));
        let mut keys = std::collections::HashSet::new();
        g.for_each_element(|x| {
            let c = h.canonical_right_coset(x);
            let swapped = Permutation::from_cycles(4, &[&[0, 1]]).unwrap().then(x);
            assert_eq!(c, h.canonical_right_coset(&swapped));
            keys.insert(c);
            true
        });
        assert_eq!(keys.len(), 12);
    }
}
