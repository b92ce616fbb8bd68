//! Todd–Coxeter coset enumeration for presentations on involutions.

use std::str::FromStr;

use super::{Presentation, Word};
use crate::error::{Error, Result};
use crate::kernel::{FiniteGroup, Permutation};

const NONE: u32 = u32::MAX;

/// How undefined table entries are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Relator-based (HLT) with a lookahead pass when the table fills up.
    #[default]
    Hlt,
    /// Definition in table order, closing every relator through each new entry.
    Felsch,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(Error::InvalidParams(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Raised internally when a definition needs a row beyond the limit.
struct Full;

/// Closed coset table. Row `c` column `g` holds the coset `c·g`; since
/// every generator is an involution there is no inverse column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<u32>,
}

impl CosetTable {
    /// Number of cosets, the index of the enumerated subgroup.
    pub fn index(&self) -> usize {
        self.rows.len() / self.ngens.max(1)
    }

    pub fn entry(&self, coset: usize, gen: usize) -> usize {
        self.rows[coset * self.ngens + gen] as usize
    }

    /// The permutation each generator induces on the cosets.
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        (0..self.ngens)
            .map(|g| Permutation::from_images((0..self.index()).map(|c| self.entry(c, g)).collect()))
            .collect()
    }

    /// The group the generators induce on the cosets.
    pub fn permutation_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::new(self.index(), self.permutations()?)
    }
}

struct Enumerator<'a> {
    ngens: usize,
    relators: &'a [Word],
    /// Rotations of each relator, grouped by first letter.
    rotations: Vec<Vec<Word>>,
    table: Vec<u32>,
    parent: Vec<u32>,
    active: usize,
    max_cosets: usize,
    deductions: Vec<(u32, u32)>,
    record_deductions: bool,
}

impl<'a> Enumerator<'a> {
    fn new(p: &'a Presentation, max_cosets: usize, record_deductions: bool) -> Self {
        let mut rotations = vec![Vec::new(); p.ngens];
        for r in &p.relators {
            for k in 0..r.len() {
                let rot: Word = r[k..].iter().chain(&r[..k]).copied().collect();
                let first = &mut rotations[rot[0]];
                if !first.contains(&rot) {
                    first.push(rot);
                }
            }
        }
        let mut e = Enumerator {
            ngens: p.ngens,
            relators: &p.relators,
            rotations,
            table: Vec::new(),
            parent: Vec::new(),
            active: 0,
            max_cosets,
            deductions: Vec::new(),
            record_deductions,
        };
        e.push_row();
        e
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn push_row(&mut self) -> u32 {
        let c = self.len() as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.ngens));
        self.parent.push(c);
        self.active += 1;
        c
    }

    fn get(&self, c: u32, g: usize) -> u32 {
        self.table[c as usize * self.ngens + g]
    }

    fn set(&mut self, c: u32, g: usize, d: u32) {
        self.table[c as usize * self.ngens + g] = d;
        self.table[d as usize * self.ngens + g] = c;
        if self.record_deductions {
            self.deductions.push((c, g as u32));
        }
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, g: usize) -> std::result::Result<(), Full> {
        if self.len() >= self.max_cosets {
            return Err(Full);
        }
        let d = self.push_row();
        self.set(c, g, d);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.active -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for g in 0..self.ngens {
                let f = self.get(e, g);
                if f == NONE {
                    continue;
                }
                self.table[f as usize * self.ngens + g] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let x = self.get(e1, g);
                if x != NONE {
                    self.merge(f1, x, &mut queue);
                } else {
                    let y = self.get(f1, g);
                    if y != NONE {
                        self.merge(e1, y, &mut queue);
                    } else {
                        self.set(e1, g, f1);
                    }
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions. Missing entries are defined
    /// when `fill` is set; otherwise a single gap becomes a deduction and a
    /// wider gap is left alone.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> std::result::Result<(), Full> {
        let (mut f, mut b) = (c, c);
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != NONE {
                f = self.get(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j as usize]) != NONE {
                b = self.get(b, w[j as usize]);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, w[i as usize], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    /// Scans every relator from every live coset without defining.
    fn lookahead(&mut self) {
        let mut c = 0u32;
        while (c as usize) < self.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.relators[r].clone();
                // scans without filling never define
                let _ = self.scan(c, &w, false);
            }
            c += 1;
        }
    }

    /// Renumbers the live cosets in order. Returns the old-to-new map.
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![NONE; self.len()];
        let mut next = 0u32;
        for c in 0..self.len() as u32 {
            if self.is_live(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ngens);
        for c in 0..self.len() as u32 {
            if map[c as usize] == NONE {
                continue;
            }
            for g in 0..self.ngens {
                let d = self.get(c, g);
                table.push(if d == NONE { NONE } else { map[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.active = next as usize;
        self.deductions.clear();
        map
    }

    /// Frees room after the table filled up, or reports overflow.
    fn make_room(&mut self, c: &mut u32) -> Result<()> {
        self.lookahead();
        if self.active >= self.max_cosets {
            return Err(Error::CosetOverflow {
                max_cosets: self.max_cosets,
            });
        }
        let map = self.compact();
        // the current coset may have died; resume at the next live one
        let mut old = *c as usize;
        while old < map.len() && map[old] == NONE {
            old += 1;
        }
        *c = if old < map.len() { map[old] } else { self.len() as u32 };
        Ok(())
    }

    fn overflow(&self) -> Error {
        Error::CosetOverflow {
            max_cosets: self.max_cosets,
        }
    }

    fn run_hlt(&mut self, sub: &[Word]) -> Result<()> {
        for w in sub {
            if self.scan(0, w, true).is_err() {
                return Err(self.overflow());
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.len() {
            let mut full = false;
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.relators[r].clone();
                if self.scan(c, &w, true).is_err() {
                    full = true;
                    break;
                }
            }
            if !full && self.is_live(c) {
                for g in 0..self.ngens {
                    if self.get(c, g) == NONE && self.define(c, g).is_err() {
                        full = true;
                        break;
                    }
                }
            }
            if full {
                self.make_room(&mut c)?;
                continue;
            }
            c += 1;
        }
        Ok(())
    }

    fn process_deductions(&mut self) {
        while let Some((c, g)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, g as usize);
            for start in [c, d] {
                if start == NONE {
                    continue;
                }
                let rots = self.rotations[g as usize].clone();
                for w in &rots {
                    if !self.is_live(start) {
                        break;
                    }
                    let _ = self.scan(start, w, false);
                }
            }
        }
    }

    fn run_felsch(&mut self, sub: &[Word]) -> Result<()> {
        for w in sub {
            if self.scan(0, w, true).is_err() {
                return Err(self.overflow());
            }
        }
        self.process_deductions();
        let mut c = 0u32;
        while (c as usize) < self.len() {
            let mut g = 0;
            while g < self.ngens && self.is_live(c) {
                if self.get(c, g) == NONE {
                    if self.define(c, g).is_err() {
                        return Err(self.overflow());
                    }
                    self.process_deductions();
                }
                g += 1;
            }
            c += 1;
        }
        Ok(())
    }

    fn finish(mut self) -> Result<CosetTable> {
        self.compact();
        if self.table.contains(&NONE) {
            return Err(Error::Inconsistent("coset table left incomplete".into()));
        }
        Ok(CosetTable {
            ngens: self.ngens,
            rows: self.table,
        })
    }
}

/// Enumerates the cosets of the subgroup generated by `sub`, keeping at
/// most `max_cosets` rows at a time.
pub fn coset_table(p: &Presentation, sub: &[Word], max_cosets: usize, strategy: Strategy) -> Result<CosetTable> {
    p.validate()?;
    if max_cosets == 0 {
        return Err(Error::InvalidParams("max_cosets must be positive".into()));
    }
    for w in sub {
        if let Some(&g) = w.iter().find(|&&g| g >= p.ngens) {
            return Err(Error::InvalidParams(format!("subgroup word uses generator {g}")));
        }
    }
    let mut e = Enumerator::new(p, max_cosets, strategy == Strategy::Felsch);
    match strategy {
        Strategy::Hlt => e.run_hlt(sub)?,
        Strategy::Felsch => e.run_felsch(sub)?,
    }
    e.finish()
}

/// Index of the subgroup generated by `sub`; the group order when `sub`
/// is empty.
pub fn todd_coxeter(p: &Presentation, sub: &[Word], max_cosets: usize, strategy: Strategy) -> Result<usize> {
    Ok(coset_table(p, sub, max_cosets, strategy)?.index())
}
