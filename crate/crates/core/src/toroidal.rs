//! Regular toroidal maps `{4,4}_(s,t)`: the square tessellation of the plane
//! modulo the lattice spanned by `(s,t)` and `(-t,s)`.

use std::collections::HashMap;

use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::kernel::{generator_matching_isomorphic, FiniteGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TorusParams {
    pub s: u32,
    pub t: u32,
}

impl TorusParams {
    /// Accepts `t = 0, s >= 2` and `s = t >= 2`.
    pub fn new(s: u32, t: u32) -> Result<Self> {
        if s >= 2 && (t == 0 || t == s) {
            Ok(TorusParams { s, t })
        } else {
            Err(Error::InvalidParams(format!(
                "toroidal parameters ({s},{t}) must satisfy s >= 2 and t = 0 or t = s"
            )))
        }
    }

    /// `8 (s^2 + t^2)`.
    pub fn group_order(&self) -> u64 {
        let (s, t) = (self.s as u64, self.t as u64);
        8 * (s * s + t * t)
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.s as i64, self.t as i64)
    }
}

impl std::fmt::Display for TorusParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{4,4}}_({},{})", self.s, self.t)
    }
}

/// Parameters of the toroidal map whose group has order exactly `2^n`:
/// `(2^e, 0)` with `n = 2e + 3`, or `(2^e, 2^e)` with `n = 2e + 4`.
pub fn params_for_exponent(n: u32) -> Result<TorusParams> {
    if n < 5 {
        return Err(Error::InvalidParams(format!("exponent {n} is below 5")));
    }
    if n >= 35 {
        return Err(Error::InvalidParams(format!("exponent {n} is too large")));
    }
    if n % 2 == 1 {
        let s = 1u32 << ((n - 3) / 2);
        TorusParams::new(s, 0)
    } else {
        let s = 1u32 << ((n - 4) / 2);
        TorusParams::new(s, s)
    }
}

/// Translation lattice in Hermite normal form: rows `(a, 0)` and `(b, c)`
/// with `0 <= b < a`. Every class of `Z^2 / Λ` has a unique representative
/// in `[0, a) × [0, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    a: i64,
    b: i64,
    c: i64,
}

impl Lattice {
    /// Lattice spanned by `(s, t)` and `(-t, s)`.
    pub fn new(s: i64, t: i64) -> Self {
        // Euclid on the second coordinates of the two spanning rows.
        let (mut u, mut v) = ((s, t), (-t, s));
        while v.1 != 0 {
            let q = u.1.div_euclid(v.1);
            let r = (u.0 - q * v.0, u.1 - q * v.1);
            u = v;
            v = r;
        }
        // now v = (x, 0) and u has the gcd in its second coordinate
        if u.1 < 0 {
            u = (-u.0, -u.1);
        }
        let a = v.0.abs();
        let c = u.1;
        Lattice {
            a,
            b: u.0.rem_euclid(a),
            c,
        }
    }

    /// Index of the lattice in `Z^2`.
    pub fn index(&self) -> usize {
        (self.a * self.c) as usize
    }

    pub fn reduce(&self, (x, y): (i64, i64)) -> (i64, i64) {
        let q = y.div_euclid(self.c);
        let y = y - q * self.c;
        let x = (x - q * self.b).rem_euclid(self.a);
        (x, y)
    }

    pub fn contains(&self, v: (i64, i64)) -> bool {
        self.reduce(v) == (0, 0)
    }

    fn vector(&self, slot: usize) -> (i64, i64) {
        let slot = slot as i64;
        (slot % self.a, slot / self.a)
    }
}

/// A signed permutation matrix, as `[[m00, m01], [m10, m11]]`.
pub type PointPart = [[i64; 2]; 2];

/// The eight symmetries of the square fixing the origin.
pub fn point_group() -> [PointPart; 8] {
    let mut out = [[[0; 2]; 2]; 8];
    let mut i = 0;
    for swap in [false, true] {
        for sx in [1, -1] {
            for sy in [1, -1] {
                out[i] = if swap {
                    [[0, sx], [sy, 0]]
                } else {
                    [[sx, 0], [0, sy]]
                };
                i += 1;
            }
        }
    }
    out
}

/// `p ↦ M p + t` on `Z^2 / Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineIsometry {
    pub pointpart: PointPart,
    pub transpart: (i64, i64),
}

fn mat_vec(m: &PointPart, v: (i64, i64)) -> (i64, i64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

fn mat_mul(m: &PointPart, n: &PointPart) -> PointPart {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = m[i][0] * n[0][j] + m[i][1] * n[1][j];
        }
    }
    out
}

impl AffineIsometry {
    pub fn new(pointpart: PointPart, transpart: (i64, i64), lattice: &Lattice) -> Self {
        AffineIsometry {
            pointpart,
            transpart: lattice.reduce(transpart),
        }
    }

    pub fn identity() -> Self {
        AffineIsometry {
            pointpart: [[1, 0], [0, 1]],
            transpart: (0, 0),
        }
    }

    pub fn apply(&self, p: (i64, i64), lattice: &Lattice) -> (i64, i64) {
        let q = mat_vec(&self.pointpart, p);
        lattice.reduce((q.0 + self.transpart.0, q.1 + self.transpart.1))
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &AffineIsometry, lattice: &Lattice) -> AffineIsometry {
        let m = mat_mul(&other.pointpart, &self.pointpart);
        let t = mat_vec(&other.pointpart, self.transpart);
        AffineIsometry::new(m, (t.0 + other.transpart.0, t.1 + other.transpart.1), lattice)
    }

    pub fn inverse(&self, lattice: &Lattice) -> AffineIsometry {
        // signed permutation matrices are orthogonal
        let m = self.pointpart;
        let mt = [[m[0][0], m[1][0]], [m[0][1], m[1][1]]];
        let t = mat_vec(&mt, self.transpart);
        AffineIsometry::new(mt, (-t.0, -t.1), lattice)
    }

    pub fn is_translation(&self) -> bool {
        self.pointpart == [[1, 0], [0, 1]]
    }
}

/// The affine model of the group of `{4,4}_(s,t)`: all point parts combined
/// with all translations mod Λ.
#[derive(Clone, Debug)]
pub struct TorusModel {
    pub params: TorusParams,
    pub lattice: Lattice,
    pub elements: Vec<AffineIsometry>,
    index: HashMap<AffineIsometry, usize>,
}

impl TorusModel {
    pub fn new(params: TorusParams) -> Self {
        let lattice = params.lattice();
        let mut elements = Vec::with_capacity(8 * lattice.index());
        for m in point_group() {
            for slot in 0..lattice.index() {
                elements.push(AffineIsometry::new(m, lattice.vector(slot), &lattice));
            }
        }
        let index = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        TorusModel {
            params,
            lattice,
            elements,
            index,
        }
    }

    /// `ρ_0: (x,y) ↦ (1-x, y)`, `ρ_1: (x,y) ↦ (y, x)`, `ρ_2: (x,y) ↦ (x, -y)`.
    pub fn generators(&self) -> [AffineIsometry; 3] {
        let l = &self.lattice;
        [
            AffineIsometry::new([[-1, 0], [0, 1]], (1, 0), l),
            AffineIsometry::new([[0, 1], [1, 0]], (0, 0), l),
            AffineIsometry::new([[1, 0], [0, -1]], (0, 0), l),
        ]
    }

    pub fn index_of(&self, e: &AffineIsometry) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Right regular action of `g`: element `e` goes to `e g`.
    pub fn regular_permutation(&self, g: &AffineIsometry) -> Permutation {
        let images: Vec<usize> = self
            .elements
            .iter()
            .map(|e| self.index[&e.then(g, &self.lattice)])
            .collect();
        Permutation::from_images(images).expect("right multiplication is a bijection")
    }

    /// Element `ρ_0 ρ_1 ρ_2 ρ_1`, a unit translation along the first axis.
    pub fn unit_translation(&self) -> AffineIsometry {
        let [r0, r1, r2] = self.generators();
        let l = &self.lattice;
        r0.then(&r1, l).then(&r2, l).then(&r1, l)
    }
}

/// Group of `{4,4}_(s,t)` in its regular permutation representation, with the
/// C-group axioms checked.
pub fn build_torus_group(p: TorusParams) -> Result<StringCGroup> {
    TorusParams::new(p.s, p.t)?;
    let model = TorusModel::new(p);
    let gens: Vec<Permutation> = model
        .generators()
        .iter()
        .map(|g| model.regular_permutation(g))
        .collect();
    let g = StringCGroup::new(FiniteGroup::new(model.elements.len(), gens)?)?;
    if g.order()? != p.group_order() {
        return Err(Error::Inconsistent(format!(
            "{p} generated a group of order {}, expected {}",
            g.order()?,
            p.group_order()
        )));
    }
    if !g.is_string_c_group()? {
        return Err(Error::Inconsistent(format!("{p} is not a string C-group")));
    }
    Ok(g)
}

/// Group `[4,4]^(n)` of order `2^n`.
pub fn torus_group_for_exponent(n: u32) -> Result<StringCGroup> {
    build_torus_group(params_for_exponent(n)?)
}

/// Whether reversing the generator tuple is induced by an automorphism
/// (self-duality).
pub fn polarity_exists(g: &StringCGroup) -> Result<bool> {
    generator_matching_isomorphic(g.group(), g.dual()?.group())
}
