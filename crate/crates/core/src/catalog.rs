//! Small named groups and a textual group spec for them.

use crate::cstring::StringCGroup;
use crate::error::{Error, Result};
use crate::kernel::Permutation;
use crate::mix::build_flat_tower;
use crate::toroidal::{build_torus_group, TorusParams};

/// Symmetry group `[p]` of the `p`-gon acting on its vertices.
pub fn polygon_group(p: usize) -> Result<StringCGroup> {
    if p < 3 {
        return Err(Error::InvalidParams(format!("polygon needs p >= 3, got {p}")));
    }
    let r0: Vec<usize> = (0..p).map(|i| (p + 1 - i) % p).collect();
    let r1: Vec<usize> = (0..p).map(|i| (p - i) % p).collect();
    StringCGroup::from_generators(p, vec![Permutation::from_images(r0)?, Permutation::from_images(r1)?])
}

/// Group `[4,3]` of the cube acting on its 8 vertices, labelled by bit
/// triples. Base flag: vertex 000, the edge towards 100, the face `z = 0`.
pub fn cube_group() -> Result<StringCGroup> {
    let swap = |v: usize, i: usize, j: usize| -> usize {
        let (bi, bj) = (v >> i & 1, v >> j & 1);
        (v & !(1 << i) & !(1 << j)) | (bj << i) | (bi << j)
    };
    let r0: Vec<usize> = (0..8).map(|v| v ^ 1).collect();
    let r1: Vec<usize> = (0..8).map(|v| swap(v, 0, 1)).collect();
    let r2: Vec<usize> = (0..8).map(|v| swap(v, 1, 2)).collect();
    StringCGroup::from_generators(
        8,
        vec![
            Permutation::from_images(r0)?,
            Permutation::from_images(r1)?,
            Permutation::from_images(r2)?,
        ],
    )
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParams(format!("not a number: {x:?}")))
        })
        .collect()
}

/// Parses `square`, `cube`, `polygon:P`, `torus:S,T`, `torus-exp:N`,
/// `tower:N3,N4,..` or `power:<spec>` (the power polytope of another group spec).
pub fn parse_group_spec(spec: &str) -> Result<StringCGroup> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "square" => polygon_group(4),
        "cube" => cube_group(),
        "polygon" => polygon_group(parse_list(args)?.first().copied().unwrap_or(0) as usize),
        "torus" => match parse_list(args)?[..] {
            [s, t] => build_torus_group(TorusParams::new(s, t)?),
            _ => Err(Error::InvalidParams(format!("torus spec needs s,t: {spec:?}"))),
        },
        "torus-exp" => match parse_list(args)?[..] {
            [n] => crate::toroidal::torus_group_for_exponent(n),
            _ => Err(Error::InvalidParams(format!("torus-exp spec needs n: {spec:?}"))),
        },
        "tower" => Ok(build_flat_tower(&parse_list(args)?)?.group),
        "power" => crate::power::power_2k(&parse_group_spec(args)?),
        _ => Err(Error::InvalidParams(format!("unknown group spec {spec:?}"))),
    }
}

/// The regular groups built by this crate's constructions, with order at
/// most `max_order`, each with a short label: polygons, the cube, toroidal
/// maps, flat towers of rank 4 and 5 with types in `5..=7`, and power
/// polytopes of small bases.
pub fn regular_corpus(max_order: u64) -> Result<Vec<(String, StringCGroup)>> {
    let mut out = Vec::new();
    let mut push = |label: String, g: StringCGroup| -> Result<()> {
        if g.order()? <= max_order {
            out.push((label, g));
        }
        Ok(())
    };
    for p in [3, 4, 5, 6, 8] {
        push(format!("polygon:{p}"), polygon_group(p)?)?;
    }
    push("cube".into(), cube_group()?)?;
    for (s, t) in [(2, 0), (2, 2), (3, 0), (3, 3), (4, 0), (4, 4), (5, 0), (8, 0)] {
        if 8 * (s * s + t * t) as u64 <= max_order {
            push(format!("torus:{s},{t}"), build_torus_group(TorusParams::new(s, t)?)?)?;
        }
    }
    let range = 5..=7u32;
    for a in range.clone() {
        for b in range.clone() {
            if 1u64 << crate::mix::predicted_exponent(&[a, b]) <= max_order {
                push(format!("tower:{a},{b}"), build_flat_tower(&[a, b])?.group)?;
            }
            for c in range.clone() {
                if 1u64 << crate::mix::predicted_exponent(&[a, b, c]) <= max_order {
                    push(format!("tower:{a},{b},{c}"), build_flat_tower(&[a, b, c])?.group)?;
                }
            }
        }
    }
    for (label, base) in [
        ("square", polygon_group(4)?),
        ("torus:2,0", build_torus_group(TorusParams::new(2, 0)?)?),
        ("torus:2,2", build_torus_group(TorusParams::new(2, 2)?)?),
    ] {
        let v = base.order()? / base.parabolic(&(1..base.rank()).collect::<Vec<_>>())?.order()?;
        if base.order()? << v <= max_order {
            push(format!("power:{label}"), crate::power::power_2k(&base)?)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_groups() {
        let sq = polygon_group(4).unwrap();
        assert_eq!(sq.order().unwrap(), 8);
        assert_eq!(sq.schlafli().unwrap(), vec![4]);
        let c = cube_group().unwrap();
        assert_eq!(c.order().unwrap(), 48);
        assert_eq!(c.schlafli().unwrap(), vec![4, 3]);
        assert!(c.is_string_c_group().unwrap());
        assert_eq!(polygon_group(7).unwrap().order().unwrap(), 14);
    }

    #[test]
    fn specs() {
        assert_eq!(parse_group_spec("torus:2,2").unwrap().order().unwrap(), 64);
        assert_eq!(parse_group_spec("tower:5,5").unwrap().order().unwrap(), 128);
        assert_eq!(parse_group_spec("square").unwrap().rank(), 2);
        assert_eq!(parse_group_spec("power:torus:2,0").unwrap().order().unwrap(), 512);
        assert!(parse_group_spec("torus:2").is_err());
        assert!(parse_group_spec("bogus").is_err());
    }

    #[test]
    fn corpus_respects_bound() {
        let small = regular_corpus(64).unwrap();
        assert!(small.iter().all(|(_, g)| g.order().unwrap() <= 64));
        assert!(small.iter().any(|(l, _)| l == "torus:2,2"));
        assert!(small.len() < regular_corpus(1 << 12).unwrap().len());
    }
}
