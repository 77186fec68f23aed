use serde::{Deserialize, Serialize};

use super::group::GroupHandle;
use super::perm::{Perm, MAX_DEGREE};
use crate::error::{Error, Result};

/// Recipe for a subgroup of `S_n`. Points are 1-based, as in case files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubgroupSpec {
    Symmetric { n: usize },
    Alternating { n: usize },
    /// Pointwise stabilizer.
    PointStabilizer { n: usize, points: Vec<usize> },
    /// Setwise stabilizer, `Sym(set) x Sym(complement)`.
    SetStabilizer { n: usize, set: Vec<usize> },
    /// Stabilizer of an unordered partition; equal-size blocks may be swapped.
    PartitionStabilizer { n: usize, blocks: Vec<Vec<usize>> },
    Sylow { parent: Box<SubgroupSpec>, p: u64 },
    /// Normalizer in `parent` of the cyclic group generated by `generator`.
    Normalizer { parent: Box<SubgroupSpec>, generator: String },
    /// `AGL(3,2)` on 8 points; point `i` is the vector of the low three bits of `i`.
    Agl32,
    /// `GL(3,2)` on the 7 nonzero vectors; point `i` is the vector `i + 1`.
    Gl32,
    IntersectAlternating { group: Box<SubgroupSpec> },
    Generators { n: usize, generators: Vec<String> },
}

impl SubgroupSpec {
    pub fn degree(&self) -> usize {
        match self {
            SubgroupSpec::Symmetric { n }
            | SubgroupSpec::Alternating { n }
            | SubgroupSpec::PointStabilizer { n, .. }
            | SubgroupSpec::SetStabilizer { n, .. }
            | SubgroupSpec::PartitionStabilizer { n, .. }
            | SubgroupSpec::Generators { n, .. } => *n,
            SubgroupSpec::Sylow { parent, .. } | SubgroupSpec::Normalizer { parent, .. } => parent.degree(),
            SubgroupSpec::Agl32 => 8,
            SubgroupSpec::Gl32 => 7,
            SubgroupSpec::IntersectAlternating { group } => group.degree(),
        }
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::InvalidSpec(format!("degree {n} outside 1..={MAX_DEGREE}")));
    }
    Ok(())
}

/// Converts 1-based labels to 0-based, rejecting repeats and out-of-range points.
fn points0(n: usize, pts: &[usize], used: &mut [bool]) -> Result<Vec<usize>> {
    pts.iter()
        .map(|&p| {
            if p == 0 || p > n || used[p - 1] {
                return Err(Error::InvalidSpec(format!("bad or repeated point {p} on {n} points")));
            }
            used[p - 1] = true;
            Ok(p - 1)
        })
        .collect()
}

/// Generators of the full symmetric group on `pts`.
fn sym_on(n: usize, pts: &[usize]) -> Vec<Perm> {
    let mut g = Vec::new();
    if pts.len() >= 2 {
        g.push(Perm::from_cycles(n, &[&pts[..2]]).expect("transposition"));
    }
    if pts.len() >= 3 {
        g.push(Perm::from_cycles(n, &[pts]).expect("cycle"));
    }
    g
}

fn bit_linear_map(v: usize, j: usize, k: usize) -> usize {
    v ^ (((v >> k) & 1) << j)
}

fn agl32() -> Vec<Perm> {
    let mut gens = Vec::new();
    for t in [1usize, 2, 4] {
        let img: Vec<usize> = (0..8).map(|i| i ^ t).collect();
        gens.push(Perm::from_images(&img).expect("translation"));
    }
    for (j, k) in [(0, 1), (1, 2), (2, 0)] {
        let img: Vec<usize> = (0..8).map(|i| bit_linear_map(i, j, k)).collect();
        gens.push(Perm::from_images(&img).expect("transvection"));
    }
    gens
}

fn gl32() -> Vec<Perm> {
    [(0, 1), (1, 2), (2, 0)]
        .iter()
        .map(|&(j, k)| {
            let img: Vec<usize> = (0..7).map(|i| bit_linear_map(i + 1, j, k) - 1).collect();
            Perm::from_images(&img).expect("transvection")
        })
        .collect()
}

fn sylow(parent: &GroupHandle, p: u64) -> Result<GroupHandle> {
    if !crate::modp::is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    let mut target = 1u64;
    let mut m = parent.order();
    while m.is_multiple_of(p) {
        m /= p;
        target *= p;
    }
    let is_p_power = |mut k: u64| {
        while k.is_multiple_of(p) {
            k /= p;
        }
        k == 1
    };
    let candidates: Vec<Perm> =
        parent.elements().into_iter().filter(|g| !g.is_identity() && is_p_power(g.order() as u64)).collect();
    let mut cur = GroupHandle::trivial(parent.degree());
    loop {
        let before = cur.order();
        for g in &candidates {
            if cur.order() == target {
                return Ok(cur);
            }
            if cur.contains(g) {
                continue;
            }
            let mut gens = cur.generators().to_vec();
            gens.push(*g);
            let next = GroupHandle::new(parent.degree(), gens)?;
            if is_p_power(next.order()) {
                cur = next;
            }
        }
        if cur.order() == target {
            return Ok(cur);
        }
        if cur.order() == before {
            return Err(Error::InvalidSpec(format!("Sylow {p}-subgroup search stalled at order {before}")));
        }
    }
}

pub fn build_group(spec: &SubgroupSpec) -> Result<GroupHandle> {
    let n = spec.degree();
    check_degree(n)?;
    match spec {
        SubgroupSpec::Symmetric { n } => Ok(GroupHandle::symmetric(*n)),
        SubgroupSpec::Alternating { n } => Ok(GroupHandle::alternating(*n)),
        SubgroupSpec::PointStabilizer { n, points } => {
            let mut used = vec![false; *n];
            points0(*n, points, &mut used)?;
            let rest: Vec<usize> = (0..*n).filter(|&i| !used[i]).collect();
            GroupHandle::new(*n, sym_on(*n, &rest))
        }
        SubgroupSpec::SetStabilizer { n, set } => {
            let mut used = vec![false; *n];
            let inside = points0(*n, set, &mut used)?;
            let rest: Vec<usize> = (0..*n).filter(|&i| !used[i]).collect();
            let mut gens = sym_on(*n, &inside);
            gens.extend(sym_on(*n, &rest));
            GroupHandle::new(*n, gens)
        }
        SubgroupSpec::PartitionStabilizer { n, blocks } => {
            let mut used = vec![false; *n];
            let bl: Vec<Vec<usize>> = blocks.iter().map(|b| points0(*n, b, &mut used)).collect::<Result<_>>()?;
            if used.iter().any(|u| !u) || bl.iter().any(|b| b.is_empty()) {
                return Err(Error::InvalidSpec(format!("blocks {blocks:?} do not partition {n} points")));
            }
            let mut gens: Vec<Perm> = bl.iter().flat_map(|b| sym_on(*n, b)).collect();
            for i in 0..bl.len() {
                for j in i + 1..bl.len() {
                    if bl[i].len() == bl[j].len() {
                        let mut img: Vec<usize> = (0..*n).collect();
                        for (&a, &b) in bl[i].iter().zip(&bl[j]) {
                            img[a] = b;
                            img[b] = a;
                        }
                        gens.push(Perm::from_images(&img)?);
                    }
                }
            }
            GroupHandle::new(*n, gens)
        }
        SubgroupSpec::Sylow { parent, p } => sylow(&build_group(parent)?, *p),
        SubgroupSpec::Normalizer { parent, generator } => {
            let par = build_group(parent)?;
            let g = Perm::parse(generator, n)?;
            if !par.contains(&g) {
                return Err(Error::InvalidSpec(format!("{generator} is not in the parent group")));
            }
            Ok(GroupHandle::new(n, vec![g])?.normalizer_in(&par))
        }
        SubgroupSpec::Agl32 => GroupHandle::new(8, agl32()),
        SubgroupSpec::Gl32 => GroupHandle::new(7, gl32()),
        SubgroupSpec::IntersectAlternating { group } => {
            Ok(build_group(group)?.intersection(&GroupHandle::alternating(n)))
        }
        SubgroupSpec::Generators { n, generators } => {
            let gens = generators.iter().map(|s| Perm::parse(s, *n)).collect::<Result<_>>()?;
            GroupHandle::new(*n, gens)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &SubgroupSpec) -> u64 {
        build_group(s).unwrap().order()
    }

    #[test]
    fn orders_of_constructions() {
        assert_eq!(order(&SubgroupSpec::Alternating { n: 8 }), 20160);
        let n5 = SubgroupSpec::Normalizer {
            parent: Box::new(SubgroupSpec::Symmetric { n: 5 }),
            generator: "(1,2,3,4,5)".into(),
        };
        assert_eq!(order(&n5), 20);
        let part = SubgroupSpec::PartitionStabilizer { n: 6, blocks: vec![vec![1, 2, 3], vec![4, 5, 6]] };
        assert_eq!(order(&part), 72);
        let agl = build_group(&SubgroupSpec::Agl32).unwrap();
        assert_eq!(agl.order(), 1344);
        assert!(agl.is_even());
        assert_eq!(agl.index_in(&GroupHandle::alternating(8)), 15);
        let gl = build_group(&SubgroupSpec::Gl32).unwrap();
        assert_eq!(gl.order(), 168);
        assert!(gl.is_even());
        let syl = SubgroupSpec::Sylow { parent: Box::new(SubgroupSpec::Symmetric { n: 4 }), p: 2 };
        assert_eq!(order(&syl), 8);
        let syl7 = SubgroupSpec::Sylow { parent: Box::new(SubgroupSpec::Alternating { n: 8 }), p: 2 };
        assert_eq!(order(&syl7), 64);
        let u2 = SubgroupSpec::IntersectAlternating {
            group: Box::new(SubgroupSpec::SetStabilizer { n: 8, set: vec![1, 2, 3] }),
        };
        assert_eq!(order(&u2), 360);
        assert_eq!(order(&SubgroupSpec::PointStabilizer { n: 6, points: vec![6] }), 120);
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = SubgroupSpec::PartitionStabilizer { n: 6, blocks: vec![vec![1, 2, 3], vec![4, 5]] };
        assert!(build_group(&bad).is_err());
        assert!(build_group(&SubgroupSpec::SetStabilizer { n: 4, set: vec![1, 1] }).is_err());
        assert!(build_group(&SubgroupSpec::Symmetric { n: 9 }).is_err());
        let notin = SubgroupSpec::Normalizer {
            parent: Box::new(SubgroupSpec::Alternating { n: 4 }),
            generator: "(1,2)".into(),
        };
        assert!(build_group(&notin).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = SubgroupSpec::IntersectAlternating {
            group: Box::new(SubgroupSpec::SetStabilizer { n: 7, set: vec![1, 2] }),
        };
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<SubgroupSpec>(&j).unwrap(), s);
    }
}
