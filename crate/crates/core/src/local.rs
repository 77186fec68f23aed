//! Tame local analysis at ramified primes: factor shapes over `Q_p` and the
//! decomposition groups compatible with them.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::newton::{reduce_perfect_power, valuation};
use crate::arith::{discriminant, IntPoly};
use crate::error::{Error, Result};
use crate::galois::GroupName;
use crate::modp::{factor_mod_p, is_prime_big};
use crate::perm::{conjugate_containment, factorial, GroupHandle, Perm};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Primes dividing `disc(f)` with their valuations, ascending.
pub fn ramified_primes(f: &IntPoly) -> Result<Vec<(u64, u32)>> {
    let d = discriminant(f)?;
    if d.is_zero() {
        return Err(Error::Domain("discriminant is zero".into()));
    }
    let mut m = d.abs();
    let mut out = Vec::new();
    let mut q = 2u64;
    while q <= TRIAL_LIMIT && BigInt::from(q) * BigInt::from(q) <= m {
        let bq = BigInt::from(q);
        if (&m % &bq).is_zero() {
            let v = valuation(m.clone(), &bq) as u32;
            m /= num_traits::pow(bq, v as usize);
            out.push((q, v));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let r = reduce_perfect_power(&m);
        if !is_prime_big(&r) {
            return Err(Error::UnfactoredCofactor(m.to_string()));
        }
        let p = r.to_u64().ok_or_else(|| Error::ModulusTooLarge(r.to_string()))?;
        let v = valuation(m, &r) as u32;
        out.push((p, v));
    }
    out.sort_unstable();
    Ok(out)
}

/// An irreducible factor of `f` over `Q_p`, described by its ramification
/// index and residue degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalPiece {
    pub e: usize,
    pub f: usize,
    /// Index of the mod-p factor it reduces to, in canonical factor order.
    pub source: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalShape {
    pub p: u64,
    pub v_disc: u32,
    /// Factorization of `f mod p` the shape refines.
    pub mod_p: String,
    pub pieces: Vec<LocalPiece>,
}

impl LocalShape {
    pub fn degree(&self) -> usize {
        self.pieces.iter().map(|x| x.e * x.f).sum()
    }
}

/// Multisets of `(e, k)` with `sum e*k = m`, each listed non-increasing.
fn ek_partitions(m: usize, max: (usize, usize), acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if m == 0 {
        out.push(acc.clone());
        return;
    }
    for e in (1..=m).rev() {
        for k in (1..=m / e).rev() {
            if (e, k) > max {
                continue;
            }
            acc.push((e, k));
            ek_partitions(m - e * k, (e, k), acc, out);
            acc.pop();
        }
    }
}

/// All tame-consistent shapes of `f` over `Q_p`.
pub fn local_shape(f: &IntPoly, p: u64) -> Result<Vec<LocalShape>> {
    let n = f.deg();
    if p <= n as u64 {
        return Err(Error::WildRamification { p, degree: n });
    }
    let d = discriminant(f)?;
    let bp = BigInt::from(p);
    if d.is_zero() || !(&d % &bp).is_zero() {
        return Err(Error::Domain(format!("{p} does not divide a nonzero discriminant")));
    }
    let v_disc = valuation(d, &bp) as u32;
    let fac = factor_mod_p(f, p)?;
    if fac.expand().deg() != n {
        return Err(Error::Domain(format!("{p} divides the leading coefficient")));
    }
    // options per mod-p factor
    let mut options: Vec<Vec<Vec<LocalPiece>>> = Vec::new();
    for (i, (g, m)) in fac.factors.iter().enumerate() {
        let d0 = g.deg();
        let mut parts = Vec::new();
        ek_partitions(*m, (usize::MAX, usize::MAX), &mut Vec::new(), &mut parts);
        options.push(
            parts
                .into_iter()
                .map(|ps| ps.into_iter().map(|(e, k)| LocalPiece { e, f: k * d0, source: i }).collect())
                .collect(),
        );
    }
    let mut shapes = vec![Vec::<LocalPiece>::new()];
    for opt in &options {
        let mut next = Vec::new();
        for s in &shapes {
            for o in opt {
                let mut t = s.clone();
                t.extend(o.iter().cloned());
                next.push(t);
            }
        }
        shapes = next;
    }
    let mod_p = fac.compact();
    Ok(shapes
        .into_iter()
        .filter(|pieces| {
            pieces.iter().map(|x| (x.e - 1) * x.f).sum::<usize>() == v_disc as usize && pieces.iter().any(|x| x.e >= 2)
        })
        .map(|pieces| LocalShape { p, v_disc, mod_p: mod_p.clone(), pieces })
        .collect())
}

/// A possible decomposition group `<tau, sigma>`, `tau` generating inertia.
#[derive(Clone, Debug)]
pub struct LocalCandidate {
    pub tau: Perm,
    pub sigma: Perm,
    pub group: GroupHandle,
}

impl LocalCandidate {
    pub fn order(&self) -> u64 {
        self.group.order()
    }
}

struct Slots {
    /// Slot sets of the pieces.
    sets: Vec<Vec<usize>>,
    /// For each piece, its inertia orbits.
    orbits: Vec<Vec<Vec<usize>>>,
}

fn layout(shape: &LocalShape) -> Slots {
    let mut next = 0;
    let mut sets = Vec::new();
    let mut orbits = Vec::new();
    for pc in &shape.pieces {
        let set: Vec<usize> = (next..next + pc.e * pc.f).collect();
        orbits.push(set.chunks(pc.e).map(|c| c.to_vec()).collect());
        sets.push(set);
        next += pc.e * pc.f;
    }
    Slots { sets, orbits }
}

/// Whether `sigma` permutes the inertia orbits of every piece in one cycle.
fn cycles_orbits(sigma: &Perm, slots: &Slots, owner: &[usize]) -> bool {
    for (pi, set) in slots.sets.iter().enumerate() {
        if set.iter().any(|&s| owner[sigma.apply(s)] != pi) {
            return false;
        }
        let orbs = &slots.orbits[pi];
        let which = |pt: usize| orbs.iter().position(|o| o.contains(&pt)).expect("slot in piece");
        let mut cur = 0;
        for step in 1..=orbs.len() {
            let img: Vec<usize> = orbs[cur].iter().map(|&s| sigma.apply(s)).collect();
            let nxt = which(img[0]);
            if img.iter().any(|&s| which(s) != nxt) {
                return false;
            }
            cur = nxt;
            if cur == 0 && step < orbs.len() {
                return false;
            }
        }
        if cur != 0 {
            return false;
        }
    }
    true
}

fn element_key(g: &GroupHandle) -> Vec<Perm> {
    g.elements()
}

/// Candidate decomposition groups up to conjugacy in `G`.
pub fn local_candidates(shape: &LocalShape, g: GroupName) -> Result<Vec<LocalCandidate>> {
    let n = shape.degree();
    if n != g.n {
        return Err(Error::Domain(format!("shape of degree {n} does not match {g}")));
    }
    if shape.pieces.iter().any(|x| x.e as u64 >= shape.p) {
        return Err(Error::WildRamification { p: shape.p, degree: n });
    }
    let slots = layout(shape);
    let mut owner = vec![0; n];
    for (pi, set) in slots.sets.iter().enumerate() {
        for &s in set {
            owner[s] = pi;
        }
    }
    let cycles: Vec<&[usize]> =
        slots.orbits.iter().flatten().filter(|o| o.len() > 1).map(|o| o.as_slice()).collect();
    let tau = Perm::from_cycles(n, &cycles)?;
    let big = g.handle();
    if !big.contains(&tau) {
        return Ok(Vec::new());
    }
    let tau_p = tau.pow((shape.p % tau.order() as u64) as i64);
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut raw: Vec<LocalCandidate> = Vec::new();
    for r in 0..factorial(n) {
        let sigma = Perm::unrank(n, r);
        if !big.contains(&sigma) || tau.conj(&sigma) != tau_p || !cycles_orbits(&sigma, &slots, &owner) {
            continue;
        }
        let group = GroupHandle::new(n, vec![tau, sigma])?;
        let mut variants = vec![(tau, sigma, group)];
        if g.is_alternating() && n >= 2 {
            // classes of S_n may split in A_n
            let t = Perm::from_cycles(n, &[&[0, 1]])?;
            let (ct, cs) = (tau.conj(&t), sigma.conj(&t));
            variants.push((ct, cs, GroupHandle::new(n, vec![ct, cs])?));
        }
        for (tau, sigma, group) in variants {
            if seen.insert(element_key(&group)) {
                raw.push(LocalCandidate { tau, sigma, group });
            }
        }
    }
    let mut reps: Vec<LocalCandidate> = Vec::new();
    for c in raw {
        let dup = reps
            .iter()
            .any(|r| r.order() == c.order() && conjugate_containment(&c.group, &r.group, &big).is_some());
        if !dup {
            reps.push(c);
        }
    }
    reps.sort_by_key(|c| (c.order(), c.tau, c.sigma));
    Ok(reps)
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateCoverage {
    pub tau: Perm,
    pub sigma: Perm,
    pub order: u64,
    pub cyclic: bool,
    /// `(i, x)` with `D^x` inside `U_i`.
    pub contained_in: Option<(usize, Perm)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeCoverage {
    pub shape: LocalShape,
    pub candidates: Vec<CandidateCoverage>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCoverageReport {
    pub p: u64,
    pub shapes: Vec<ShapeCoverage>,
    pub all_cyclic: bool,
    pub passed: bool,
}

impl LocalCoverageReport {
    pub fn candidates(&self) -> impl Iterator<Item = &CandidateCoverage> {
        self.shapes.iter().flat_map(|s| s.candidates.iter())
    }
}

pub fn check_local_coverage(
    f: &IntPoly,
    p: u64,
    g: GroupName,
    u1: &GroupHandle,
    u2: &GroupHandle,
) -> Result<LocalCoverageReport> {
    let big = g.handle();
    let mut shapes = Vec::new();
    for shape in local_shape(f, p)? {
        let cands = local_candidates(&shape, g)?;
        let candidates = cands
            .iter()
            .map(|c| {
                let contained_in = conjugate_containment(&c.group, u1, &big)
                    .map(|x| (1, x))
                    .or_else(|| conjugate_containment(&c.group, u2, &big).map(|x| (2, x)));
                CandidateCoverage {
                    tau: c.tau,
                    sigma: c.sigma,
                    order: c.order(),
                    cyclic: c.group.is_cyclic(),
                    contained_in,
                }
            })
            .collect();
        shapes.push(ShapeCoverage { shape, candidates });
    }
    let total: usize = shapes.iter().map(|s| s.candidates.len()).sum();
    if total == 0 {
        return Err(Error::NoCandidates(p));
    }
    let all = || shapes.iter().flat_map(|s| s.candidates.iter());
    let all_cyclic = all().all(|c| c.cyclic);
    let passed = all().all(|c| c.contained_in.is_some());
    Ok(LocalCoverageReport { p, shapes, all_cyclic, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{build_group, SubgroupSpec};

    fn f_s4() -> IntPoly {
        IntPoly::from_i64(&[4, 1, -5, 0, 1])
    }

    #[test]
    fn discriminant_factorization() {
        assert_eq!(ramified_primes(&f_s4()).unwrap(), vec![(2777, 1)]);
        let sq = IntPoly::from_i64(&[4, 0, -4, 0, 1]);
        assert!(ramified_primes(&sq).is_err());
        // disc(x^2 - 12) = 48 = 2^4 * 3
        assert_eq!(ramified_primes(&IntPoly::from_i64(&[-12, 0, 1])).unwrap(), vec![(2, 4), (3, 1)]);
    }

    #[test]
    fn s4_shape_and_candidates() {
        let shapes = local_shape(&f_s4(), 2777).unwrap();
        assert_eq!(shapes.len(), 1);
        let mut ef: Vec<(usize, usize)> = shapes[0].pieces.iter().map(|x| (x.e, x.f)).collect();
        ef.sort_unstable();
        assert_eq!(ef, vec![(1, 1), (1, 1), (2, 1)]);
        let c = local_candidates(&shapes[0], "S4".parse().unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].order(), 2);
        assert!(local_shape(&f_s4(), 3).is_err());
    }

    #[test]
    fn wild_primes_are_refused() {
        let f = IntPoly::from_i64(&[-12, 0, 1]);
        assert!(matches!(local_shape(&f, 2), Err(Error::WildRamification { .. })));
    }

    #[test]
    fn s4_coverage() {
        let u1 = build_group(&SubgroupSpec::PointStabilizer { n: 4, points: vec![1] }).unwrap();
        let u2 =
            build_group(&SubgroupSpec::Sylow { parent: Box::new(SubgroupSpec::Symmetric { n: 4 }), p: 2 }).unwrap();
        let r = check_local_coverage(&f_s4(), 2777, "S4".parse().unwrap(), &u1, &u2).unwrap();
        assert!(r.passed && r.all_cyclic);
    }

    #[test]
    fn partitions_of_blocks() {
        let mut out = Vec::new();
        ek_partitions(3, (usize::MAX, usize::MAX), &mut Vec::new(), &mut out);
        // (3,1) (1,3) (2,1)+(1,1) (1,2)+(1,1) (1,1)x3
        assert_eq!(out.len(), 5);
    }
}
