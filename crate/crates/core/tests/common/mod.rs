//! Property checks shared by the proptest suites and the acceptance harness.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;

use galcover::arith::{
    discriminant, poly_from_power_sums, poly_from_power_sums_int, power_sums, power_sums_int, resultant,
};
use galcover::modp::{factor_mod_p, squarefree_degrees, ModPoly};
use galcover::perm::{build_group, GroupHandle, Perm};
use galcover::pipeline::{shipped_cases, CoveringSpec};
use galcover::ratfactor::{degree_sieve, factor_over_q, hensel_lift};
use galcover::resolvent::{cubic_resolvent, subset_product_resolvent, subset_sum_resolvent};
use galcover::{IntPoly, RatPoly};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn monic(coeffs: &[i64]) -> IntPoly {
    let mut c = coeffs.to_vec();
    c.push(1);
    IntPoly::from_i64(&c)
}

pub fn from_roots(roots: &[i64]) -> IntPoly {
    roots.iter().fold(IntPoly::one(), |acc, &r| &acc * &IntPoly::from_i64(&[-r, 1]))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

pub fn disc_multiplicative(f: &IntPoly, g: &IntPoly) -> Check {
    let r = resultant(f, g).map_err(|e| e.to_string())?;
    let lhs = discriminant(&(f * g)).map_err(|e| e.to_string())?;
    let rhs = discriminant(f).unwrap() * discriminant(g).unwrap() * &r * &r;
    ensure!(lhs == rhs, "disc({f} * {g}) = {lhs}, expected {rhs}");
    Ok(())
}

/// Sum and product resolvents of `prod (x - r)` against explicit subsets.
pub fn resolvents_brute_force(roots: &[i64], k: usize) -> Check {
    let f = from_roots(roots);
    let subs = subsets(roots.len(), k);
    let sums: Vec<i64> = subs.iter().map(|s| s.iter().map(|&i| roots[i]).sum()).collect();
    let prods: Vec<i64> = subs.iter().map(|s| s.iter().map(|&i| roots[i]).product()).collect();
    let got = subset_sum_resolvent(&f, k).map_err(|e| e.to_string())?;
    ensure!(got == from_roots(&sums), "sum resolvent k={k} of roots {roots:?}: {got}");
    let got = subset_product_resolvent(&f, k).map_err(|e| e.to_string())?;
    ensure!(got == from_roots(&prods), "product resolvent k={k} of roots {roots:?}: {got}");
    Ok(())
}

/// Roots of the cubic resolvent are `(y1 + y2)(y3 + y4)` over the three
/// pairings of the depressed roots.
pub fn cubic_matches_pairings(roots: &[i64; 4]) -> Check {
    let f = from_roots(roots);
    let shift = BigRational::new(roots.iter().sum::<i64>().into(), 4.into());
    let y: Vec<BigRational> = roots.iter().map(|&r| BigRational::from_integer(r.into()) - &shift).collect();
    let expected = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)].iter().fold(RatPoly::one(), |acc, &(a, b, c, d)| {
        let w = (&y[a] + &y[b]) * (&y[c] + &y[d]);
        &acc * &RatPoly::new(vec![-w, BigRational::from_integer(1.into())])
    });
    let got = cubic_resolvent(&f).map_err(|e| e.to_string())?;
    ensure!(got == expected, "cubic resolvent of roots {roots:?}: {got}, expected {expected}");
    Ok(())
}

pub fn newton_round_trip_int(f: &IntPoly) -> Check {
    let n = f.deg();
    let p = power_sums_int(f, n).map_err(|e| e.to_string())?;
    let back = poly_from_power_sums_int(&p, n).map_err(|e| e.to_string())?;
    ensure!(back == *f, "{f} came back as {back}");
    Ok(())
}

pub fn newton_round_trip_rat(g: &RatPoly) -> Check {
    let n = g.deg();
    let back = poly_from_power_sums(&power_sums(g, n).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?;
    ensure!(back == *g, "{g} came back as {back}");
    Ok(())
}

/// Lifted factors are monic, reduce to their blocks and multiply to `f`
/// modulo `p^k`. Returns `Ok(false)` when `f` is not squarefree mod `p`.
pub fn hensel_invariants(f: &IntPoly, p: u64, k: u32) -> Result<bool, String> {
    if squarefree_degrees(f, p).is_none() {
        return Ok(false);
    }
    let blocks: Vec<ModPoly> = factor_mod_p(f, p).unwrap().factors.into_iter().map(|(g, _)| g).collect();
    let lifted = hensel_lift(f, &blocks, p, k).map_err(|e| e.to_string())?;
    let m = BigInt::from(p).pow(k);
    ensure!(lifted.modulus == m, "modulus {} for p^k = {m}", lifted.modulus);
    let prod = lifted.factors.iter().fold(IntPoly::one(), |acc, g| (&acc * g).rem_coeffs(&m));
    ensure!(prod == f.rem_coeffs(&m), "lifted factors of {f} multiply to {prod} mod {m}");
    for (g, b) in lifted.factors.iter().zip(&blocks) {
        ensure!(g.is_monic() && ModPoly::from_int(g, p) == b.monic(), "lift {g} does not reduce to its block");
    }
    Ok(true)
}

/// Every degree of a product of true factors survives the mod-p sieve.
pub fn sieve_sound(f: &IntPoly) -> Check {
    let fac = factor_over_q(f).map_err(|e| e.to_string())?;
    ensure!(fac.complete, "factorization of {f} incomplete");
    let degs: Vec<usize> = fac.factors.iter().flat_map(|(g, m)| std::iter::repeat_n(g.deg(), *m)).collect();
    let sieve = degree_sieve(f, 8);
    for mask in 0u32..1 << degs.len() {
        let d: usize = (0..degs.len()).filter(|i| mask >> i & 1 == 1).map(|i| degs[i]).sum();
        ensure!(sieve.allowed[d], "degree {d} of a factor of {f} was sieved out");
    }
    Ok(())
}

fn bfs_closure(g: &GroupHandle) -> HashSet<Vec<u8>> {
    let id = Perm::identity(g.degree());
    let mut seen = HashSet::from([id.images().to_vec()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y = x.mul(s);
            if seen.insert(y.images().to_vec()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Groups appearing in the shipped cases.
pub fn case_groups() -> Vec<GroupHandle> {
    let mut out = Vec::new();
    for c in shipped_cases().unwrap() {
        out.push(c.group.handle());
        let (u1, u2) = c.covering_groups().unwrap();
        out.extend([u1, u2]);
        let specs = match &c.covering {
            CoveringSpec::Direct { u1, u2 } => [u1.clone(), u2.clone()],
            CoveringSpec::Lemma { h, k, .. } => [h.clone(), k.clone()],
        };
        for s in specs.iter().chain([&c.g1.subgroup, &c.g2.subgroup]) {
            out.push(build_group(s).unwrap());
        }
    }
    out
}

/// Stabilizer-chain order against a breadth-first closure, for every case
/// group of order at most `max_order`. Returns the number compared.
pub fn chain_matches_bfs(max_order: u64) -> Result<usize, String> {
    let mut checked = 0;
    for g in case_groups().iter().filter(|g| g.order() <= max_order) {
        let elems = bfs_closure(g);
        ensure!(elems.len() as u64 == g.order(), "order {} vs {} for {:?}", g.order(), elems.len(), g.generator_strings());
        for e in &elems {
            let p = Perm::from_images(&e.iter().map(|&i| i as usize).collect::<Vec<_>>()).unwrap();
            ensure!(g.contains(&p), "{p} missing from chain of {:?}", g.generator_strings());
        }
        checked += 1;
    }
    Ok(checked)
}
