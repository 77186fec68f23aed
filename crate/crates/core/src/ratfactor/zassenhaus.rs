use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::hensel::hensel_lift;
use crate::arith::IntPoly;
use crate::error::Result;
use crate::modp::primes::primes_from;
use crate::modp::{factor_mod_p, squarefree_degrees, ModPoly};

/// Recombination limit on the number of local factors combined at once.
pub const DEFAULT_SUBSET_CAP: usize = 12;

/// Number of good primes consulted by the degree sieve.
pub const SIEVE_PRIMES: usize = 6;

const GOOD_PRIME_LIMIT: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationQ {
    /// Signed content.
    pub content: String,
    /// Primitive irreducible factors with positive leading coefficient.
    pub factors: Vec<(IntPoly, usize)>,
    /// False when the subset cap cut the recombination short; the listed
    /// factors then multiply to the input but some may be reducible.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum IrreducibilityProof {
    /// Degree 1, or a single irreducible factor modulo a prime not
    /// dividing the leading coefficient.
    Trivial { prime: Option<u64> },
    /// The achievable factor degrees modulo these primes intersect in {0, n}.
    DegreeSieve { primes: Vec<(u64, Vec<usize>)> },
    /// Exhaustive recombination of the local factors found no divisor.
    Recombination { prime: u64, precision: u32, local_factors: usize, max_subset: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible { proof: IrreducibilityProof },
    Reducible { factor: IntPoly },
    Inconclusive { reason: String },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

/// Achievable subset degree sums as a bitmask vector indexed by degree.
fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

/// Good primes for a squarefree `f`: `p ∤ lc(f)` and `f mod p` squarefree,
/// i.e. `p ∤ lc(f) disc(f)`. Returns `(p, degree multiset)` pairs.
pub fn good_primes(f: &IntPoly, count: usize) -> Vec<(u64, Vec<usize>)> {
    let mut out = Vec::with_capacity(count);
    for p in primes_from(2) {
        if out.len() >= count || p > GOOD_PRIME_LIMIT {
            break;
        }
        if let Some(d) = squarefree_degrees(f, p) {
            out.push((p, d));
        }
    }
    out
}

pub struct DegreeSieve {
    pub primes: Vec<(u64, Vec<usize>)>,
    /// `allowed[d]` iff degree `d` survives every prime.
    pub allowed: Vec<bool>,
}

pub fn degree_sieve(f: &IntPoly, count: usize) -> DegreeSieve {
    let n = f.deg();
    let primes = good_primes(f, count);
    let mut allowed = vec![true; n + 1];
    for (_, d) in &primes {
        let s = subset_sums(d, n);
        for (a, b) in allowed.iter_mut().zip(s) {
            *a &= b;
        }
    }
    DegreeSieve { primes, allowed }
}

fn mignotte_bound(f: &IntPoly, d: usize) -> BigInt {
    let binom = crate::arith::series::binomial_rows(d)[d][d / 2].clone();
    binom * f.l2_norm_ceil() * f.lc().abs()
}

enum Recombined {
    Done(Vec<IntPoly>),
    Capped(Vec<IntPoly>),
}

/// Zassenhaus recombination for a primitive squarefree `f` with positive
/// leading coefficient.
fn recombine(f: &IntPoly, cap: usize, allowed: &[bool], p: u64) -> Result<(Recombined, u32, usize)> {
    let fac = factor_mod_p(f, p)?;
    let blocks: Vec<ModPoly> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
    let r = blocks.len();
    if r == 1 {
        return Ok((Recombined::Done(vec![f.clone()]), 1, 1));
    }
    let bound = mignotte_bound(f, f.deg()) * 2;
    let bp = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = bp.clone();
    while pk <= bound {
        pk *= &bp;
        k += 1;
    }
    let lifted = hensel_lift(f, &blocks, p, k)?;
    let m = lifted.modulus.clone();
    let mut local: Vec<IntPoly> = lifted.factors;
    let mut g = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    let mut capped = false;
    while 2 * s <= local.len() {
        if s > cap {
            capped = true;
            break;
        }
        let mut hit = None;
        for_each_subset(local.len(), s, |idx| {
            let deg: usize = idx.iter().map(|&i| local[i].deg()).sum();
            if deg >= allowed.len() || !allowed[deg] {
                return false;
            }
            let lc = g.lc();
            // constant-term test before the full product
            let c0 = idx.iter().fold(lc.clone(), |acc, &i| (acc * local[i].coeff(0)) % &m);
            let c0 = IntPoly::constant(c0).symmetric_rem(&m).coeff(0);
            let g0 = &g.coeff(0) * &lc;
            if !c0.is_zero() && !(&g0 % &c0).is_zero() {
                return false;
            }
            if c0.is_zero() && !g0.is_zero() {
                return false;
            }
            let prod = idx.iter().fold(IntPoly::constant(lc), |acc, &i| (&acc * &local[i]).rem_coeffs(&m));
            let cand = prod.symmetric_rem(&m).primitive_part();
            if let Ok(q) = g.div_exact(&cand) {
                hit = Some((idx.to_vec(), cand, q));
                return true;
            }
            false
        });
        match hit {
            Some((idx, cand, q)) => {
                found.push(cand);
                g = q;
                let mut i = 0;
                local.retain(|_| {
                    let keep = !idx.contains(&i);
                    i += 1;
                    keep
                });
            }
            None => s += 1,
        }
    }
    found.push(g);
    Ok((if capped { Recombined::Capped(found) } else { Recombined::Done(found) }, k, r))
}

/// Calls `f` on each `s`-subset of `0..n` in lexicographic order until it
/// returns true.
fn for_each_subset(n: usize, s: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if s > n {
        return;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = s;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - s + i {
                idx[i] += 1;
                for j in i + 1..s {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Squarefree decomposition over Q of a primitive polynomial (Yun).
fn squarefree_over_q(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    let d = f.derivative();
    let a0 = f.gcd(&d);
    if a0.deg() == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = d.div_exact(&a0).expect("gcd divides");
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&dd);
        if a.deg() > 0 {
            out.push((a.primitive_part(), i));
        }
        if b.deg() == a.deg() {
            break;
        }
        b = b.div_exact(&a).expect("gcd divides");
        c = dd.div_exact(&a).expect("gcd divides");
        dd = &c - &b.derivative();
        i += 1;
        if b.deg() == 0 {
            break;
        }
    }
    out
}

fn normalize_sign(f: &IntPoly) -> IntPoly {
    if f.lc().is_negative() {
        -f
    } else {
        f.clone()
    }
}

/// Picks the sieve prime with the fewest local factors.
fn lifting_prime(sieve: &DegreeSieve) -> Option<u64> {
    sieve.primes.iter().min_by_key(|(p, d)| (d.len(), *p)).map(|(p, _)| *p)
}

/// Factors a nonzero integer polynomial over Q.
pub fn factor_over_q(f: &IntPoly) -> Result<FactorizationQ> {
    factor_over_q_capped(f, DEFAULT_SUBSET_CAP)
}

pub fn factor_over_q_capped(f: &IntPoly, cap: usize) -> Result<FactorizationQ> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let prim = normalize_sign(&f.primitive_part());
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    let mut complete = true;
    if prim.deg() == 0 {
        return Ok(FactorizationQ { content: content.to_string(), factors, complete });
    }
    let parts = if good_primes(&prim, 1).is_empty() { squarefree_over_q(&prim) } else { vec![(prim.clone(), 1)] };
    for (g, m) in parts {
        let (fs, done) = factor_squarefree(&g, cap)?;
        complete &= done;
        factors.extend(fs.into_iter().map(|h| (h, m)));
    }
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(FactorizationQ { content: content.to_string(), factors, complete })
}

fn factor_squarefree(g: &IntPoly, cap: usize) -> Result<(Vec<IntPoly>, bool)> {
    if g.deg() <= 1 {
        return Ok((vec![g.clone()], true));
    }
    // A zero root is split off directly.
    if g.coeff(0).is_zero() {
        let x = IntPoly::x();
        let q = g.div_exact(&x)?;
        let (mut rest, done) = factor_squarefree(&q, cap)?;
        rest.push(x);
        return Ok((rest, done));
    }
    let sieve = degree_sieve(g, SIEVE_PRIMES);
    let n = g.deg();
    if (1..n).all(|d| !sieve.allowed[d]) && !sieve.primes.is_empty() {
        return Ok((vec![g.clone()], true));
    }
    let p = lifting_prime(&sieve).expect("a good prime exists for a squarefree polynomial");
    let (res, _, _) = recombine(g, cap, &sieve.allowed, p)?;
    Ok(match res {
        Recombined::Done(v) => (v.into_iter().map(|h| normalize_sign(&h)).collect(), true),
        Recombined::Capped(v) => (v.into_iter().map(|h| normalize_sign(&h)).collect(), false),
    })
}

/// Irreducibility over Q with a replayable proof.
pub fn is_irreducible(f: &IntPoly) -> Result<Irreducibility> {
    is_irreducible_capped(f, DEFAULT_SUBSET_CAP)
}

pub fn is_irreducible_capped(f: &IntPoly, cap: usize) -> Result<Irreducibility> {
    let n = f.deg();
    if f.is_zero() || n == 0 {
        return Ok(Irreducibility::Inconclusive { reason: "constant polynomial".into() });
    }
    let g = normalize_sign(&f.primitive_part());
    if n == 1 {
        return Ok(Irreducibility::Irreducible { proof: IrreducibilityProof::Trivial { prime: None } });
    }
    let sieve = degree_sieve(&g, SIEVE_PRIMES);
    if sieve.primes.is_empty() {
        let h = g.gcd(&g.derivative());
        if h.deg() > 0 {
            return Ok(Irreducibility::Reducible { factor: normalize_sign(&h.primitive_part()) });
        }
        return Ok(Irreducibility::Inconclusive { reason: format!("no good prime below {GOOD_PRIME_LIMIT}") });
    }
    if let Some((p, _)) = sieve.primes.iter().find(|(_, d)| d.len() == 1) {
        return Ok(Irreducibility::Irreducible { proof: IrreducibilityProof::Trivial { prime: Some(*p) } });
    }
    if (1..n).all(|d| !sieve.allowed[d]) {
        return Ok(Irreducibility::Irreducible { proof: IrreducibilityProof::DegreeSieve { primes: sieve.primes } });
    }
    if g.coeff(0).is_zero() {
        return Ok(Irreducibility::Reducible { factor: IntPoly::x() });
    }
    let p = lifting_prime(&sieve).expect("nonempty");
    let (res, k, local) = recombine(&g, cap, &sieve.allowed, p)?;
    Ok(match res {
        Recombined::Done(v) if v.len() == 1 => Irreducibility::Irreducible {
            proof: IrreducibilityProof::Recombination { prime: p, precision: k, local_factors: local, max_subset: local / 2 },
        },
        Recombined::Done(v) | Recombined::Capped(v) if v.len() > 1 => {
            let mut v: Vec<IntPoly> = v.into_iter().map(|h| normalize_sign(&h)).collect();
            v.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
            Irreducibility::Reducible { factor: v.swap_remove(0) }
        }
        _ => Irreducibility::Inconclusive { reason: format!("recombination exceeded subsets of size {cap}") },
    })
}

/// An irreducible factor of degree exactly `d`, if one exists. Only subsets
/// of local factors with degree sum `d` are tried, using the sieve prime
/// that minimises the number of such subsets.
pub fn target_degree_factor(f: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    let n = f.deg();
    assert!(d >= 1 && d <= n, "target degree out of range");
    let g = normalize_sign(&f.primitive_part());
    if d == n {
        return Ok(if is_irreducible(&g)?.is_irreducible() { Some(g) } else { None });
    }
    let sieve = degree_sieve(&g, SIEVE_PRIMES);
    if sieve.primes.is_empty() {
        // not squarefree: work on the squarefree part
        let sq = g.div_exact(&g.gcd(&g.derivative()))?;
        if sq.deg() < d {
            return Ok(None);
        }
        return target_degree_factor(&sq, d);
    }
    if !sieve.allowed[d] {
        return Ok(None);
    }
    let count = |degs: &[usize]| -> u128 {
        // number of sub-multisets (as index subsets) with sum d
        let mut ways = vec![0u128; d + 1];
        ways[0] = 1;
        for &x in degs {
            for s in (x..=d).rev() {
                ways[s] = ways[s].saturating_add(ways[s - x]);
            }
        }
        ways[d]
    };
    let (p, _) = sieve.primes.iter().min_by_key(|(p, degs)| (count(degs), *p)).expect("nonempty").clone();
    let fac = factor_mod_p(&g, p)?;
    let blocks: Vec<ModPoly> = fac.factors.iter().map(|(h, _)| h.clone()).collect();
    let bound = mignotte_bound(&g, d) * 2;
    let bp = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = bp.clone();
    while pk <= bound {
        pk *= &bp;
        k += 1;
    }
    let lifted = hensel_lift(&g, &blocks, p, k)?;
    let m = lifted.modulus.clone();
    let local = lifted.factors;
    let mut result = None;
    let mut err = None;
    let degs: Vec<usize> = local.iter().map(|h| h.deg()).collect();
    subsets_with_sum(&degs, d, |idx| {
        let lc = g.lc();
        let prod = idx.iter().fold(IntPoly::constant(lc), |acc, &i| (&acc * &local[i]).rem_coeffs(&m));
        let cand = prod.symmetric_rem(&m).primitive_part();
        if cand.deg() != d || g.div_exact(&cand).is_err() {
            return false;
        }
        match is_irreducible(&cand) {
            Ok(v) if v.is_irreducible() => {
                result = Some(normalize_sign(&cand));
                true
            }
            Ok(_) => false,
            Err(e) => {
                err = Some(e);
                true
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(result)
}

/// Index subsets (lexicographic) whose degrees sum to `d`.
fn subsets_with_sum(degs: &[usize], d: usize, mut f: impl FnMut(&[usize]) -> bool) {
    fn rec(degs: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if left == 0 {
            return f(cur);
        }
        for i in start..degs.len() {
            if degs[i] <= left {
                cur.push(i);
                if rec(degs, i + 1, left - degs[i], cur, f) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    rec(degs, 0, d, &mut Vec::new(), &mut f);
}
