use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::arith::IntPoly;
use crate::error::{Error, Result};
use crate::modp::ModPoly;

/// Factors of `lc(f)^-1 f` modulo `p^k`, each reducing to its block mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedFactorization {
    pub p: u64,
    pub k: u32,
    pub modulus: BigInt,
    /// Monic, coefficients in `[0, p^k)`, in the order of `blocks`.
    pub factors: Vec<IntPoly>,
    pub blocks: Vec<ModPoly>,
}

fn mulm(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    (a * b).rem_coeffs(m)
}

fn divrem_m(a: &IntPoly, h: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let (q, r) = a.div_rem_monic(h);
    (q.rem_coeffs(m), r.rem_coeffs(m))
}

/// One quadratic step: from `f ≡ g h`, `s g + t h ≡ 1 (mod m)` to the same
/// relations modulo `m2` (which must divide `m^2`).
fn step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m2: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let e = (f - &(g * h)).rem_coeffs(m2);
    let (q, r) = divrem_m(&mulm(s, &e, m2), h, m2);
    let g1 = (&(g + &mulm(t, &e, m2)) + &mulm(&q, g, m2)).rem_coeffs(m2);
    let h1 = (h + &r).rem_coeffs(m2);
    let b = (&(&mulm(s, &g1, m2) + &mulm(t, &h1, m2)) - &IntPoly::one()).rem_coeffs(m2);
    let (c, d) = divrem_m(&mulm(s, &b, m2), &h1, m2);
    let s1 = (s - &d).rem_coeffs(m2);
    let t1 = (&(t - &mulm(t, &b, m2)) - &mulm(&c, &g1, m2)).rem_coeffs(m2);
    (g1, h1, s1, t1)
}

fn product_mod_p(blocks: &[ModPoly], p: u64) -> ModPoly {
    blocks.iter().fold(ModPoly::one(p), |acc, b| acc.mul(b))
}

fn lift_tree(f: &IntPoly, blocks: &[ModPoly], p: u64, k: u32, out: &mut Vec<IntPoly>) -> Result<()> {
    let bp = BigInt::from(p);
    let big_m = num_traits::pow(bp.clone(), k as usize);
    if blocks.len() == 1 {
        out.push(f.rem_coeffs(&big_m));
        return Ok(());
    }
    let mid = blocks.len() / 2;
    let g0 = product_mod_p(&blocks[..mid], p);
    let h0 = product_mod_p(&blocks[mid..], p);
    let (one, s0, t0) = g0.xgcd(&h0);
    if !one.is_one() {
        return Err(Error::Lifting(format!("blocks are not coprime modulo {p}")));
    }
    let (mut g, mut h) = (g0.to_int(), h0.to_int());
    let (mut s, mut t) = (s0.to_int(), t0.to_int());
    let mut j = 1u32;
    while j < k {
        let j2 = (2 * j).min(k);
        let m2 = num_traits::pow(bp.clone(), j2 as usize);
        (g, h, s, t) = step(f, &g, &h, &s, &t, &m2);
        j = j2;
    }
    lift_tree(&g, &blocks[..mid], p, k, out)?;
    lift_tree(&h, &blocks[mid..], p, k, out)
}

/// Lifts a coprime block factorization of `f mod p` to precision `p^k`.
/// Blocks are monic; their product must equal `f mod p` made monic.
pub fn hensel_lift(f: &IntPoly, blocks: &[ModPoly], p: u64, k: u32) -> Result<LiftedFactorization> {
    if k == 0 || blocks.is_empty() {
        return Err(Error::Lifting("need k >= 1 and at least one block".into()));
    }
    let fp = ModPoly::from_int(f, p);
    if fp.deg() != f.deg() {
        return Err(Error::Lifting(format!("{p} divides the leading coefficient")));
    }
    if product_mod_p(blocks, p) != fp.monic() || blocks.iter().any(|b| b.lc() != 1) {
        return Err(Error::Lifting("blocks do not multiply to f mod p".into()));
    }
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    let lc_inv =
        f.lc().mod_floor(&modulus).modinv(&modulus).ok_or_else(|| Error::Lifting("leading coefficient not invertible".into()))?;
    let monic = f.scalar_mul(&lc_inv).rem_coeffs(&modulus);
    let mut factors = Vec::with_capacity(blocks.len());
    lift_tree(&monic, blocks, p, k, &mut factors)?;
    debug_assert!(factors.iter().all(|g| g.lc().is_one()));
    Ok(LiftedFactorization { p, k, modulus, factors, blocks: blocks.to_vec() })
}
