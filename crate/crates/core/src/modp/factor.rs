use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::ModPoly;
use super::primes::is_prime;
use crate::arith::IntPoly;
use crate::error::{Error, Result};

/// `unit * Π factor^mult`, factors monic irreducible in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationModP {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(ModPoly, usize)>,
}

impl FactorizationModP {
    pub fn expand(&self) -> ModPoly {
        let mut acc = ModPoly::new(self.p, vec![self.unit]);
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }

    /// Factor degrees with multiplicity, ascending.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.factors.iter().flat_map(|(g, m)| std::iter::repeat_n(g.deg(), *m)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Compact rendering in the style `(x+787)(x+929)(x+1919)^2`.
    pub fn compact(&self) -> String {
        let mut s = String::new();
        if self.unit != 1 {
            s.push_str(&self.unit.to_string());
        }
        for (g, m) in &self.factors {
            s.push('(');
            s.push_str(&compact_poly(g));
            s.push(')');
            if *m > 1 {
                s.push_str(&format!("^{m}"));
            }
        }
        s
    }
}

impl fmt::Display for FactorizationModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.compact(), self.p)
    }
}

fn compact_poly(g: &ModPoly) -> String {
    let mut s = String::new();
    for (i, &c) in g.coeffs().iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        match i {
            0 => s.push_str(&coef),
            1 => s.push_str(&format!("{coef}x")),
            _ => s.push_str(&format!("{coef}x^{i}")),
        }
    }
    s
}

/// Parses the compact form produced by [`FactorizationModP::compact`]
/// (e.g. `(x+4)(x^3+7x^2+1)`); factors are monic with nonnegative
/// coefficients.
pub fn parse_factorization(s: &str, p: u64) -> Result<FactorizationModP> {
    let bad = || Error::Parse(format!("bad factorization {s:?}"));
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = s.as_str();
    let mut unit = 1u64;
    if let Some(i) = rest.find('(') {
        if i > 0 {
            unit = rest[..i].parse().map_err(|_| bad())?;
        }
        rest = &rest[i..];
    } else {
        return Err(bad());
    }
    let mut factors: Vec<(ModPoly, usize)> = Vec::new();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(bad());
        }
        let close = rest.find(')').ok_or_else(bad)?;
        let body = &rest[1..close];
        rest = &rest[close + 1..];
        let mut mult = 1usize;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find('(').unwrap_or(r.len());
            mult = r[..end].parse().map_err(|_| bad())?;
            rest = &r[end..];
        }
        let mut coeffs: Vec<u64> = Vec::new();
        for term in body.split('+') {
            let (c, e) = match term.split_once('x') {
                None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
                Some((c, e)) => {
                    let c = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
                    let e = if e.is_empty() { 1 } else { e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())? };
                    (c, e)
                }
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = (coeffs[e] + c) % p;
        }
        factors.push((ModPoly::new(p, coeffs), mult));
    }
    canonical_sort(&mut factors);
    Ok(FactorizationModP { p, unit: unit % p, factors })
}

fn canonical_sort(factors: &mut [(ModPoly, usize)]) {
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
}

/// Squarefree decomposition of a monic polynomial: `(g_i, i)` with
/// `f = Π g_i^i`, each `g_i` squarefree.
pub fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let f = f.monic();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        let root = c.deflate();
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Matrix of `x^(i p) mod m` for `i < deg m`; applying it raises a reduced
/// polynomial to the `p`-th power.
pub struct Frobenius {
    modulus: ModPoly,
    rows: Vec<ModPoly>,
}

impl Frobenius {
    pub fn new(m: &ModPoly) -> Self {
        let p = m.modulus();
        let n = m.deg();
        let xp = ModPoly::x(p).powmod_u64(p, m);
        let mut rows = Vec::with_capacity(n);
        let mut cur = ModPoly::one(p).rem(m);
        for _ in 0..n {
            rows.push(cur.clone());
            cur = cur.mulmod(&xp, m);
        }
        Frobenius { modulus: m.clone(), rows }
    }

    /// `a^p mod modulus` for `a` reduced modulo the modulus.
    pub fn apply(&self, a: &ModPoly) -> ModPoly {
        let p = self.modulus.modulus();
        let n = self.modulus.deg();
        let mut acc = vec![0u128; n];
        let small = p < (1 << 31);
        let mut out = vec![0u64; n];
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in self.rows[i].coeffs().iter().enumerate() {
                if small {
                    acc[j] += (c * r) as u128;
                } else {
                    out[j] = super::primes::addmod(out[j], super::primes::mulmod(c, r, p), p);
                }
            }
        }
        if small {
            ModPoly::new(p, acc.into_iter().map(|v| (v % p as u128) as u64).collect())
        } else {
            ModPoly::new(p, out)
        }
    }

    /// `a^p mod g` for a divisor `g` of the modulus.
    pub fn apply_mod(&self, a: &ModPoly, g: &ModPoly) -> ModPoly {
        self.apply(a).rem(g)
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    if f.deg() == 0 {
        return Vec::new();
    }
    distinct_degree_with(f, &Frobenius::new(f))
}

fn seed_for(f: &ModPoly) -> u64 {
    // FNV-1a over the modulus and coefficients
    let mut h: u64 = 0xcbf29ce484222325;
    for v in std::iter::once(f.modulus()).chain(f.coeffs().iter().copied()) {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Splits a squarefree monic product of degree-`d` irreducibles.
pub fn equal_degree(g: &ModPoly, d: usize, frob: &Frobenius) -> Vec<ModPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(g));
    let mut out = Vec::new();
    edf_rec(g, d, frob, &mut rng, &mut out);
    out
}

fn edf_rec(g: &ModPoly, d: usize, frob: &Frobenius, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    let n = g.deg();
    if n == d {
        out.push(g.clone());
        return;
    }
    let p = g.modulus();
    loop {
        let a = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let direct = g.gcd(&a);
        let split = if direct.deg() > 0 && direct.deg() < n {
            direct
        } else if p == 2 {
            // absolute trace to F_2
            let mut t = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = frob.apply_mod(&cur, g);
                t = t.add(&cur);
            }
            g.gcd(&t)
        } else {
            // norm to F_p, then the quadratic character
            let mut norm = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = frob.apply_mod(&cur, g);
                norm = norm.mulmod(&cur, g);
            }
            let b = norm.powmod(&BigUint::from((p - 1) / 2), g);
            g.gcd(&b.sub(&ModPoly::one(p)))
        };
        if split.deg() > 0 && split.deg() < n {
            let other = g.div_rem(&split).0;
            edf_rec(&split, d, frob, rng, out);
            edf_rec(&other.monic(), d, frob, rng, out);
            return;
        }
    }
}

/// Complete factorization of `f mod p`.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> Result<FactorizationModP> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if p >= 1 << 63 {
        return Err(Error::ModulusTooLarge(p.to_string()));
    }
    let fp = ModPoly::from_int(f, p);
    factor_modpoly(&fp)
}

pub fn factor_modpoly(fp: &ModPoly) -> Result<FactorizationModP> {
    let p = fp.modulus();
    if fp.is_zero() {
        return Err(Error::ZeroModP(p));
    }
    let unit = fp.lc();
    let mut factors: Vec<(ModPoly, usize)> = Vec::new();
    for (g, m) in squarefree_decomposition(&fp.monic()) {
        let frob = Frobenius::new(&g);
        for (block, d) in distinct_degree_with(&g, &frob) {
            for h in equal_degree(&block, d, &frob) {
                factors.push((h, m));
            }
        }
    }
    canonical_sort(&mut factors);
    Ok(FactorizationModP { p, unit, factors })
}

fn distinct_degree_with(f: &ModPoly, frob: &Frobenius) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let x = ModPoly::x(p);
    let mut g = f.clone();
    let mut h = x.rem(f);
    let mut d = 1;
    while g.deg() >= 2 * d {
        h = frob.apply(&h);
        let t = g.gcd(&h.rem(&g).sub(&x));
        if t.deg() > 0 {
            g = g.div_rem(&t).0;
            out.push((t, d));
        }
        d += 1;
    }
    if g.deg() > 0 {
        let dg = g.deg();
        out.push((g, dg));
    }
    out
}

/// Degree multiset of `f mod p` when it is squarefree of full degree
/// (no equal-degree splitting needed); `None` otherwise.
pub fn squarefree_degrees(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let fp = ModPoly::from_int(f, p);
    if fp.deg() != f.deg() || fp.deg() == 0 || !fp.is_squarefree() {
        return None;
    }
    let mut v = Vec::new();
    for (block, d) in distinct_degree(&fp.monic()) {
        v.extend(std::iter::repeat_n(d, block.deg() / d));
    }
    v.sort_unstable();
    Some(v)
}

/// Distinct roots of `f` in F_p, ascending.
pub fn roots_mod_p(fp: &ModPoly) -> Vec<u64> {
    let p = fp.modulus();
    if fp.deg() == 0 {
        return Vec::new();
    }
    let f = fp.monic();
    let frob = Frobenius::new(&f);
    let xp = frob.apply(&ModPoly::x(p).rem(&f));
    let lin = f.gcd(&xp.sub(&ModPoly::x(p)));
    if lin.deg() == 0 {
        return Vec::new();
    }
    let mut r: Vec<u64> = equal_degree(&lin, 1, &frob).into_iter().map(|g| (p - g.coeff(0)) % p).collect();
    r.sort_unstable();
    r
}

/// Whether `f` has at least one root in F_p.
pub fn has_root_mod_p(fp: &ModPoly) -> bool {
    let p = fp.modulus();
    if fp.is_zero() {
        return true;
    }
    if fp.deg() == 0 {
        return false;
    }
    let f = fp.monic();
    let xp = ModPoly::x(p).powmod_u64(p, &f);
    f.gcd(&xp.sub(&ModPoly::x(p))).deg() > 0
}
