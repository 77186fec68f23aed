use std::fmt;

use num_bigint::BigInt;

use super::primes::{addmod, invmod, mulmod, reduce, submod};
use crate::arith::IntPoly;

/// Polynomial over F_p, residues lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|c| reduce(c, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        self.scalar_mul(inv)
    }

    pub fn scalar_mul(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect())
    }

    /// Symmetric integer lift with coefficients in `(-p/2, p/2]`.
    pub fn to_int_symmetric(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|&c| if c > half { BigInt::from(c) - BigInt::from(self.p) } else { BigInt::from(c) })
                .collect(),
        )
    }

    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = addmod(mulmod(acc, x, self.p), c, self.p);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p)).collect(),
        )
    }

    pub fn add(&self, o: &ModPoly) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| addmod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn sub(&self, o: &ModPoly) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(self.p, (0..n).map(|i| submod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn mul(&self, o: &ModPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        if p < (1 << 31) {
            let mut acc = vec![0u128; n];
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.coeffs.iter().enumerate() {
                    acc[i + j] += (a * b) as u128;
                }
            }
            return Self::new(p, acc.into_iter().map(|v| (v % p as u128) as u64).collect());
        }
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = addmod(out[i + j], mulmod(a, b, p), p);
            }
        }
        Self::new(p, out)
    }

    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = invmod(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mulmod(r[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for j in 0..=dd {
                r[i + j] = submod(r[i + j], mulmod(c, d.coeffs[j], p), p);
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` the monic gcd.
    pub fn xgcd(&self, o: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lc(), p);
        (r0.scalar_mul(inv), s0.scalar_mul(inv), t0.scalar_mul(inv))
    }

    pub fn mulmod(&self, o: &ModPoly, m: &ModPoly) -> ModPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &num_bigint::BigUint, m: &ModPoly) -> ModPoly {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mulmod(&result, m);
            if e.bit(i) {
                result = result.mulmod(&base, m);
            }
        }
        result
    }

    pub fn powmod_u64(&self, e: u64, m: &ModPoly) -> ModPoly {
        self.powmod(&num_bigint::BigUint::from(e), m)
    }

    pub fn pow(&self, e: usize) -> ModPoly {
        let mut r = Self::one(self.p);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// For `self = g(x^p)` returns the `p`-th root `g(x)`; over F_p
    /// coefficients are their own `p`-th powers.
    pub(crate) fn deflate(&self) -> ModPoly {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Display for ModPoly {
    /// Factor-style rendering used in reports, e.g. `x^3 + 7*x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_p() {
        let p = 7;
        let a = ModPoly::new(p, vec![1, 1]);
        let b = ModPoly::new(p, vec![6, 1]);
        assert_eq!(a.mul(&b), ModPoly::new(p, vec![6, 0, 1]));
        let (q, r) = ModPoly::new(p, vec![6, 0, 1]).div_rem(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.gcd(&a.mul(&b)), a);
        assert_eq!(a.to_string(), "x + 1");
    }

    #[test]
    fn large_modulus_multiplication() {
        let p = (1u64 << 61) - 1;
        let a = ModPoly::new(p, vec![p - 1, p - 2]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeffs(), &[1, 4, 4]);
    }

    #[test]
    fn fermat_for_polynomials() {
        let p = 11;
        let f = ModPoly::from_int(&IntPoly::from_i64(&[4, 1, -5, 0, 1]), p);
        let xp = ModPoly::x(p).powmod_u64(p, &f);
        let direct = ModPoly::x(p).pow(p as usize).rem(&f);
        assert_eq!(xp, direct);
    }
}
