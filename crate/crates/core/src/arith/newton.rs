//! Newton identities and the root-level transforms built on them:
//! Tschirnhausen transforms, the trace-zero shift, even splitting and
//! integral models.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, RatPoly};
use crate::error::{Error, Result};

fn require_monic_rat(f: &RatPoly) -> Result<()> {
    if f.is_monic() {
        Ok(())
    } else {
        Err(Error::Domain("expected a monic polynomial".into()))
    }
}

/// Power sums `p_0..=p_{m_max}` of the roots of a monic `f`.
pub fn power_sums(f: &RatPoly, m_max: usize) -> Result<Vec<BigRational>> {
    require_monic_rat(f)?;
    let n = f.deg();
    // c[i] is the coefficient of x^(n-i)
    let c: Vec<BigRational> = (0..=n).map(|i| f.coeff(n - i)).collect();
    let mut p = Vec::with_capacity(m_max + 1);
    p.push(BigRational::from_integer(n.into()));
    for m in 1..=m_max {
        let mut s = if m <= n { &c[m] * BigRational::from_integer(m.into()) } else { BigRational::zero() };
        for i in 1..m.min(n + 1) {
            s += &c[i] * &p[m - i];
        }
        p.push(-s);
    }
    Ok(p)
}

/// Integer power sums of a monic integer polynomial.
pub fn power_sums_int(f: &IntPoly, m_max: usize) -> Result<Vec<BigInt>> {
    if !f.is_monic() {
        return Err(Error::Domain("expected a monic polynomial".into()));
    }
    let n = f.deg();
    let c: Vec<BigInt> = (0..=n).map(|i| f.coeff(n - i)).collect();
    let mut p: Vec<BigInt> = Vec::with_capacity(m_max + 1);
    p.push(BigInt::from(n));
    for m in 1..=m_max {
        let mut s = if m <= n { &c[m] * BigInt::from(m) } else { BigInt::zero() };
        for i in 1..=n.min(m - 1) {
            if !c[i].is_zero() {
                s += &c[i] * &p[m - i];
            }
        }
        p.push(-s);
    }
    Ok(p)
}

/// Monic polynomial of degree `n` whose first `n` power sums are `p[1..=n]`.
/// `p[0]` must equal `n`.
pub fn poly_from_power_sums(p: &[BigRational], n: usize) -> Result<RatPoly> {
    if p.len() <= n || p[0] != BigRational::from_integer(n.into()) {
        return Err(Error::Domain("power sums must start with p_0 = degree".into()));
    }
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = p[m].clone();
        for i in 1..m {
            s += &c[i] * &p[m - i];
        }
        c.push(-s / BigRational::from_integer(m.into()));
    }
    c.reverse();
    Ok(RatPoly::new(c))
}

/// Integer variant; fails with `NotDivisible` if the power sums do not
/// come from a monic integer polynomial.
pub fn poly_from_power_sums_int(p: &[BigInt], n: usize) -> Result<IntPoly> {
    if p.len() <= n || p[0] != BigInt::from(n) {
        return Err(Error::Domain("power sums must start with p_0 = degree".into()));
    }
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut s = p[m].clone();
        for i in 1..m {
            if !c[i].is_zero() {
                s += &c[i] * &p[m - i];
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(m));
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        c.push(-q);
    }
    c.reverse();
    Ok(IntPoly::new(c))
}

/// Characteristic polynomial of `T(θ)` for `θ` a root of the monic `f`,
/// via traces of the powers `T^m mod f`.
pub fn tschirnhausen_transform(f: &RatPoly, t: &RatPoly) -> Result<RatPoly> {
    require_monic_rat(f)?;
    let n = f.deg();
    let ps = power_sums(f, n - 1)?;
    let t = t.rem(f)?;
    let mut acc = RatPoly::one();
    let mut q = vec![BigRational::from_integer(n.into())];
    for _ in 1..=n {
        acc = (&acc * &t).rem(f)?;
        let mut tr = BigRational::zero();
        for (j, a) in acc.coeffs().iter().enumerate() {
            tr += a * &ps[j];
        }
        q.push(tr);
    }
    poly_from_power_sums(&q, n)
}

/// Integer version for integer `f` and `T`; the output is integral.
pub fn tschirnhausen_transform_int(f: &IntPoly, t: &IntPoly) -> Result<IntPoly> {
    if !f.is_monic() {
        return Err(Error::Domain("expected a monic polynomial".into()));
    }
    let n = f.deg();
    let ps = power_sums_int(f, n - 1)?;
    let t = t.div_rem_monic(f).1;
    let mut acc = IntPoly::one();
    let mut q = vec![BigInt::from(n)];
    for _ in 1..=n {
        acc = (&acc * &t).div_rem_monic(f).1;
        let mut tr = BigInt::zero();
        for (j, a) in acc.coeffs().iter().enumerate() {
            tr += a * &ps[j];
        }
        q.push(tr);
    }
    poly_from_power_sums_int(&q, n)
}

/// Shift the roots by `-trace/n` so the `x^(n-1)` coefficient vanishes.
pub fn trace_zero(f: &RatPoly) -> Result<RatPoly> {
    require_monic_rat(f)?;
    let n = f.deg();
    if n == 0 {
        return Ok(f.clone());
    }
    // roots r -> r - e1/n, i.e. g(x) = f(x + e1/n) with e1 = -a_{n-1}
    let shift = -f.coeff(n - 1) / BigRational::from_integer(n.into());
    Ok(f.shift(&shift))
}

/// `r` with `h(x) = r(x^2)`.
pub fn even_split(h: &RatPoly) -> Result<RatPoly> {
    if let Some(i) = h.coeffs().iter().enumerate().position(|(i, c)| i % 2 == 1 && !c.is_zero()) {
        return Err(Error::NotEven(i));
    }
    Ok(RatPoly::new(h.coeffs().iter().step_by(2).cloned().collect()))
}

pub fn even_split_int(h: &IntPoly) -> Result<IntPoly> {
    if let Some(i) = h.coeffs().iter().enumerate().position(|(i, c)| i % 2 == 1 && !c.is_zero()) {
        return Err(Error::NotEven(i));
    }
    Ok(IntPoly::new(h.coeffs().iter().step_by(2).cloned().collect()))
}

/// Splits `vals` into a pairwise coprime base: every input is a product of
/// powers of the returned elements.
fn coprime_base(vals: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = Vec::new();
    for v in vals {
        let mut pending = vec![v.abs()];
        while let Some(mut a) = pending.pop() {
            if a.is_one() {
                continue;
            }
            let mut i = 0;
            while i < base.len() {
                let g = a.gcd(&base[i]);
                if g.is_one() {
                    i += 1;
                    continue;
                }
                let b = base.swap_remove(i);
                let mut bb = b.clone();
                while (&bb % &g).is_zero() {
                    bb /= &g;
                }
                while (&a % &g).is_zero() {
                    a /= &g;
                }
                pending.push(g);
                pending.push(bb);
                i = 0;
                if a.is_one() {
                    break;
                }
            }
            if !a.is_one() {
                base.push(a);
            }
        }
    }
    base.retain(|b| !b.is_one());
    base.sort();
    base.dedup();
    base
}

/// Replaces `b` by its smallest integer root `r` with `b = r^j`.
pub(crate) fn reduce_perfect_power(b: &BigInt) -> BigInt {
    for j in 2..=(b.bits() as u32) {
        let r = b.nth_root(j);
        if r < BigInt::from(2) {
            break;
        }
        if num_traits::pow(r.clone(), j as usize) == *b {
            return reduce_perfect_power(&r);
        }
    }
    b.clone()
}

pub(crate) fn valuation(mut v: BigInt, q: &BigInt) -> u64 {
    let mut k = 0;
    while (&v % q).is_zero() {
        v /= q;
        k += 1;
    }
    k
}

/// Monic integral model `s^n g(x/s)` of a monic rational `g`, with the least
/// `s` clearing denominators. Returns `(model, s)`.
pub fn integral_model(g: &RatPoly) -> Result<(IntPoly, BigInt)> {
    require_monic_rat(g)?;
    let n = g.deg();
    if g.is_integral() {
        return Ok((g.to_int().expect("integral"), BigInt::one()));
    }
    let dens: Vec<BigInt> = g.coeffs().iter().map(|c| c.denom().clone()).filter(|d| !d.is_one()).collect();
    // Small primes by trial division, the rest through a coprime base.
    let mut primes: Vec<BigInt> = Vec::new();
    let mut rest: Vec<BigInt> = Vec::new();
    for d in &dens {
        let mut d = d.clone();
        let mut q = 2u64;
        while q < 10_000 && BigInt::from(q * q) <= d {
            let bq = BigInt::from(q);
            if (&d % &bq).is_zero() {
                primes.push(bq.clone());
                while (&d % &bq).is_zero() {
                    d /= &bq;
                }
            }
            q += if q == 2 { 1 } else { 2 };
        }
        if !d.is_one() {
            rest.push(d);
        }
    }
    primes.sort();
    primes.dedup();
    let mut bases = primes;
    for b in coprime_base(&rest) {
        let r = reduce_perfect_power(&b);
        if !bases.contains(&r) {
            bases.push(r);
        }
    }
    let mut s = BigInt::one();
    for q in &bases {
        let mut need = 0u64;
        for i in 1..=n {
            let d = g.coeff(n - i).denom().clone();
            let v = valuation(d, q);
            need = need.max(v.div_ceil(i as u64));
        }
        s *= num_traits::pow(q.clone(), need as usize);
    }
    let scaled = g.scale(&BigRational::new(BigInt::one(), s.clone())).scalar_mul(&BigRational::from_integer(
        num_traits::pow(s.clone(), n),
    ));
    let model = scaled.to_int().ok_or_else(|| Error::Domain("integral model did not clear denominators".into()))?;
    Ok((model, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn power_sums_small() {
        let f = RatPoly::from_i64(&[2, -3, 1]);
        let p = power_sums(&f, 3).unwrap();
        assert_eq!(p, vec![q(2, 1), q(3, 1), q(5, 1), q(9, 1)]);
        let pi = power_sums_int(&IntPoly::from_i64(&[2, -3, 1]), 3).unwrap();
        assert_eq!(pi, vec![2.into(), 3.into(), 5.into(), BigInt::from(9)]);
        let s5 = IntPoly::from_i64(&[1, 3, -9, -9, 0, 1]);
        assert!(power_sums_int(&s5, 1).unwrap()[1].is_zero());
    }

    #[test]
    fn newton_round_trip() {
        let f = RatPoly::new(vec![q(1, 3), q(-2, 1), q(0, 1), q(5, 7), q(1, 1)]);
        let p = power_sums(&f, 4).unwrap();
        assert_eq!(poly_from_power_sums(&p, 4).unwrap(), f);
        assert!(poly_from_power_sums(&p[1..], 3).is_err());
    }

    #[test]
    fn integer_newton_rejects_non_integral() {
        // power sums of x^2 - x + 1/2 are 2, 1, 0
        assert_eq!(poly_from_power_sums_int(&[2.into(), 1.into(), 0.into()], 2), Err(Error::NotDivisible));
    }

    #[test]
    fn tschirnhausen_examples() {
        let f = RatPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(tschirnhausen_transform(&f, &RatPoly::from_i64(&[0, 1])).unwrap(), f);
        assert_eq!(tschirnhausen_transform(&f, &RatPoly::from_i64(&[1, 1])).unwrap(), RatPoly::from_i64(&[-1, -2, 1]));
        let fi = IntPoly::from_i64(&[4, 1, -5, 0, 1]);
        let t = IntPoly::from_i64(&[1, -2, 3]);
        assert_eq!(
            RatPoly::from(tschirnhausen_transform_int(&fi, &t).unwrap()),
            tschirnhausen_transform(&fi.to_rat(), &t.to_rat()).unwrap()
        );
    }

    #[test]
    fn trace_zero_kills_subleading() {
        let f = RatPoly::from_i64(&[7, 3, -5, 2, 1]);
        let g = trace_zero(&f).unwrap();
        assert!(g.coeff(3).is_zero());
        assert!(g.is_monic());
    }

    #[test]
    fn even_split_examples() {
        assert_eq!(even_split(&RatPoly::from_i64(&[1, 0, 2, 0, 1])).unwrap(), RatPoly::from_i64(&[1, 2, 1]));
        assert_eq!(even_split(&RatPoly::from_i64(&[0, 0, 0, 1])), Err(Error::NotEven(3)));
    }

    #[test]
    fn integral_model_examples() {
        let g = RatPoly::new(vec![q(-1, 4), q(0, 1), q(1, 1)]);
        assert_eq!(integral_model(&g).unwrap(), (IntPoly::from_i64(&[-1, 0, 1]), BigInt::from(2)));
        let h = RatPoly::from_i64(&[3, 1, 1]);
        assert_eq!(integral_model(&h).unwrap().1, BigInt::one());
        // x^2 + x/6 + 1/36 needs s = 6
        let k = RatPoly::new(vec![q(1, 36), q(1, 6), q(1, 1)]);
        assert_eq!(integral_model(&k).unwrap(), (IntPoly::from_i64(&[1, 1, 1]), BigInt::from(6)));
        // large prime denominator goes through the coprime base
        let big = 1_000_003i64;
        let m = RatPoly::new(vec![q(1, big * big), q(0, 1), q(1, 1)]);
        assert_eq!(integral_model(&m).unwrap().1, BigInt::from(big));
    }

    #[test]
    fn coprime_base_splits() {
        let b = coprime_base(&[BigInt::from(12), BigInt::from(18)]);
        assert_eq!(b, vec![BigInt::from(2), BigInt::from(3)]);
    }
}
