//! Resultants by the subresultant remainder sequence over Z, and
//! discriminants built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, RatPoly};
use crate::error::{Error, Result};

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Resultant of two nonzero integer polynomials (Sylvester convention).
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("resultant of the zero polynomial".into()));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return Ok(s * pow(&b.lc(), a.deg()));
    }
    let ca = a.content();
    let cb = b.content();
    let t = pow(&ca, b.deg()) * pow(&cb, a.deg());
    a = a.scalar_div_exact(&ca)?;
    b = b.scalar_div_exact(&cb)?;
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let div = &g * pow(&h, delta);
        b = r.scalar_div_exact(&div)?;
        g = a.lc();
        // h <- h^(1-delta) * g^delta
        h = if delta == 0 {
            h
        } else {
            let num = pow(&g, delta);
            let den = pow(&h, delta - 1);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        };
        if b.is_zero() {
            return Ok(BigInt::zero());
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg();
    let num = pow(&b.lc(), da);
    let den = pow(&h, da - 1);
    let (hh, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    Ok(s * t * hh)
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = f.degree().ok_or_else(|| Error::Domain("discriminant of zero".into()))?;
    if n == 0 {
        return Err(Error::Domain("discriminant needs degree >= 1".into()));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let (q, rem) = r.div_rem(&f.lc());
    debug_assert!(rem.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Resultant over Q, reduced to the integer case through primitive parts.
pub fn resultant_rat(a: &RatPoly, b: &RatPoly) -> Result<BigRational> {
    let (ca, pa) = a.to_primitive_int();
    let (cb, pb) = b.to_primitive_int();
    let r = BigRational::from_integer(resultant(&pa, &pb)?);
    Ok(r * num_traits::pow(ca, b.deg()) * num_traits::pow(cb, a.deg()))
}

pub fn discriminant_rat(f: &RatPoly) -> Result<BigRational> {
    let (c, p) = f.to_primitive_int();
    let n = f.deg();
    if n == 0 {
        return Err(Error::Domain("discriminant needs degree >= 1".into()));
    }
    let d = BigRational::from_integer(discriminant(&p)?);
    Ok(d * num_traits::pow(c, 2 * n - 2))
}

/// Whether `d` is a perfect square (negative numbers are not).
pub fn is_square(d: &BigInt) -> bool {
    if d.is_negative() {
        return false;
    }
    let r = d.sqrt();
    &r * &r == *d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    /// Determinant of the Sylvester matrix by fraction-free elimination;
    /// an independent route for cross-checking.
    fn sylvester_det(a: &IntPoly, b: &IntPoly) -> BigInt {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                mat[i][i + j] = a.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                mat[n + i][i + j] = b.coeff(n - j);
            }
        }
        // Bareiss
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                let Some(r) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                mat.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
            }
            prev = mat[k][k].clone();
        }
        sign * &mat[size - 1][size - 1]
    }

    #[test]
    fn small_resultants() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-4, 0, 1])).unwrap(), BigInt::from(9));
        assert!(resultant(&IntPoly::zero(), &p(&[1, 1])).is_err());
    }

    #[test]
    fn quadratic_discriminant() {
        assert_eq!(discriminant(&p(&[3, 5, 1])).unwrap(), BigInt::from(25 - 12));
        assert_eq!(discriminant(&p(&[0, 0, 1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn case_discriminants() {
        assert_eq!(discriminant(&p(&[4, 1, -5, 0, 1])).unwrap(), BigInt::from(2777));
        assert_eq!(discriminant(&p(&[1, 3, -9, -9, 0, 1])).unwrap(), BigInt::from(36497));
        assert_eq!(discriminant(&p(&[2, 3, -7, -10, 1])).unwrap(), BigInt::from(163 * 163));
    }

    #[test]
    fn matches_sylvester_determinant() {
        let cases = [
            (p(&[1, -3, 0, 2, 5]), p(&[-7, 2, 3])),
            (p(&[4, 1, -5, 0, 1]), p(&[1, 0, -10, 0, 4])),
            (p(&[0, 1, 1]), p(&[0, 3])),
            (p(&[2, 0, 0, 0, 0, 3]), p(&[1, 1, 1, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(resultant(&a, &b).unwrap(), sylvester_det(&a, &b), "{a} / {b}");
        }
    }

    #[test]
    fn rational_resultant_scales() {
        let a = RatPoly::new(vec![BigRational::new((-1).into(), 2.into()), BigRational::one()]);
        let b = RatPoly::from_i64(&[-3, 1]);
        // Res(x - 1/2, x - 3) = 1/2 - 3
        assert_eq!(resultant_rat(&a, &b).unwrap(), BigRational::new((-5).into(), 2.into()));
    }
}
