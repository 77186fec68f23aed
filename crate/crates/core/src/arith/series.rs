//! Truncated power series. `SeriesQ` is the plain rational form;
//! `EgfSeries` stores an exponential generating function by its integer
//! numerators `a_m` of `a_m t^m / m!`, which keeps subset-sum resolvents
//! inside Z.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesQ {
    coeffs: Vec<BigRational>,
    order: usize,
}

impl SeriesQ {
    /// Series truncated at `order` (terms `t^0..t^(order-1)` are kept).
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        coeffs.resize(order, BigRational::zero());
        SeriesQ { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Self {
        SeriesQ { coeffs: self.coeffs.iter().map(|a| a * c).collect(), order: self.order }
    }

    /// `s(c t)`.
    pub fn scale_arg(&self, c: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.order);
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        SeriesQ { coeffs: out, order: self.order }
    }
}

impl Add for &SeriesQ {
    type Output = SeriesQ;
    fn add(self, rhs: &SeriesQ) -> SeriesQ {
        let order = self.order.min(rhs.order);
        SeriesQ { coeffs: (0..order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(), order }
    }
}

impl Sub for &SeriesQ {
    type Output = SeriesQ;
    fn sub(self, rhs: &SeriesQ) -> SeriesQ {
        let order = self.order.min(rhs.order);
        SeriesQ { coeffs: (0..order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(), order }
    }
}

impl Mul for &SeriesQ {
    type Output = SeriesQ;
    fn mul(self, rhs: &SeriesQ) -> SeriesQ {
        let order = self.order.min(rhs.order);
        let mut out = vec![BigRational::zero(); order];
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                out[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        SeriesQ { coeffs: out, order }
    }
}

/// Divided-power series `Σ a_m t^m / m!` truncated at `order` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgfSeries {
    coeffs: Vec<BigInt>,
}

/// Rows of Pascal's triangle up to `n`.
pub(crate) fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigInt::one()]);
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = Vec::with_capacity(m + 1);
        row.push(BigInt::one());
        for i in 1..m {
            row.push(&prev[i - 1] + &prev[i]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

impl EgfSeries {
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order, BigInt::zero());
        EgfSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigInt::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// `s(j t)`: numerators pick up `j^m`.
    pub fn scale_arg(&self, j: i64) -> Self {
        let jj = BigInt::from(j);
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= &jj;
        }
        EgfSeries { coeffs: out }
    }

    /// Binomial convolution; `binom` must cover the truncation order.
    pub fn mul_with(&self, rhs: &EgfSeries, binom: &[Vec<BigInt>]) -> EgfSeries {
        let order = self.order().min(rhs.order());
        let mut out = Vec::with_capacity(order);
        for m in 0..order {
            let row = &binom[m];
            let mut acc = BigInt::zero();
            for i in 0..=m {
                let a = &self.coeffs[i];
                let b = &rhs.coeffs[m - i];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc += &row[i] * a * b;
            }
            out.push(acc);
        }
        EgfSeries { coeffs: out }
    }

    pub fn add_assign_signed(&mut self, rhs: &EgfSeries, negate: bool) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if negate {
                *a -= b;
            } else {
                *a += b;
            }
        }
    }

    pub fn div_exact(&self, k: usize) -> Result<EgfSeries> {
        let kk = BigInt::from(k);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(&kk);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            out.push(q);
        }
        Ok(EgfSeries { coeffs: out })
    }
}
