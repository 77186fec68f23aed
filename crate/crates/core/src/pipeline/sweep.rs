//! Everywhere-local roots: `h` has a root in `Q_p` for every `p <= B`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::newton::valuation;
use crate::arith::{discriminant, IntPoly};
use crate::error::{Error, Result};
use crate::modp::primes::primes_up_to;
use crate::modp::{roots_mod_p, squarefree_degrees, ModPoly};
use crate::ratfactor::factor_over_q;

/// A prime where some factor is not squarefree of full degree mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamifiedDecision {
    pub p: u64,
    /// Index of the factor whose root was found, if any.
    pub factor: Option<usize>,
    /// Precision `k*` used per factor, in input order.
    pub precision: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub bound: u64,
    pub factor_degrees: Vec<usize>,
    pub primes_checked: usize,
    pub ramified: Vec<RamifiedDecision>,
    pub failures: Vec<u64>,
    /// A rational root, when one exists.
    pub rational_root: Option<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.rational_root.is_none()
    }
}

fn vp(x: &BigInt, p: &BigInt) -> u64 {
    if x.is_zero() {
        u64::MAX
    } else {
        valuation(x.clone(), p)
    }
}

/// Whether a monic `h` has a root in `Z_p`, deciding every residue class
/// at precision at most `kstar = 2 v_p(disc h) + 1`.
///
/// A class `r + p^j Z_p` is expanded as `H(t) = h(r + p^j t) = p^c H~(t)`:
/// `c >= kstar` means a root, a simple root of `H~ mod p` lifts, and
/// multiple roots are refined one digit further.
pub fn has_padic_root(h: &IntPoly, p: u64, kstar: u32) -> bool {
    let bp = BigInt::from(p);
    let mut stack: Vec<(BigInt, u32)> = vec![(BigInt::zero(), 0)];
    while let Some((r, j)) = stack.pop() {
        let big = h.shift(&r).scale(&bp.pow(j));
        let c = big.coeffs().iter().map(|a| vp(a, &bp)).min().unwrap_or(u64::MAX);
        if c >= kstar as u64 {
            return true;
        }
        let reduced = IntPoly::new(big.coeffs().iter().map(|a| a / bp.pow(c as u32)).collect());
        let hp = ModPoly::from_int(&reduced, p);
        if hp.deg() == 0 {
            continue;
        }
        let dp = hp.derivative();
        for t in roots_mod_p(&hp.monic()) {
            if dp.eval(t) != 0 {
                return true;
            }
            stack.push((&r + BigInt::from(t) * bp.pow(j), j + 1));
        }
    }
    false
}

struct Factor {
    h: IntPoly,
    disc: Option<BigInt>,
}

impl Factor {
    fn kstar(&mut self, p: u64) -> Result<u32> {
        if self.disc.is_none() {
            self.disc = Some(discriminant(&self.h)?);
        }
        let d = self.disc.as_ref().expect("set above");
        if d.is_zero() {
            return Err(Error::Domain("sweep needs squarefree factors".into()));
        }
        Ok(2 * valuation(d.clone(), &BigInt::from(p)) as u32 + 1)
    }
}

fn rational_root(factors: &[IntPoly]) -> Result<Option<String>> {
    for h in factors {
        if h.deg() == 1 {
            return Ok(Some((-h.coeff(0)).to_string()));
        }
        // a prime with no root mod p rules out integer roots
        let rootless = crate::modp::primes::primes_from(2)
            .take(200)
            .any(|p| squarefree_degrees(h, p).is_some_and(|d| d.iter().all(|&x| x > 1)));
        if rootless {
            continue;
        }
        for (g, _) in factor_over_q(h)?.factors {
            if g.deg() == 1 {
                let (q, r) = (-g.coeff(0)).div_rem(&g.coeff(1));
                if r.is_zero() {
                    return Ok(Some(q.to_string()));
                }
            }
        }
    }
    Ok(None)
}

/// Sweeps the product of monic integer `factors` over all primes `p <= bound`.
pub fn sweep_roots_everywhere(factors: &[IntPoly], bound: u64) -> Result<SweepReport> {
    if factors.is_empty() || factors.iter().any(|h| !h.is_monic() || h.deg() == 0) {
        return Err(Error::Domain("sweep needs monic nonconstant factors".into()));
    }
    let primes = primes_up_to(bound);
    let quick: Vec<Option<bool>> = primes
        .par_iter()
        .map(|&p| {
            let mut all_good = true;
            for h in factors {
                match squarefree_degrees(h, p) {
                    Some(d) if d.contains(&1) => return Some(true),
                    Some(_) => {}
                    None => all_good = false,
                }
            }
            all_good.then_some(false)
        })
        .collect();
    let mut fs: Vec<Factor> = factors.iter().map(|h| Factor { h: h.clone(), disc: None }).collect();
    let mut ramified = Vec::new();
    let mut failures = Vec::new();
    for (&p, q) in primes.iter().zip(&quick) {
        match q {
            Some(true) => {}
            Some(false) => failures.push(p),
            None => {
                let mut precision = Vec::new();
                let mut found = None;
                for (i, f) in fs.iter_mut().enumerate() {
                    let k = f.kstar(p)?;
                    precision.push(k);
                    if found.is_none() && has_padic_root(&f.h, p, k) {
                        found = Some(i);
                    }
                }
                if found.is_none() {
                    failures.push(p);
                }
                ramified.push(RamifiedDecision { p, factor: found, precision });
            }
        }
    }
    Ok(SweepReport {
        bound,
        factor_degrees: factors.iter().map(|h| h.deg()).collect(),
        primes_checked: primes.len(),
        ramified,
        failures,
        rational_root: rational_root(factors)?,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::roots_mod_pk;

    #[test]
    fn negative_control_fails_at_five() {
        let r = sweep_roots_everywhere(&[IntPoly::from_i64(&[-2, 0, 1]), IntPoly::from_i64(&[-3, 0, 1])], 10).unwrap();
        assert!(r.failures.contains(&5));
        assert!(!r.passed());
        let q = sweep_roots_everywhere(&[IntPoly::from_i64(&[-1, 1]), IntPoly::from_i64(&[1, 0, 1])], 10).unwrap();
        assert_eq!(q.rational_root.as_deref(), Some("1"));
    }

    #[test]
    fn padic_decision_matches_enumeration() {
        for (c, p) in [
            (vec![-2, 0, 1], 2u64),
            (vec![-17, 0, 1], 2),
            (vec![-9, 0, 1], 3),
            (vec![-18, 0, 1], 3),
            (vec![-12, 0, 1], 2),
            (vec![4, 1, -5, 0, 1], 2777),
            (vec![-3, 0, 0, 1], 3),
        ] {
            let h = IntPoly::from_i64(&c);
            let d = discriminant(&h).unwrap();
            let k = 2 * valuation(d, &BigInt::from(p)) as u32 + 1;
            let brute = !roots_mod_pk(&h, p, k).is_empty();
            assert_eq!(has_padic_root(&h, p, k), brute, "{c:?} at {p}");
        }
    }

    #[test]
    fn s4_product_has_roots_everywhere() {
        let f = IntPoly::from_i64(&[4, 1, -5, 0, 1]);
        let g = IntPoly::from_i64(&[1, 9, 10, 1]);
        let r = sweep_roots_everywhere(&[f, g], 3000).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.ramified.iter().any(|d| d.p == 2777));
    }
}
