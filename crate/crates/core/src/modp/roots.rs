use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::factor::roots_mod_p;
use super::poly::ModPoly;
use crate::arith::IntPoly;

/// All residues `r mod p^k` with `h(r) ≡ 0 (mod p^k)`, ascending.
///
/// Lifting a root `r mod p^j` (j ≥ 1) by a digit `t` uses
/// `h(r + t p^j) ≡ h(r) + t p^j h'(r) (mod p^(j+1))`: a simple root has one
/// child, a singular root has `p` children or none.
pub fn roots_mod_pk(h: &IntPoly, p: u64, k: u32) -> Vec<BigInt> {
    assert!(k >= 1, "precision must be positive");
    let hp = ModPoly::from_int(h, p);
    let base: Vec<u64> = if hp.is_zero() { (0..p).collect() } else { roots_mod_p(&hp) };
    let dh = h.derivative();
    let bp = BigInt::from(p);
    let mut level: Vec<BigInt> = base.into_iter().map(BigInt::from).collect();
    let mut pj = bp.clone();
    for _ in 1..k {
        let pj1 = &pj * &bp;
        let mut next = Vec::new();
        for r in &level {
            let hr = h.eval_mod(r, &pj1);
            let a = (&hr / &pj).mod_floor(&bp);
            let d = dh.eval_mod(r, &bp);
            if !d.is_zero() {
                // a + t d ≡ 0 (mod p)
                let dinv = d.modpow(&(&bp - 2u32), &bp);
                let t = (-(a * dinv)).mod_floor(&bp);
                next.push(r + t * &pj);
            } else if a.is_zero() {
                let mut t = BigInt::zero();
                while t < bp {
                    next.push(r + &t * &pj);
                    t += BigInt::one();
                }
            }
        }
        next.sort();
        level = next;
        pj = pj1;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(h: &IntPoly, m: u64) -> Vec<BigInt> {
        let mm = BigInt::from(m);
        (0..m).map(BigInt::from).filter(|r| h.eval_mod(r, &mm).is_zero()).collect()
    }

    #[test]
    fn matches_enumeration() {
        let h = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(roots_mod_pk(&h, 2, 3), vec![1, 3, 5, 7].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert!(roots_mod_pk(&IntPoly::from_i64(&[1, 0, 1]), 3, 1).is_empty());
        for (c, p, k) in [(vec![0i64, 0, 1], 3u64, 4u32), (vec![-8, 0, 0, 1], 3, 3), (vec![4, 1, -5, 0, 1], 5, 3)] {
            let h = IntPoly::from_i64(&c);
            assert_eq!(roots_mod_pk(&h, p, k), brute(&h, p.pow(k)), "{h}");
        }
    }

    #[test]
    fn levels_are_nested() {
        let h = IntPoly::from_i64(&[-49, 0, 1]);
        let r3 = roots_mod_pk(&h, 7, 3);
        let r2 = roots_mod_pk(&h, 7, 2);
        let m = BigInt::from(49);
        for r in r3 {
            assert!(r2.contains(&r.mod_floor(&m)));
        }
    }
}
