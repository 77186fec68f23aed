use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::case::shipped_case;
use crate::arith::{discriminant, IntPoly};
use crate::error::{Error, Result};
use crate::galois::{certify_galois_group, GroupName};
use crate::local::check_local_coverage;
use crate::modp::is_prime_big;
use crate::modp::primes::primes_up_to;
use crate::perm::GroupHandle;

/// Inclusive ranges for `a_0, ..., a_{n-1}` of a monic degree-`n` polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub ranges: Vec<(i64, i64)>,
}

impl SearchBox {
    pub fn size(&self) -> u64 {
        self.ranges.iter().map(|(a, b)| (b - a + 1) as u64).product()
    }

    fn polynomial(&self, mut i: u64) -> IntPoly {
        let mut c: Vec<i64> = Vec::with_capacity(self.ranges.len() + 1);
        for (a, b) in &self.ranges {
            let w = (b - a + 1) as u64;
            c.push(a + (i % w) as i64);
            i /= w;
        }
        c.push(1);
        IntPoly::from_i64(&c)
    }

    /// One range for every coefficient.
    pub fn uniform(n: usize, lo: i64, hi: i64) -> Self {
        SearchBox { ranges: vec![(lo, hi); n] }
    }
}

impl FromStr for SearchBox {
    type Err = Error;

    /// `lo..hi` per coefficient, comma separated, constant term first.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad box {s:?}, expected e.g. -2..2,-3..3"));
        let ranges = s
            .split(',')
            .map(|r| {
                let (a, b) = r.trim().split_once("..").ok_or_else(bad)?;
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SearchBox { ranges })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub f: IntPoly,
    pub discriminant: String,
    /// The ramified prime.
    pub prime: String,
    pub galois_rule: String,
    pub local_coverage: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchState {
    pub group: GroupName,
    pub search_box: SearchBox,
    /// Next box index to scan.
    pub next: u64,
    pub candidates: Vec<Candidate>,
}

const CHUNK: u64 = 512;
const SCREEN_PRIME_BOUND: u64 = 200;

/// The prime `q` with `|disc| = q` (for `S_n`) or `disc = q^2` (for `A_n`).
fn disc_prime(d: &BigInt, g: GroupName) -> Option<BigInt> {
    if g.is_alternating() {
        if !d.is_positive() {
            return None;
        }
        let q = d.sqrt();
        (&q * &q == *d && is_prime_big(&q)).then_some(q)
    } else {
        let q = d.abs();
        is_prime_big(&q).then_some(q)
    }
}

fn screen(f: &IntPoly, g: GroupName, u: &(GroupHandle, GroupHandle), primes: &[u64]) -> Option<Candidate> {
    let d = discriminant(f).ok()?;
    let q = disc_prime(&d, g)?;
    let qs: u64 = q.to_string().parse().ok()?;
    if qs <= g.n as u64 {
        return None;
    }
    let cert = certify_galois_group(f, g, primes).ok()?;
    if !cert.verdict.is_proven() {
        return None;
    }
    let local = check_local_coverage(f, qs, g, &u.0, &u.1).ok()?;
    if !local.passed {
        return None;
    }
    Some(Candidate {
        f: f.clone(),
        discriminant: d.to_string(),
        prime: q.to_string(),
        galois_rule: cert.rule,
        local_coverage: true,
    })
}

fn write_atomic(path: &Path, state: &SearchState) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string_pretty(state)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Scans up to `budget` polynomials of the box, resuming from `checkpoint`
/// when it holds a state for the same group and box. Candidates are kept
/// ordered by `|disc|`, then coefficients.
pub fn search_candidates(
    group: GroupName,
    search_box: &SearchBox,
    budget: u64,
    checkpoint: Option<&Path>,
) -> Result<SearchState> {
    if search_box.ranges.len() != group.n {
        return Err(Error::Domain(format!("box has {} ranges, {group} needs {}", search_box.ranges.len(), group.n)));
    }
    let u = shipped_case(&group.to_string())?.covering_groups()?;
    let mut state = SearchState { group, search_box: search_box.clone(), next: 0, candidates: Vec::new() };
    if let Some(path) = checkpoint.filter(|p| p.exists()) {
        let old: SearchState = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if old.group == group && old.search_box == *search_box {
            state = old;
        }
    }
    let primes = primes_up_to(SCREEN_PRIME_BOUND);
    let end = search_box.size().min(state.next.saturating_add(budget));
    while state.next < end {
        let stop = end.min(state.next + CHUNK);
        let found: Vec<Option<Candidate>> = (state.next..stop)
            .into_par_iter()
            .map(|i| screen(&search_box.polynomial(i), group, &u, &primes))
            .collect();
        state.candidates.extend(found.into_iter().flatten());
        state.next = stop;
        state.candidates.sort_by_cached_key(|c| {
            let d: BigInt = c.discriminant.parse().expect("decimal discriminant");
            (d.abs(), c.f.coeffs().to_vec())
        });
        if let Some(path) = checkpoint {
            write_atomic(path, &state)?;
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boxes_parse_and_enumerate() {
        let b: SearchBox = "-1..1,0..2".parse().unwrap();
        assert_eq!(b.size(), 9);
        assert_eq!(b.polynomial(0), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(b.polynomial(8), IntPoly::from_i64(&[1, 2, 1]));
        assert!("3..1".parse::<SearchBox>().is_err());
    }

    #[test]
    fn empty_budget_is_empty() {
        let s = search_candidates("S3".parse().unwrap(), &SearchBox::uniform(3, -2, 2), 0, None).unwrap();
        assert!(s.candidates.is_empty());
        assert_eq!(s.next, 0);
    }
}
