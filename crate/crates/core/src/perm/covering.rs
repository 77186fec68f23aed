use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::group::GroupHandle;
use super::perm::{factorial, CycleType, Perm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub covers: bool,
    pub core_trivial: bool,
    /// Smallest uncovered element, or smallest non-identity core element.
    pub witness: Option<Perm>,
    pub orders: [u64; 2],
    pub conjugate_counts: [usize; 2],
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.covers && self.core_trivial
    }
}

/// Representatives `g` with the conjugates `U^g` pairwise distinct and
/// exhausting all conjugates of `u` in `g_elems`' group.
fn conjugating_transversal(u: &GroupHandle, g: &GroupHandle, g_elems: &[Perm]) -> Vec<Perm> {
    let norm = u.normalizer_in(g).elements();
    let mut seen = vec![false; factorial(g.degree())];
    let mut reps = Vec::new();
    for x in g_elems {
        if seen[x.rank()] {
            continue;
        }
        reps.push(*x);
        for m in &norm {
            seen[m.mul(x).rank()] = true;
        }
    }
    reps
}

fn require_subgroup(u: &GroupHandle, g: &GroupHandle, what: &str) -> Result<()> {
    if !u.is_subgroup_of(g) {
        return Err(Error::InvalidSpec(format!("{what} is not a subgroup")));
    }
    Ok(())
}

pub fn covering_check(g: &GroupHandle, u1: &GroupHandle, u2: &GroupHandle) -> Result<CoveringReport> {
    require_subgroup(u1, g, "U1")?;
    require_subgroup(u2, g, "U2")?;
    if u1.order() == g.order() || u2.order() == g.order() {
        return Err(Error::InvalidSpec("covering subgroups must be proper".into()));
    }
    let g_elems = g.elements();
    let size = factorial(g.degree());
    let mut count = vec![0u32; size];
    let mut total = 0u32;
    let mut conj_counts = [0usize; 2];
    for (i, u) in [u1, u2].into_iter().enumerate() {
        let u_elems = u.elements();
        let reps = conjugating_transversal(u, g, &g_elems);
        conj_counts[i] = reps.len();
        for x in &reps {
            for h in &u_elems {
                count[h.conj(x).rank()] += 1;
            }
        }
        total += reps.len() as u32;
    }
    let uncovered = g_elems.iter().find(|x| count[x.rank()] == 0);
    let core = g_elems.iter().find(|x| !x.is_identity() && count[x.rank()] == total);
    Ok(CoveringReport {
        covers: uncovered.is_none(),
        core_trivial: core.is_none(),
        witness: uncovered.or(core).copied(),
        orders: [u1.order(), u2.order()],
        conjugate_counts: conj_counts,
    })
}

/// Outcome of deriving a covering of a normal subgroup `N` from `(H, K)`.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    /// First premise that failed, if any.
    pub failed_premise: Option<String>,
    pub h_cap_n: GroupHandle,
    pub k_cap_n: GroupHandle,
    pub covering: Option<CoveringReport>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failed_premise.is_none() && self.covering.as_ref().is_some_and(|c| c.passed())
    }
}

pub fn derive_covering_lemma(
    g: &GroupHandle,
    n: &GroupHandle,
    h: &GroupHandle,
    k: &GroupHandle,
) -> Result<LemmaReport> {
    let h_cap_n = h.intersection(n);
    let k_cap_n = k.intersection(n);
    let product_is_g = |x: &GroupHandle, x_cap_n: &GroupHandle| {
        x.is_subgroup_of(g) && n.order() * x.order() / x_cap_n.order() == g.order()
    };
    let failed_premise = if !n.is_normal_in(g) {
        Some("N is not normal in G".to_string())
    } else if !product_is_g(h, &h_cap_n) {
        Some("G != NH".to_string())
    } else if !product_is_g(k, &k_cap_n) {
        Some("G != NK".to_string())
    } else {
        None
    };
    let covering = match failed_premise {
        None => Some(covering_check(n, &h_cap_n, &k_cap_n)?),
        Some(_) => None,
    };
    Ok(LemmaReport { failed_premise, h_cap_n, k_cap_n, covering })
}

/// Some `x` in `G` with `D^x` inside `U`, scanning `G` in canonical order.
pub fn conjugate_containment(d: &GroupHandle, u: &GroupHandle, g: &GroupHandle) -> Option<Perm> {
    if !u.order().is_multiple_of(d.order()) {
        return None;
    }
    let gens = d.generators();
    let Some((first, rest)) = gens.split_first() else {
        return Some(Perm::identity(g.degree()));
    };
    g.elements()
        .into_iter()
        .find(|x| u.contains(&first.conj(x)) && rest.iter().all(|y| u.contains(&y.conj(x))))
}

/// Orbit-length multisets (descending) on the right cosets of `U`, keyed by
/// the cycle type of the acting element.
pub fn coset_action_table(g: &GroupHandle, u: &GroupHandle) -> Result<BTreeMap<CycleType, BTreeSet<Vec<usize>>>> {
    require_subgroup(u, g, "U")?;
    let g_elems = g.elements();
    let u_elems = u.elements();
    let mut coset_of = vec![u32::MAX; factorial(g.degree())];
    let mut reps: Vec<Perm> = Vec::new();
    for x in &g_elems {
        if coset_of[x.rank()] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(*x);
        for h in &u_elems {
            coset_of[h.mul(x).rank()] = c;
        }
    }
    let m = reps.len();
    let mut table: BTreeMap<CycleType, BTreeSet<Vec<usize>>> = BTreeMap::new();
    let mut img = vec![0usize; m];
    let mut seen = vec![false; m];
    for x in &g_elems {
        for (c, r) in reps.iter().enumerate() {
            img[c] = coset_of[r.mul(x).rank()] as usize;
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut lens = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = img[j];
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        table.entry(x.cycle_type()).or_default().insert(lens);
    }
    Ok(table)
}
