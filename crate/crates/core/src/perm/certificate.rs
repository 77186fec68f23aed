use rayon::prelude::*;
use serde::Serialize;

use super::chain::StabChain;
use super::group::GroupHandle;
use super::perm::{CycleType, Perm};
use crate::error::{Error, Result};

/// Exhaustive check that elements of the listed types generate `G`.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationCertificate {
    pub group_order: u64,
    pub types: Vec<CycleType>,
    /// Fixed element of the first type.
    pub x: Perm,
    pub pairs_checked: usize,
    /// Pairs `<x, y>` generating a proper subgroup, each then extended by
    /// every element of the third type.
    pub proper_pairs: usize,
    pub triples_checked: usize,
    /// Generators of a proper subgroup containing every listed type.
    pub counterexample: Option<Vec<Perm>>,
}

impl GenerationCertificate {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn elements_of_type(g: &GroupHandle, t: &CycleType) -> Vec<Perm> {
    g.elements().into_iter().filter(|x| x.cycle_type() == *t).collect()
}

/// `Some(order)` of `<gens>` if it is proper, `None` if it is all of `G`.
fn proper_order(n: usize, gens: &[Perm], full: u64) -> Option<u64> {
    let (c, complete) = StabChain::build(n, gens, Some(full / 2));
    if !complete || c.order() == full {
        None
    } else {
        Some(c.order())
    }
}

struct PairOutcome {
    proper: bool,
    triples: usize,
    counterexample: Option<Vec<Perm>>,
}

pub fn generation_certificate(g: &GroupHandle, types: &[CycleType]) -> Result<GenerationCertificate> {
    let n = g.degree();
    if !(g.is_full_symmetric() || g.is_full_alternating()) {
        return Err(Error::InvalidSpec("generation certificates need S_n or A_n".into()));
    }
    if types.is_empty() || types.len() > 3 {
        return Err(Error::InvalidSpec("between one and three cycle types required".into()));
    }
    for t in types {
        if t.degree() != n || (g.is_full_alternating() && !t.is_even()) {
            return Err(Error::InvalidSpec(format!("type {t} is not realizable in the group")));
        }
    }
    let full = g.order();
    let x = types[0].representative();
    let mut cert = GenerationCertificate {
        group_order: full,
        types: types.to_vec(),
        x,
        pairs_checked: 0,
        proper_pairs: 0,
        triples_checked: 0,
        counterexample: None,
    };
    if types.len() == 1 {
        if proper_order(n, &[x], full).is_some() {
            cert.counterexample = Some(vec![x]);
        }
        return Ok(cert);
    }
    let ys = elements_of_type(g, &types[1]);
    let zs = if types.len() == 3 { elements_of_type(g, &types[2]) } else { Vec::new() };
    let outcomes: Vec<PairOutcome> = ys
        .par_iter()
        .map(|y| {
            let pair = [x, *y];
            if proper_order(n, &pair, full).is_none() {
                return PairOutcome { proper: false, triples: 0, counterexample: None };
            }
            if types.len() == 2 {
                return PairOutcome { proper: true, triples: 0, counterexample: Some(pair.to_vec()) };
            }
            let (h, _) = StabChain::build(n, &pair, None);
            let mut triples = 0;
            for z in &zs {
                triples += 1;
                if h.contains(z) {
                    return PairOutcome { proper: true, triples, counterexample: Some(pair.to_vec()) };
                }
                let mut ext = h.clone();
                if ext.extend(&[*z], Some(full / 2)) && ext.order() < full {
                    return PairOutcome { proper: true, triples, counterexample: Some(vec![x, *y, *z]) };
                }
            }
            PairOutcome { proper: true, triples, counterexample: None }
        })
        .collect();
    cert.pairs_checked = ys.len();
    for o in outcomes {
        cert.proper_pairs += o.proper as usize;
        cert.triples_checked += o.triples;
        if cert.counterexample.is_none() {
            cert.counterexample = o.counterexample;
        }
    }
    Ok(cert)
}

/// Elements of `G` with cycle type `t`, split into `G`-conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassElements {
    pub elements: Vec<Perm>,
    pub classes: Vec<Vec<Perm>>,
}

pub fn class_elements(g: &GroupHandle, t: &CycleType) -> ClassElements {
    let elements = elements_of_type(g, t);
    let mut class_of: std::collections::HashMap<Perm, usize> = std::collections::HashMap::new();
    let mut classes: Vec<Vec<Perm>> = Vec::new();
    for e in &elements {
        if class_of.contains_key(e) {
            continue;
        }
        let id = classes.len();
        let mut cls = vec![*e];
        class_of.insert(*e, id);
        let mut i = 0;
        while i < cls.len() {
            for s in g.generators() {
                let c = cls[i].conj(s);
                if let std::collections::hash_map::Entry::Vacant(v) = class_of.entry(c) {
                    v.insert(id);
                    cls.push(c);
                }
            }
            i += 1;
        }
        cls.sort_unstable();
        classes.push(cls);
    }
    ClassElements { elements, classes }
}
