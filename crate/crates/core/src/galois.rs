//! Galois groups `S_n` and `A_n` certified from Frobenius cycle types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{discriminant, is_square, IntPoly};
use crate::error::{Error, Result};
use crate::modp::{is_prime, squarefree_degrees};
use crate::perm::{generation_certificate, CycleType, GenerationCertificate, GroupHandle};
use crate::ratfactor::{is_irreducible, Irreducibility};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Symmetric,
    Alternating,
}

/// `S_n` or `A_n`, written `S4`, `A8`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupName {
    pub family: Family,
    pub n: usize,
}

impl GroupName {
    pub fn handle(&self) -> GroupHandle {
        match self.family {
            Family::Symmetric => GroupHandle::symmetric(self.n),
            Family::Alternating => GroupHandle::alternating(self.n),
        }
    }

    pub fn is_alternating(&self) -> bool {
        self.family == Family::Alternating
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_alternating() { 'A' } else { 'S' };
        write!(f, "{c}{}", self.n)
    }
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown group {s:?}"));
        let t = s.trim();
        let family = match t.chars().next() {
            Some('S') | Some('s') => Family::Symmetric,
            Some('A') | Some('a') => Family::Alternating,
            _ => return Err(bad()),
        };
        let n: usize = t[1..].trim_start_matches('_').parse().map_err(|_| bad())?;
        if !(2..=8).contains(&n) {
            return Err(bad());
        }
        Ok(GroupName { family, n })
    }
}

impl Serialize for GroupName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusSample {
    pub p: u64,
    pub cycle_type: CycleType,
}

/// Cycle type of Frobenius at an unramified prime `p`.
pub fn dedekind_sample(f: &IntPoly, p: u64) -> Result<FrobeniusSample> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let degs = squarefree_degrees(f, p)
        .ok_or_else(|| Error::Domain(format!("{p} divides the discriminant or leading coefficient")))?;
    Ok(FrobeniusSample { p, cycle_type: CycleType::new(degs) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Proven,
    InsufficientEvidence(String),
    Refuted(String),
}

impl Verdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisCertificate {
    pub claim: GroupName,
    pub irreducibility: Irreducibility,
    pub disc_is_square: bool,
    pub samples: Vec<FrobeniusSample>,
    /// Listed primes dividing the discriminant, not used as samples.
    pub skipped_primes: Vec<u64>,
    pub rule: String,
    pub generation: Option<GenerationCertificate>,
    pub verdict: Verdict,
}

/// First power of a sampled type accepted by `ok`.
fn power_reaching(samples: &[FrobeniusSample], ok: impl Fn(&CycleType) -> bool) -> Option<(u64, usize, CycleType)> {
    for s in samples {
        for m in 1..=s.cycle_type.order() {
            let t = s.cycle_type.power(m);
            if ok(&t) {
                return Some((s.p, m, t));
            }
        }
    }
    None
}

fn symmetric_rule(n: usize, samples: &[FrobeniusSample]) -> (String, Verdict) {
    let is_transposition = |t: &CycleType| t.parts().iter().filter(|&&c| c > 1).eq([2].iter());
    let long_prime = |t: &CycleType| {
        let big: Vec<usize> = t.parts().iter().copied().filter(|&c| c > 1).collect();
        big.len() == 1 && is_prime(big[0] as u64) && 2 * big[0] > n
    };
    let tr = power_reaching(samples, is_transposition);
    let pc = power_reaching(samples, long_prime);
    match (tr, pc) {
        (Some((p1, m1, _)), Some((p2, m2, t2))) => (
            format!(
                "transitive with a transposition (Frobenius at {p1} to the power {m1}) and a prime cycle \
                 of type {t2} (Frobenius at {p2} to the power {m2})"
            ),
            Verdict::Proven,
        ),
        (None, _) => ("transposition rule".into(), Verdict::InsufficientEvidence("no transposition sampled".into())),
        (_, None) => (
            "transposition rule".into(),
            Verdict::InsufficientEvidence(format!("no prime cycle of length above {}", n / 2)),
        ),
    }
}

/// Runs generation certificates over the sampled types: the type with the
/// largest cycle is fixed first, then pairs, then triples.
fn alternating_rule(g: &GroupHandle, samples: &[FrobeniusSample]) -> Result<(Option<GenerationCertificate>, Verdict)> {
    let mut types: Vec<CycleType> = samples.iter().map(|s| s.cycle_type.clone()).collect();
    types.sort_by(|a, b| b.cmp(a));
    types.dedup();
    types.retain(|t| t.parts()[0] > 1);
    let Some((first, rest)) = types.split_first() else {
        return Ok((None, Verdict::InsufficientEvidence("no non-identity samples".into())));
    };
    let mut combos: Vec<Vec<CycleType>> = vec![vec![first.clone()]];
    combos.extend(rest.iter().map(|t| vec![first.clone(), t.clone()]));
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            combos.push(vec![first.clone(), rest[i].clone(), rest[j].clone()]);
        }
    }
    let mut last = None;
    for c in combos {
        let cert = generation_certificate(g, &c)?;
        if cert.holds() {
            return Ok((Some(cert), Verdict::Proven));
        }
        last = Some(cert);
    }
    Ok((last, Verdict::InsufficientEvidence("sampled types lie in a common proper subgroup".into())))
}

pub fn certify_galois_group(f: &IntPoly, claim: GroupName, primes: &[u64]) -> Result<GaloisCertificate> {
    let n = f.deg();
    let irreducibility = is_irreducible(f)?;
    let disc = discriminant(f)?;
    let disc_is_square = is_square(&disc);
    let mut samples = Vec::new();
    let mut skipped_primes = Vec::new();
    for &p in primes {
        match dedekind_sample(f, p) {
            Ok(s) => samples.push(s),
            Err(Error::Domain(_)) => skipped_primes.push(p),
            Err(e) => return Err(e),
        }
    }
    let mut cert = GaloisCertificate {
        claim,
        irreducibility,
        disc_is_square,
        samples,
        skipped_primes,
        rule: String::new(),
        generation: None,
        verdict: Verdict::Proven,
    };
    let refute = |mut c: GaloisCertificate, why: String| {
        c.verdict = Verdict::Refuted(why);
        Ok(c)
    };
    if claim.n != n {
        return refute(cert, format!("degree {n} does not match {claim}"));
    }
    if let Irreducibility::Reducible { factor } = &cert.irreducibility {
        let why = format!("reducible, with factor {factor}");
        return refute(cert, why);
    }
    if claim.is_alternating() != disc_is_square {
        let why = format!("discriminant {disc} is {}a square", if disc_is_square { "" } else { "not " });
        return refute(cert, why);
    }
    if let Some(s) = cert.samples.iter().find(|s| claim.is_alternating() && !s.cycle_type.is_even()) {
        let why = format!("odd type {} at {}", s.cycle_type, s.p);
        return refute(cert, why);
    }
    if !cert.irreducibility.is_irreducible() {
        cert.verdict = Verdict::InsufficientEvidence("irreducibility not established".into());
        return Ok(cert);
    }
    match claim.family {
        Family::Symmetric => {
            let (rule, verdict) = symmetric_rule(n, &cert.samples);
            cert.rule = rule;
            cert.verdict = verdict;
        }
        Family::Alternating => {
            let (gen, verdict) = alternating_rule(&claim.handle(), &cert.samples)?;
            cert.rule = match &gen {
                Some(g) => format!(
                    "square discriminant and generation by types {}",
                    g.types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
                ),
                None => "square discriminant and generation".into(),
            };
            cert.generation = gen;
            cert.verdict = verdict;
        }
    }
    Ok(cert)
}
