use num_bigint::BigInt;
use serde::Serialize;

use super::case::{CaseSpec, CoveringSpec, ResolventSpec};
use super::sweep::{sweep_roots_everywhere, SweepReport};
use crate::arith::{discriminant, integral_model, IntPoly, RatPoly};
use crate::error::Result;
use crate::galois::{certify_galois_group, GaloisCertificate};
use crate::local::{check_local_coverage, ramified_primes, LocalCoverageReport};
use crate::modp::{factor_mod_p, parse_factorization};
use crate::perm::{build_group, conjugate_containment, covering_check, derive_covering_lemma, CoveringReport};
use crate::ratfactor::{is_irreducible, Irreducibility};
use crate::resolvent::{
    separable_resolvent_search, splitting_containment_check, ContainmentReport, ContainmentSample,
    ContainmentVerdict, ResolventTranscript, CONTAINMENT_PRIMES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub sweep_bound: u64,
    pub containment_primes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 1, sweep_bound: 10_000, containment_primes: CONTAINMENT_PRIMES }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageVerdict {
    pub stage: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantStage {
    pub expected: String,
    pub computed: String,
    pub ramified_primes: Vec<(u64, u32)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationCheck {
    pub p: u64,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringStage {
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_premise: Option<String>,
    pub orders: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CoveringReport>,
}

/// Containment evidence without the per-prime listing, except violations.
#[derive(Clone, Debug, Serialize)]
pub struct ContainmentSummary {
    pub primes: usize,
    pub first_prime: u64,
    pub last_prime: u64,
    pub violations: Vec<ContainmentSample>,
    pub verdict: ContainmentVerdict,
}

impl From<&ContainmentReport> for ContainmentSummary {
    fn from(r: &ContainmentReport) -> Self {
        ContainmentSummary {
            primes: r.samples.len(),
            first_prime: r.samples.first().map_or(0, |s| s.p),
            last_prime: r.samples.last().map_or(0, |s| s.p),
            violations: r.samples.iter().filter(|s| !s.allowed).cloned().collect(),
            verdict: r.verdict,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialCheck {
    pub degree: usize,
    pub irreducibility: Irreducibility,
    pub containment: ContainmentSummary,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegeneratedResolvent {
    pub polynomial: RatPoly,
    pub transcript: ResolventTranscript,
    pub check: PolynomialCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equals_given: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolventStage {
    pub label: String,
    pub index: u64,
    /// A conjugate of the covering subgroup lies in the resolvent's subgroup.
    pub contains_covering_subgroup: bool,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub given: Option<PolynomialCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regenerated: Option<RegeneratedResolvent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepStage {
    pub path: String,
    pub report: SweepReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub group: String,
    pub options: VerifyOptions,
    pub stages: Vec<StageVerdict>,
    pub discriminant: Option<DiscriminantStage>,
    pub factorizations: Vec<FactorizationCheck>,
    pub galois: Option<GaloisCertificate>,
    pub covering: Option<CoveringStage>,
    pub local: Vec<LocalCoverageReport>,
    pub resolvents: Vec<ResolventStage>,
    pub sweeps: Vec<SweepStage>,
    pub passed: bool,
}

impl CaseReport {
    fn stage(&mut self, stage: &str, passed: bool, detail: impl Into<String>) {
        self.stages.push(StageVerdict { stage: stage.into(), passed, detail: detail.into() });
    }

    fn fail(&mut self, stage: &str, e: impl std::fmt::Display) {
        self.stage(stage, false, e.to_string());
    }

    pub fn stage_passed(&self, stage: &str) -> bool {
        self.stages.iter().any(|s| s.stage == stage) && self.stages.iter().filter(|s| s.stage == stage).all(|s| s.passed)
    }
}

fn check_polynomial(
    g: &RatPoly,
    f: &IntPoly,
    group: &crate::perm::GroupHandle,
    u: &crate::perm::GroupHandle,
    primes: usize,
) -> Result<PolynomialCheck> {
    let (model, _) = integral_model(&g.monic())?;
    let irreducibility = is_irreducible(&model)?;
    let containment = splitting_containment_check(g, f, group, u, primes)?;
    let index = group.order() / u.order();
    let passed = irreducibility.is_irreducible()
        && model.deg() as u64 == index
        && containment.verdict == ContainmentVerdict::Consistent;
    Ok(PolynomialCheck { degree: model.deg(), irreducibility, containment: (&containment).into(), passed })
}

fn resolvent_stage(
    label: &str,
    spec: &ResolventSpec,
    case: &CaseSpec,
    covering_u: &crate::perm::GroupHandle,
    opts: &VerifyOptions,
) -> Result<ResolventStage> {
    let group = case.group.handle();
    let u = build_group(&spec.subgroup)?;
    let index = group.order() / u.order();
    let contains = u.is_subgroup_of(&group) && conjugate_containment(covering_u, &u, &group).is_some();
    let given = match &spec.given {
        Some(g) => Some(check_polynomial(g, &case.f, &group, &u, opts.containment_primes)?),
        None => None,
    };
    let (poly, transcript) = separable_resolvent_search(&RatPoly::from(case.f.clone()), &spec.recipe, opts.seed)?;
    let check = check_polynomial(&poly, &case.f, &group, &u, opts.containment_primes)?;
    let equals_given = spec.given.as_ref().map(|g| g.monic() == poly);
    let regen_ok = check.passed && (!spec.exact || equals_given == Some(true));
    let passed = contains && regen_ok && given.as_ref().is_none_or(|g| g.passed);
    Ok(ResolventStage {
        label: label.into(),
        index,
        contains_covering_subgroup: contains,
        exact: spec.exact,
        given,
        regenerated: Some(RegeneratedResolvent { polynomial: poly, transcript, check, equals_given }),
        error: None,
        passed,
    })
}

fn integral_factors(gs: &[&RatPoly]) -> Result<Vec<IntPoly>> {
    gs.iter().map(|g| integral_model(&g.monic()).map(|(h, _)| h)).collect()
}

/// Runs every stage; a failing stage is recorded and later stages still run.
pub fn verify_case(case: &CaseSpec, opts: &VerifyOptions) -> CaseReport {
    let mut r = CaseReport {
        name: case.name.clone(),
        group: case.group.to_string(),
        options: *opts,
        stages: Vec::new(),
        discriminant: None,
        factorizations: Vec::new(),
        galois: None,
        covering: None,
        local: Vec::new(),
        resolvents: Vec::new(),
        sweeps: Vec::new(),
        passed: false,
    };
    let f = &case.f;

    let mut ramified = Vec::new();
    match discriminant(f) {
        Ok(d) => {
            let expected: Option<BigInt> = case.discriminant.parse().ok();
            let ok = expected.as_ref() == Some(&d);
            match ramified_primes(f) {
                Ok(rp) => ramified = rp,
                Err(e) => r.fail("ramified_primes", e),
            }
            r.stage("discriminant", ok, if ok { String::new() } else { format!("computed {d}") });
            r.discriminant = Some(DiscriminantStage {
                expected: case.discriminant.clone(),
                computed: d.to_string(),
                ramified_primes: ramified.clone(),
            });
        }
        Err(e) => r.fail("discriminant", e),
    }

    let mut fact_ok = true;
    for e in &case.factorizations {
        let computed = match factor_mod_p(f, e.p) {
            Ok(c) => c,
            Err(err) => {
                r.fail("factorizations", err);
                fact_ok = false;
                continue;
            }
        };
        let matches = if e.factors == "irreducible" {
            computed.is_irreducible()
        } else {
            parse_factorization(&e.factors, e.p).is_ok_and(|x| x.compact() == computed.compact())
        };
        fact_ok &= matches;
        r.factorizations.push(FactorizationCheck {
            p: e.p,
            expected: e.factors.clone(),
            computed: computed.compact(),
            matches,
        });
    }
    let mismatched: Vec<String> = r.factorizations.iter().filter(|c| !c.matches).map(|c| c.p.to_string()).collect();
    r.stage("factorizations", fact_ok, if mismatched.is_empty() { String::new() } else { format!("mismatch at {}", mismatched.join(", ")) });

    match certify_galois_group(f, case.group, &case.galois_primes) {
        Ok(c) => {
            let detail = match &c.verdict {
                crate::galois::Verdict::Proven => String::new(),
                v => format!("{v:?}"),
            };
            r.stage("galois", c.verdict.is_proven(), detail);
            r.galois = Some(c);
        }
        Err(e) => r.fail("galois", e),
    }

    let groups = case.covering_groups();
    match (&case.covering, &groups) {
        (_, Err(e)) => r.fail("covering", e),
        (CoveringSpec::Direct { .. }, Ok((u1, u2))) => match covering_check(&case.group.handle(), u1, u2) {
            Ok(c) => {
                r.stage("covering", c.passed(), if c.passed() { String::new() } else { format!("witness {:?}", c.witness) });
                r.covering = Some(CoveringStage {
                    method: "direct".into(),
                    failed_premise: None,
                    orders: c.orders,
                    report: Some(c),
                });
            }
            Err(e) => r.fail("covering", e),
        },
        (CoveringSpec::Lemma { parent, h, k }, Ok(_)) => {
            let lemma = build_group(h).and_then(|h| {
                let k = build_group(k)?;
                derive_covering_lemma(&parent.handle(), &case.group.handle(), &h, &k)
            });
            match lemma {
                Ok(l) => {
                    let detail = l.failed_premise.clone().unwrap_or_default();
                    r.stage("covering", l.passed(), detail);
                    r.covering = Some(CoveringStage {
                        method: format!("derived from {parent}"),
                        failed_premise: l.failed_premise.clone(),
                        orders: [l.h_cap_n.order(), l.k_cap_n.order()],
                        report: l.covering,
                    });
                }
                Err(e) => r.fail("covering", e),
            }
        }
    }

    if let Ok((u1, u2)) = &groups {
        let mut ok = !ramified.is_empty();
        for &(p, _) in &ramified {
            match check_local_coverage(f, p, case.group, u1, u2) {
                Ok(l) => {
                    ok &= l.passed;
                    r.local.push(l);
                }
                Err(e) => {
                    r.fail("local_coverage", format!("p = {p}: {e}"));
                    ok = false;
                }
            }
        }
        r.stage("local_coverage", ok, "");
    }

    let mut given_polys = Vec::new();
    let mut regen_polys = Vec::new();
    for (label, spec, idx) in [("g1", &case.g1, 0usize), ("g2", &case.g2, 1)] {
        let covering_u = match &groups {
            Ok(g) => if idx == 0 { g.0.clone() } else { g.1.clone() },
            Err(_) => continue,
        };
        match resolvent_stage(label, spec, case, &covering_u, opts) {
            Ok(s) => {
                let detail = resolvent_detail(&s);
                r.stage(label, s.passed, detail);
                if let Some(g) = &spec.given {
                    given_polys.push(g.clone());
                }
                if let Some(g) = &s.regenerated {
                    regen_polys.push(g.polynomial.clone());
                }
                r.resolvents.push(s);
            }
            Err(e) => {
                r.fail(label, &e);
                r.resolvents.push(ResolventStage {
                    label: label.into(),
                    index: 0,
                    contains_covering_subgroup: false,
                    exact: spec.exact,
                    given: None,
                    regenerated: None,
                    error: Some(e.to_string()),
                    passed: false,
                });
            }
        }
    }

    for (path, polys) in [("given", &given_polys), ("regenerated", &regen_polys)] {
        if polys.len() != 2 {
            continue;
        }
        let refs: Vec<&RatPoly> = polys.iter().collect();
        match integral_factors(&refs).and_then(|fs| sweep_roots_everywhere(&fs, opts.sweep_bound)) {
            Ok(s) => {
                let detail = if s.passed() {
                    String::new()
                } else if let Some(q) = &s.rational_root {
                    format!("rational root {q}")
                } else {
                    format!("no root at {:?}", &s.failures[..s.failures.len().min(10)])
                };
                r.stage(&format!("sweep_{path}"), s.passed(), detail);
                r.sweeps.push(SweepStage { path: path.into(), report: s });
            }
            Err(e) => r.fail(&format!("sweep_{path}"), e),
        }
    }
    r.passed = r.stages.iter().all(|s| s.passed);
    r
}

fn resolvent_detail(s: &ResolventStage) -> String {
    let mut parts = Vec::new();
    if !s.contains_covering_subgroup {
        parts.push("subgroup does not contain the covering subgroup".to_string());
    }
    if let Some(g) = &s.given {
        if !g.passed {
            parts.push(format!(
                "given polynomial fails (irreducible: {}, degree {}, containment {:?} with {} violations)",
                g.irreducibility.is_irreducible(),
                g.degree,
                g.containment.verdict,
                g.containment.violations.len()
            ));
        }
    }
    if let Some(g) = &s.regenerated {
        if !g.check.passed {
            parts.push("regenerated polynomial fails".into());
        }
        if s.exact && g.equals_given == Some(false) {
            parts.push("regenerated differs from given".into());
        }
    }
    parts.join("; ")
}
