//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galcover::arith::{discriminant, even_split_int, text::int_from_text};
use galcover::galois::certify_galois_group;
use galcover::modp::{factor_mod_p, parse_factorization};
use galcover::perm::{conjugate_containment, GroupHandle, Perm};
use galcover::pipeline::{
    report_json, shipped_case, shipped_cases, sweep_roots_everywhere, verify_case, CaseReport, CaseSpec,
    VerifyOptions,
};
use galcover::resolvent::{cubic_resolvent, subset_sum_resolvent, ContainmentVerdict};
use galcover::{IntPoly, RatPoly};

type Outcome = Result<String, String>;

const EIGHT: [&str; 8] = ["S4", "S5", "S6", "A4", "A5", "A6", "A7", "A8"];

fn case(name: &str) -> CaseSpec {
    shipped_case(name).unwrap()
}

fn report<'a>(reports: &'a [CaseReport], name: &str) -> &'a CaseReport {
    reports.iter().find(|r| r.name == name).unwrap()
}

fn big(s: &str) -> BigInt {
    s.parse().unwrap()
}

fn discriminants() -> Outcome {
    let t = Instant::now();
    let expected = [
        ("S4", big("2777")),
        ("S5", big("36497")),
        ("S6", big("33994921")),
        ("A4", big("163").pow(2)),
        ("A5", big("15733").pow(2)),
        ("A6", big("14341").pow(2)),
        ("A7", big("554293").pow(2)),
        ("A8", big("11489").pow(2)),
    ];
    let mut bad = Vec::new();
    for (name, d) in &expected {
        let got = discriminant(&case(name).f).unwrap();
        if got != *d {
            bad.push(format!("{name}: {got} != {d}"));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if secs >= 1.0 {
        return Err(format!("took {secs:.2}s"));
    }
    Ok(format!("8 discriminants in {secs:.3}s"))
}

fn factorizations() -> Outcome {
    let t = Instant::now();
    let cited: [(&str, &[u64]); 8] = [
        ("S4", &[3, 11, 23, 2777]),
        ("S5", &[17, 3, 103, 36497]),
        ("S6", &[37, 13, 263, 33994921]),
        ("A4", &[3, 5, 163]),
        ("A5", &[3, 5, 7, 15733]),
        ("A6", &[3, 5, 101, 109, 14341]),
        ("A7", &[554293]),
        ("A8", &[11489]),
    ];
    let mut bad = Vec::new();
    let mut count = 0;
    for (name, primes) in cited {
        let c = case(name);
        for &p in primes {
            let Some(e) = c.factorizations.iter().find(|e| e.p == p) else {
                bad.push(format!("{name} mod {p}: not in case file"));
                continue;
            };
            let computed = factor_mod_p(&c.f, p).unwrap();
            let ok = if e.factors == "irreducible" {
                computed.is_irreducible()
            } else {
                parse_factorization(&e.factors, p).is_ok_and(|x| x.compact() == computed.compact())
            };
            count += 1;
            if !ok {
                bad.push(format!("{name} mod {p}: cited {} but computed {}", e.factors, computed.compact()));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if secs >= 5.0 {
        return Err(format!("took {secs:.2}s"));
    }
    Ok(format!("{count} factorizations in {secs:.3}s"))
}

fn galois_certificates() -> Outcome {
    let evidence: [(&str, &[u64]); 8] = [
        ("S4", &[3, 11, 23]),
        ("S5", &[17, 3, 103]),
        ("S6", &[37, 13, 263]),
        ("A4", &[3, 5]),
        ("A5", &[3, 5, 7]),
        ("A6", &[3, 5, 101, 109]),
        ("A7", &[3, 5, 7, 23]),
        ("A8", &[3, 37, 41]),
    ];
    let mut bad = Vec::new();
    let mut a8_secs = 0.0;
    for (name, primes) in evidence {
        let c = case(name);
        let t = Instant::now();
        match certify_galois_group(&c.f, c.group, primes) {
            Ok(cert) if cert.verdict.is_proven() => {}
            Ok(cert) => bad.push(format!("{name}: {:?}", cert.verdict)),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
        if name == "A8" {
            a8_secs = t.elapsed().as_secs_f64();
        }
    }
    if a8_secs >= 600.0 {
        bad.push(format!("A8 took {a8_secs:.0}s"));
    }
    if bad.is_empty() {
        Ok(format!("8 groups proven, A8 in {a8_secs:.2}s"))
    } else {
        Err(bad.join("; "))
    }
}

fn coverings(reports: &[CaseReport]) -> Outcome {
    let mut bad = Vec::new();
    for r in reports {
        if !r.stage_passed("covering") {
            bad.push(r.name.clone());
        }
    }
    for name in ["A5", "A6"] {
        let method = report(reports, name).covering.as_ref().map(|c| c.method.clone()).unwrap_or_default();
        if !method.starts_with("derived") {
            bad.push(format!("{name} not lemma-derived ({method})"));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} coverings, A5 and A6 derived", reports.len()))
    } else {
        Err(format!("failed: {}", bad.join(", ")))
    }
}

fn local_coverage(reports: &[CaseReport]) -> Outcome {
    let mut bad = Vec::new();
    for r in reports {
        if !r.stage_passed("local_coverage") || r.local.is_empty() {
            bad.push(format!("{} local coverage", r.name));
        }
    }
    let cands = |name: &str| report(reports, name).local.iter().flat_map(|l| l.candidates()).collect::<Vec<_>>();
    for name in ["S4", "S5", "S6"] {
        if !cands(name).iter().all(|c| c.cyclic && c.order == 2) {
            bad.push(format!("{name}: candidate other than C2"));
        }
    }
    for name in ["A4", "A5"] {
        if !cands(name).iter().all(|c| c.cyclic && c.order == 3) {
            bad.push(format!("{name}: candidate other than C3"));
        }
    }
    if !cands("A6").iter().any(|c| !c.cyclic && c.order == 4 && c.contained_in.is_some()) {
        bad.push("A6: no covered noncyclic order-4 candidate".into());
    }
    if !cands("A7").iter().all(|c| c.order.is_power_of_two()) {
        bad.push("A7: candidate not a 2-group".into());
    }
    let a8 = GroupHandle::alternating(8);
    let target = GroupHandle::new(
        8,
        ["(1,2,3)", "(1,2)(4,5)", "(6,7,8)"].iter().map(|s| Perm::parse(s, 8).unwrap()).collect(),
    )
    .unwrap();
    let hit = cands("A8").iter().any(|c| {
        c.order == 18
            && c.contained_in.is_some()
            && GroupHandle::new(8, vec![c.tau, c.sigma])
                .is_ok_and(|d| d.order() == 18 && conjugate_containment(&d, &target, &a8).is_some())
    });
    if !hit {
        bad.push("A8: no covered order-18 candidate conjugate to <(123),(12)(45),(678)>".into());
    }
    if bad.is_empty() {
        let primes: usize = reports.iter().map(|r| r.local.len()).sum();
        Ok(format!("{primes} ramified primes covered, candidate shapes as expected"))
    } else {
        Err(bad.join("; "))
    }
}

fn exact_resolvents() -> Outcome {
    let mut bad = Vec::new();
    let given = |name: &str| case(name).g1.given.unwrap();
    for name in ["S5", "A5"] {
        let g = subset_sum_resolvent(&case(name).f, 2).unwrap();
        if RatPoly::from(&g) != given(name) {
            bad.push(format!("g1_{name}"));
        }
    }
    let h_printed = int_from_text(&[
        "4096", "0", "-278413", "0", "1684385", "0", "-2532942", "0", "1751524", "0", "-662097", "0", "146153", "0",
        "-19209", "0", "1470", "0", "-60", "0", "1",
    ])
    .unwrap();
    let h = subset_sum_resolvent(&case("S6").f, 3).unwrap();
    if h != h_printed {
        bad.push("h_S6".into());
    }
    if RatPoly::from(&even_split_int(&h).unwrap()) != given("S6") {
        bad.push("g1_S6".into());
    }
    for (name, coeffs) in [("S4", [1i64, 9, 10, 1]), ("A4", [24649, 2586, 89, 1])] {
        if cubic_resolvent(&case(name).f).unwrap() != RatPoly::from_i64(&coeffs) {
            bad.push(format!("cubic resolvent of f_{name}"));
        }
    }
    if bad.is_empty() {
        Ok("g1_S5, g1_A5, h_S6, g1_S6 and both cubic resolvents coefficient-exact".into())
    } else {
        Err(format!("mismatch: {}", bad.join(", ")))
    }
}

fn printed_polynomials(reports: &[CaseReport]) -> Outcome {
    let targets = [("S5", "g2"), ("A5", "g2"), ("A6", "g1"), ("A7", "g1"), ("A7", "g2"), ("A8", "g1"), ("A8", "g2")];
    let mut bad = Vec::new();
    for (name, label) in targets {
        let stage = report(reports, name).resolvents.iter().find(|s| s.label == label).unwrap();
        let Some(g) = &stage.given else {
            bad.push(format!("{label}_{name}: not checked"));
            continue;
        };
        let ok = g.irreducibility.is_irreducible()
            && g.degree as u64 == stage.index
            && g.containment.primes >= 50
            && g.containment.violations.is_empty()
            && g.containment.verdict == ContainmentVerdict::Consistent;
        if !ok {
            bad.push(format!(
                "{label}_{name}: irreducible {}, degree {} (index {}), {:?} with {} violations over {} primes",
                g.irreducibility.is_irreducible(),
                g.degree,
                stage.index,
                g.containment.verdict,
                g.containment.violations.len(),
                g.containment.primes
            ));
        }
    }
    if bad.is_empty() {
        Ok("7 printed polynomials consistent over 50 primes".into())
    } else {
        Err(bad.join("; "))
    }
}

fn sweeps(reports: &[CaseReport]) -> Outcome {
    let mut bad = Vec::new();
    for name in EIGHT {
        let r = report(reports, name);
        let s = r.sweeps.iter().find(|s| s.path == "given");
        match s {
            Some(s) if s.report.bound == 10_000 && s.report.passed() => {}
            Some(s) => {
                let regen = r.sweeps.iter().find(|s| s.path == "regenerated").is_some_and(|s| s.report.passed());
                bad.push(format!(
                    "{name}: {} primes without a local root (first {:?}); regenerated pair passes: {regen}",
                    s.report.failures.len(),
                    &s.report.failures[..s.report.failures.len().min(3)]
                ));
            }
            None => bad.push(format!("{name}: no sweep")),
        }
    }
    let control = sweep_roots_everywhere(&[IntPoly::from_i64(&[-2, 0, 1]), IntPoly::from_i64(&[-3, 0, 1])], 10).unwrap();
    if !control.failures.contains(&5) {
        bad.push(format!("negative control failures {:?}", control.failures));
    }
    if bad.is_empty() {
        Ok("8 products have local roots at every p <= 10^4, negative control fails at 5".into())
    } else {
        Err(bad.join("; "))
    }
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240901);
    let poly = |rng: &mut ChaCha8Rng, max_deg: usize, b: i64| {
        let d = rng.gen_range(1..=max_deg);
        common::monic(&(0..d).map(|_| rng.gen_range(-b..=b)).collect::<Vec<_>>())
    };
    for _ in 0..100 {
        let (f, g) = (poly(&mut rng, 4, 6), poly(&mut rng, 4, 6));
        common::disc_multiplicative(&f, &g)?;
    }
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let roots: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        common::resolvents_brute_force(&roots, rng.gen_range(1..=n))?;
    }
    for _ in 0..50 {
        let roots: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-8..=8));
        common::cubic_matches_pairings(&roots)?;
    }
    for _ in 0..100 {
        common::newton_round_trip_int(&poly(&mut rng, 7, 20))?;
        let d = rng.gen_range(1..=6);
        let mut c: Vec<BigRational> =
            (0..d).map(|_| BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())).collect();
        c.push(BigRational::from_integer(1.into()));
        common::newton_round_trip_rat(&RatPoly::new(c))?;
    }
    let mut lifted = 0;
    for _ in 0..100 {
        let f = poly(&mut rng, 6, 30);
        let p = [3u64, 5, 7, 11, 13, 101][rng.gen_range(0..6)];
        if common::hensel_invariants(&f, p, rng.gen_range(1..12))? {
            lifted += 1;
        }
    }
    let groups = common::chain_matches_bfs(5040)?;
    for _ in 0..200 {
        let f = &poly(&mut rng, 4, 5) * &poly(&mut rng, 4, 5);
        common::sieve_sound(&f)?;
    }
    Ok(format!("100 disc, 100 resolvent, 50 cubic, 200 Newton, {lifted} Hensel, {groups} groups, 200 sieve"))
}

fn determinism(baseline: &str) -> Outcome {
    let opts = VerifyOptions::default();
    let cases = shipped_cases().unwrap();
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let reports: Vec<CaseReport> = pool.install(|| {
            use rayon::prelude::*;
            cases.par_iter().map(|c| verify_case(c, &opts)).collect()
        });
        if report_json(&reports) != baseline {
            return Err(format!("report with {threads} threads differs"));
        }
    }
    Ok(format!("{} byte reports identical with 1 and 4 threads", baseline.len()))
}

fn main() {
    let t = Instant::now();
    let opts = VerifyOptions::default();
    let reports: Vec<CaseReport> = shipped_cases().unwrap().iter().map(|c| verify_case(c, &opts)).collect();
    let baseline = report_json(&reports);
    let results: Vec<(&str, Outcome)> = vec![
        ("discriminants", discriminants()),
        ("modular factorizations", factorizations()),
        ("Galois certificates", galois_certificates()),
        ("coverings", coverings(&reports)),
        ("local coverage", local_coverage(&reports)),
        ("exact resolvents", exact_resolvents()),
        ("printed resolvents", printed_polynomials(&reports)),
        ("local root sweep", sweeps(&reports)),
        ("property suites", property_suites()),
        ("determinism", determinism(&baseline)),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(d) => println!("criterion {:>2} PASS  {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {d}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", results.len() - failed, results.len(), t.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
