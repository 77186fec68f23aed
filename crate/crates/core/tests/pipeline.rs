use galcover::arith::integral_model;
use galcover::galois::certify_galois_group;
use galcover::modp::roots_mod_pk;
use galcover::pipeline::{
    has_padic_root, report_json, report_markdown, search_candidates, shipped_case, shipped_cases, verify_case,
    CaseSpec, SearchBox, VerifyOptions,
};
use galcover::IntPoly;

fn quick() -> VerifyOptions {
    VerifyOptions { sweep_bound: 2000, ..VerifyOptions::default() }
}

#[test]
fn case_files_round_trip() {
    for c in shipped_cases().unwrap() {
        let back = CaseSpec::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c, "{}", c.name);
    }
}

#[test]
fn s4_case_passes() {
    let r = verify_case(&shipped_case("S4").unwrap(), &quick());
    assert!(r.passed, "{:?}", r.stages);
}

#[test]
fn mutated_s4_case_fails() {
    let mut c = shipped_case("S4").unwrap();
    let mut coeffs = c.f.coeffs().to_vec();
    coeffs[0] = 5.into();
    c.f = IntPoly::new(coeffs);
    let r = verify_case(&c, &quick());
    assert!(!r.passed);
    assert!(!r.stage_passed("galois") || !r.stage_passed("factorizations"));
    assert!(!r.stage_passed("discriminant"));
}

#[test]
fn later_stages_run_after_a_failure() {
    let mut c = shipped_case("A4").unwrap();
    c.discriminant = "1".into();
    let r = verify_case(&c, &quick());
    assert!(!r.stage_passed("discriminant"));
    assert!(r.stage_passed("galois"));
    assert!(r.stage_passed("sweep_given"));
}

#[test]
fn reports_are_reproducible() {
    let c = shipped_case("A5").unwrap();
    let a = [verify_case(&c, &quick())];
    let b = [verify_case(&c, &quick())];
    assert_eq!(report_json(&a), report_json(&b));
    assert_eq!(report_markdown(&a), report_markdown(&b));
}

#[test]
fn search_finds_s3_witness() {
    let s = search_candidates("S3".parse().unwrap(), &SearchBox::uniform(3, -1, 1), u64::MAX, None).unwrap();
    let target = IntPoly::from_i64(&[-1, -1, 0, 1]);
    let hit = s.candidates.iter().find(|c| c.f == target).expect("x^3 - x - 1 among candidates");
    assert_eq!(hit.discriminant, "-23");
    assert_eq!(s.candidates[0].discriminant.trim_start_matches('-'), "23");
    let shipped = shipped_case("S3").unwrap();
    assert_eq!(shipped.f, target);
    assert!(verify_case(&shipped, &quick()).passed);
}

#[test]
fn search_box_around_s4_emits_f() {
    let b: SearchBox = "3..5,0..2,-5..-4,0..0".parse().unwrap();
    let s = search_candidates("S4".parse().unwrap(), &b, u64::MAX, None).unwrap();
    let f = shipped_case("S4").unwrap().f;
    assert!(s.candidates.iter().any(|c| c.f == f));
    assert!(certify_galois_group(&f, "S4".parse().unwrap(), &[3, 11, 23]).unwrap().verdict.is_proven());
}

#[test]
fn search_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    let g = "S3".parse().unwrap();
    let b = SearchBox::uniform(3, -2, 2);
    let full = search_candidates(g, &b, u64::MAX, None).unwrap();
    let first = search_candidates(g, &b, 40, Some(&path)).unwrap();
    assert_eq!(first.next, 40);
    let rest = search_candidates(g, &b, u64::MAX, Some(&path)).unwrap();
    assert_eq!(rest, full);
}

#[test]
fn sweep_decisions_agree_with_enumeration() {
    let mut compared = 0;
    for c in shipped_cases().unwrap() {
        let r = verify_case(&c, &VerifyOptions { sweep_bound: 1000, ..VerifyOptions::default() });
        let Some(s) = r.sweeps.iter().find(|s| s.path == "regenerated") else { continue };
        let stage = |i: usize| &r.resolvents[i].regenerated.as_ref().unwrap().polynomial;
        let hs: Vec<IntPoly> = [stage(0), stage(1)].iter().map(|g| integral_model(&g.monic()).unwrap().0).collect();
        for d in &s.report.ramified {
            for (h, &k) in hs.iter().zip(&d.precision) {
                let brute = !roots_mod_pk(h, d.p, k).is_empty();
                assert_eq!(has_padic_root(h, d.p, k), brute, "{} at p={} k={}", c.name, d.p, k);
                compared += 1;
            }
        }
    }
    assert!(compared > 0);
}
