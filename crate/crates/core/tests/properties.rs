mod common;

use num_rational::BigRational;
use proptest::prelude::*;

use galcover::{IntPoly, RatPoly};

fn monic_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg).prop_flat_map(move |d| prop::collection::vec(-bound..=bound, d).prop_map(|c| common::monic(&c)))
}

fn check(r: common::Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn disc_is_multiplicative(f in monic_poly(4, 6), g in monic_poly(4, 6)) {
        check(common::disc_multiplicative(&f, &g))?;
    }

    #[test]
    fn resolvents_match_brute_force(roots in prop::collection::vec(-5i64..=5, 1..=7), k_seed in 0usize..100) {
        let k = 1 + k_seed % roots.len();
        check(common::resolvents_brute_force(&roots, k))?;
    }

    #[test]
    fn power_sums_round_trip(f in monic_poly(7, 20)) {
        check(common::newton_round_trip_int(&f))?;
    }

    #[test]
    fn rational_power_sums_round_trip(num in prop::collection::vec(-9i64..=9, 1..=6), den in prop::collection::vec(1i64..=5, 6)) {
        let mut c: Vec<BigRational> = num.iter().zip(&den).map(|(&a, &b)| BigRational::new(a.into(), b.into())).collect();
        c.push(BigRational::from_integer(1.into()));
        check(common::newton_round_trip_rat(&RatPoly::new(c)))?;
    }

    #[test]
    fn hensel_lift_invariants(f in monic_poly(6, 30), pi in 0usize..6, k in 1u32..12) {
        let p = [3u64, 5, 7, 11, 13, 101][pi];
        let ran = common::hensel_invariants(&f, p, k).map_err(TestCaseError::fail)?;
        prop_assume!(ran);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn cubic_resolvent_matches_root_pairings(roots in prop::array::uniform4(-8i64..=8)) {
        check(common::cubic_matches_pairings(&roots))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sieve_keeps_true_factor_degrees(a in monic_poly(4, 5), b in monic_poly(4, 5)) {
        check(common::sieve_sound(&(&a * &b)))?;
    }
}

#[test]
fn chain_orders_match_bfs_on_case_groups() {
    let checked = common::chain_matches_bfs(5040).unwrap();
    assert!(checked >= 20, "only {checked} groups checked");
}
