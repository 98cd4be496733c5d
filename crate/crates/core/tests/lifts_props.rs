//! Lift-level properties: the rank sandwich, certificate behaviour on
//! random lifts, and the monomial-degree identities behind the case
//! split.

use proptest::prelude::*;

use tropkap::lifts::{
    certify_rank5, degree_matrix, delta_of, delta_series, example_lift_m0, example_matrix_a,
    is_lift, kapranov_upper_bound, random_lift, DeltaCase,
};
use tropkap::puiseux::{determinant, rank, Valuation};
use tropkap::trop::tropical_rank;
use tropkap::{rat, ratio, TropMat, TropicalMatrix};

fn random_base(rows: usize, cols: usize, seed: u64) -> TropMat {
    let mut rng = tropkap::rng::SplitMix64::new(seed);
    TropicalMatrix::from_fn(rows, cols, |_, _| {
        // mix integer and half-integer entries
        ratio(
            rng.next_in_range(-6, 6),
            if rng.next_below(3) == 0 { 2 } else { 1 },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // rank of any lift bounds the tropical rank from above
    #[test]
    fn lift_rank_dominates_tropical_rank(
        rows in 1usize..=5,
        cols in 1usize..=5,
        seed in any::<u64>(),
        extra in 0usize..=2,
    ) {
        let base = random_base(rows, cols, seed);
        let lift = random_lift(&base, seed ^ 0x5eed, extra, &rat(1));
        prop_assert!(is_lift(&lift, &base));
        prop_assert_eq!(degree_matrix(&lift).unwrap(), base.clone());
        let (trop_r, _) = tropical_rank(&base).unwrap();
        let lift_r = rank(&lift).unwrap();
        prop_assert!(lift_r >= trop_r, "lift rank {} < tropical rank {}", lift_r, trop_r);
    }

    #[test]
    fn certificate_holds_for_random_lifts_of_a(seed in any::<u64>(), extra in 0usize..=3) {
        let a = example_matrix_a();
        let lift = random_lift(&a, seed, extra, &ratio(1, 2));
        let report = certify_rank5(&lift).unwrap();
        prop_assert_eq!(report.rank_lower_bound, 5);

        // the named minor is exactly nonzero
        let named = lift.submatrix(&report.nonzero_minor).unwrap();
        prop_assert!(!determinant(&named).unwrap().is_zero());

        // independently, the rank really is at least 5
        prop_assert!(rank(&lift).unwrap() >= 5);

        // and the sandwich is consistent at 5
        let upper = kapranov_upper_bound(&a, &example_lift_m0()).unwrap();
        prop_assert!(report.rank_lower_bound <= upper);
    }

    // the two monomial products named by the case split have forced
    // valuations for every lift of A
    #[test]
    fn monomial_degree_identities(seed in any::<u64>(), extra in 0usize..=3) {
        let a = example_matrix_a();
        let h = random_lift(&a, seed, extra, &rat(1));

        // h12 * h34 * h41 * h56 * h63 has valuation 0+0+2+0+1 = 3
        let m1 = &(&(&(h.get(0, 1) * h.get(2, 3)) * h.get(3, 0)) * h.get(4, 5)) * h.get(5, 2);
        prop_assert_eq!(m1.deg(), Valuation::Finite(rat(3)));

        // h12 * h25 * delta_series * h56 has valuation 1 + delta
        let delta = delta_series(&h).unwrap();
        let m2 = &(&(h.get(0, 1) * h.get(1, 4)) * &delta) * h.get(4, 5);
        prop_assert_eq!(m2.deg(), delta_of(&h).unwrap() + rat(1));
    }
}

#[test]
fn delta_cases_seen_across_seeds_and_each_report_is_consistent() {
    let a = example_matrix_a();
    let (mut lt, mut eq, mut gt) = (0usize, 0usize, 0usize);
    for seed in 0..400 {
        let lift = random_lift(&a, seed, 2, &rat(1));
        let report = certify_rank5(&lift).unwrap();
        let one = Valuation::Finite(rat(1));
        match report.case {
            DeltaCase::BelowOne => {
                assert!(report.delta < one);
                lt += 1;
            }
            DeltaCase::EqualOne => {
                assert!(report.delta == one);
                eq += 1;
            }
            DeltaCase::AboveOne => {
                assert!(report.delta > one);
                gt += 1;
            }
        }
    }
    assert_eq!(lt + eq + gt, 400);
    assert!(lt > 0, "no delta < 1 case in 400 seeds");
}

#[test]
fn fixture_lifts_hit_all_three_cases() {
    // constructed fixtures pin each branch exactly
    let m0 = example_lift_m0();
    assert_eq!(certify_rank5(&m0).unwrap().case, DeltaCase::EqualOne);

    let mut below = m0.clone();
    below.set(2, 2, tropkap::parse::parse_series("2 - t^2").unwrap());
    let report = certify_rank5(&below).unwrap();
    assert_eq!(report.case, DeltaCase::BelowOne);
    assert_eq!(report.delta, Valuation::Finite(rat(0)));
    assert_eq!(report.deg_h25, Valuation::Finite(rat(2)));

    let mut above = m0.clone();
    above.set(2, 2, tropkap::parse::parse_series("1 + t").unwrap());
    above.set(3, 2, tropkap::parse::parse_series("-1 - t + t^2").unwrap());
    let report = certify_rank5(&above).unwrap();
    assert_eq!(report.case, DeltaCase::AboveOne);
    assert_eq!(report.delta, Valuation::Finite(rat(2)));
    assert_eq!(report.deg_h25, Valuation::Finite(rat(3)));

    // a vanishing pivot subdeterminant counts as delta > 1
    let mut degenerate = m0.clone();
    degenerate.set(2, 2, tropkap::parse::parse_series("1").unwrap());
    degenerate.set(2, 3, tropkap::parse::parse_series("1").unwrap());
    degenerate.set(3, 2, tropkap::parse::parse_series("-1").unwrap());
    degenerate.set(3, 3, tropkap::parse::parse_series("-1").unwrap());
    let report = certify_rank5(&degenerate).unwrap();
    assert_eq!(report.delta, Valuation::Infinity);
    assert_eq!(report.case, DeltaCase::AboveOne);
    assert_eq!(report.deg_h25, Valuation::Finite(rat(3)));
}
