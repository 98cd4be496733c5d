//! Parser/formatter round trips, idempotence, totality on arbitrary
//! input, and agreement of the shipped data files with the built-ins.

use proptest::prelude::*;

use tropkap::lifts::{example_lift_m0, example_matrix_a};
use tropkap::parse::{
    format_puiseux_matrix, format_rational, format_series, format_tropical_matrix,
    parse_puiseux_matrix, parse_rational, parse_series, parse_tropical_matrix,
};
use tropkap::{Rat, Series};

fn rational() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((rational(), rational()), 0..=5).prop_map(Series::from_terms)
}

proptest! {
    #[test]
    fn series_round_trip(s in series()) {
        let text = format_series(&s);
        let back = parse_series(&text).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn formatting_parsed_text_is_idempotent(s in series()) {
        let once = format_series(&s);
        let twice = format_series(&parse_series(&once).unwrap());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn rational_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    // totality: garbage in, Err out, never a panic
    #[test]
    fn parsers_never_panic(text in any::<String>()) {
        let _ = parse_rational(&text);
        let _ = parse_series(&text);
        let _ = parse_tropical_matrix(&text);
        let _ = parse_puiseux_matrix(&text);
    }

    #[test]
    fn parsers_never_panic_on_near_miss_input(
        text in "[-+0-9t^matrix/;() ]{0,40}",
    ) {
        let _ = parse_series(&text);
        let _ = parse_puiseux_matrix(&text);
    }
}

#[test]
fn shipped_a_file_matches_builtin() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/A.tmat");
    let text = std::fs::read_to_string(path).unwrap();
    let parsed = parse_tropical_matrix(&text).unwrap();
    assert_eq!(parsed, example_matrix_a());
    // canonical dump re-parses to the same matrix
    assert_eq!(
        parse_tropical_matrix(&format_tropical_matrix(&parsed)).unwrap(),
        parsed
    );
}

#[test]
fn shipped_m0_file_matches_builtin_and_round_trips_per_entry() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/M0.pmat");
    let text = std::fs::read_to_string(path).unwrap();
    let parsed = parse_puiseux_matrix(&text).unwrap();
    assert_eq!(parsed, example_lift_m0());

    for i in 0..parsed.rows() {
        for j in 0..parsed.cols() {
            let entry = parsed.get(i, j);
            let rendered = format_series(entry);
            assert_eq!(&parse_series(&rendered).unwrap(), entry);
            // formatting is byte-stable
            assert_eq!(format_series(&parse_series(&rendered).unwrap()), rendered);
        }
    }
    assert_eq!(
        parse_puiseux_matrix(&format_puiseux_matrix(&parsed)).unwrap(),
        parsed
    );
}

#[test]
fn delta_fixture_files_parse_to_their_cases() {
    use tropkap::lifts::{certify_rank5, DeltaCase};
    let read = |name: &str| {
        let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_puiseux_matrix(&std::fs::read_to_string(path).unwrap()).unwrap()
    };
    assert_eq!(
        certify_rank5(&read("M0.pmat")).unwrap().case,
        DeltaCase::EqualOne
    );
    assert_eq!(
        certify_rank5(&read("M0_delta0.pmat")).unwrap().case,
        DeltaCase::BelowOne
    );
    assert_eq!(
        certify_rank5(&read("M0_delta2.pmat")).unwrap().case,
        DeltaCase::AboveOne
    );
}
