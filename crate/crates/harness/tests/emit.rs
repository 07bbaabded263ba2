use proptest::prelude::*;
use vctest_harness::emit::{from_csv, from_json, parse_records, render, to_csv, to_svg, Format, CSV_HEADER};
use vctest_harness::sweep::ExperimentRecord;

fn record(m: usize, rate: f64) -> ExperimentRecord {
    ExperimentRecord {
        class: "intervals".into(),
        params: "k=1|ssd:domain=line:12|side=no".into(),
        n: 12,
        vc: Some(2),
        lvc: None,
        eps: 0.1,
        m,
        trials: 40,
        accept_rate: rate,
        ci_low: rate / 2.0,
        ci_high: (rate + 1.0) / 2.0,
        seed: 3,
    }
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().skip(1).collect()
}

#[test]
fn empty_csv_is_the_header_alone() {
    assert_eq!(to_csv(&[]).unwrap(), format!("{CSV_HEADER}\n"));
    assert!(from_csv(&to_csv(&[]).unwrap()).unwrap().is_empty());
}

#[test]
fn one_record_gives_one_parseable_row() {
    let csv = to_csv(&[record(8, 0.25)]).unwrap();
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert_eq!(data_rows(&csv).len(), 1);
    assert_eq!(from_csv(&csv).unwrap(), vec![record(8, 0.25)]);
}

#[test]
fn wrong_header_is_rejected() {
    assert!(from_csv("class,m\nx,1\n").is_err());
}

#[test]
fn svg_needs_records() {
    assert!(to_svg(&[]).is_err());
    let svg = to_svg(&[record(4, 0.5), record(8, 0.75)]).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("polyline"));
    assert!(Format::parse("png").is_err());
}

proptest! {
    #[test]
    fn csv_json_csv_is_byte_identical(rows in prop::collection::vec((1usize..10_000, 0.0f64..=1.0), 0..8)) {
        let records: Vec<ExperimentRecord> = rows.iter().map(|&(m, r)| record(m, r)).collect();
        let csv = to_csv(&records).unwrap();
        let json = render(&from_csv(&csv).unwrap(), Format::Json).unwrap();
        let back = to_csv(&from_json(&json).unwrap()).unwrap();
        prop_assert_eq!(data_rows(&csv), data_rows(&back));
        prop_assert_eq!(parse_records(&json).unwrap(), records);
    }
}
