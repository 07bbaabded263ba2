use std::collections::BTreeMap;

use vctest_harness::config::{parse_key_values, SweepConfig};
use vctest_harness::emit::to_csv;
use vctest_harness::sweep::sweep;

fn config(pairs: &[(&str, &str)]) -> SweepConfig {
    let map: BTreeMap<String, String> = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    SweepConfig::from_map(&map).unwrap()
}

#[test]
fn csv_is_identical_across_thread_counts_and_runs() {
    let base = [
        ("class", "intervals:k=1"),
        ("generator", "ssd:domain=line:12"),
        ("eps", "0.1"),
        ("grid", "2,8,32"),
        ("trials", "40"),
        ("seed", "11"),
    ];
    let mut one = base.to_vec();
    one.push(("threads", "1"));
    let mut three = base.to_vec();
    three.push(("threads", "3"));
    let a = to_csv(&sweep(&config(&one)).unwrap().records).unwrap();
    let b = to_csv(&sweep(&config(&three)).unwrap().records).unwrap();
    let c = to_csv(&sweep(&config(&one)).unwrap().records).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a.lines().count(), 1 + 2 * 3);
}

#[test]
fn one_sided_tester_accepts_every_yes_instance_at_m_1() {
    let cfg = config(&[
        ("generator", "chain:n=32,side=yes"),
        ("eps", "0.2"),
        ("grid", "1"),
        ("trials", "50"),
    ]);
    let out = sweep(&cfg).unwrap();
    assert_eq!(out.records.len(), 1);
    assert_eq!(out.records[0].accept_rate, 1.0);
    assert!(out.records[0].ci_low <= 1.0 && out.records[0].ci_high == 1.0);
}

#[test]
fn records_keep_rates_inside_their_intervals() {
    let cfg = config(&[("generator", "symmetric:n=100"), ("eps", "0.2"), ("grid", "20,80"), ("trials", "40")]);
    for r in sweep(&cfg).unwrap().records {
        assert!((0.0..=1.0).contains(&r.accept_rate));
        assert!(r.ci_low <= r.accept_rate && r.accept_rate <= r.ci_high);
    }
}

#[test]
fn chain_minimal_m_does_not_grow_with_eps() {
    let mut found = Vec::new();
    for eps in ["0.1", "0.2", "0.4"] {
        let cfg = config(&[
            ("generator", "chain:n=64"),
            ("eps", eps),
            ("grid", "4,8,16,32,64,128,256,512"),
            ("trials", "100"),
            ("seed", "7"),
        ]);
        found.push(sweep(&cfg).unwrap().minimal_m.expect("some grid size meets the target"));
    }
    assert!(found.windows(2).all(|w| w[0] >= w[1]), "{found:?}");
}

#[test]
fn interval_minimal_m_does_not_shrink_with_k() {
    let mut found = Vec::new();
    for k in 1..=3 {
        let class = format!("intervals:k={k}");
        let cfg = config(&[
            ("class", &class),
            ("generator", "ssd:domain=line:24"),
            ("eps", "0.1"),
            ("grid", "4,8,16,32,64,128"),
            ("trials", "100"),
            ("seed", "7"),
        ]);
        found.push(sweep(&cfg).unwrap().minimal_m.expect("some grid size meets the target"));
    }
    assert!(found.windows(2).all(|w| w[0] <= w[1]), "{found:?}");
}

#[test]
fn config_file_rules() {
    let map = parse_key_values("# sweep\ngenerator = chain:n=8\neps = 0.2\ngrid = 1,2\ntrials = 30\n").unwrap();
    let cfg = SweepConfig::from_map(&map).unwrap();
    assert_eq!(cfg.target, 2.0 / 3.0);
    assert_eq!(cfg.grid, vec![1, 2]);
    for bad in [
        "generator = chain:n=8\neps = 0.2\ngrid = 2,2\ntrials = 30",
        "generator = chain:n=8\neps = 0.2\ngrid = 1,2\ntrials = 29",
        "generator = chain:n=8\neps = 0.2\ngrid = 1,2\ntrials = 30\ncolour = red",
        "generator = chain:n=8\neps = 1.5\ngrid = 1\ntrials = 30",
    ] {
        let parsed = parse_key_values(bad).and_then(|m| SweepConfig::from_map(&m));
        assert!(parsed.is_err(), "{bad}");
    }
    assert!(parse_key_values("eps = 0.1\neps = 0.2").is_err());
}
