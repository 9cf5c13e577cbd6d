use boussinesq_lab::config::NumberSet;
use boussinesq_lab::csvio::{read_csv, Table};
use boussinesq_lab::residual::GridSpec;
use boussinesq_lab::suite::{run_invariant_suite, SuiteConfig};
use proptest::prelude::*;

#[test]
fn verify_is_deterministic() {
    let config = SuiteConfig { quick: true, ..SuiteConfig::default() };
    let strip = |c: &SuiteConfig| {
        run_invariant_suite(c)
            .reports
            .into_iter()
            .map(|r| (r.check_name, r.measured.to_bits(), r.passed, r.detail))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&config), strip(&config));
}

#[test]
fn default_suite_has_no_unexpected_failures() {
    let outcome = run_invariant_suite(&SuiteConfig { quick: true, ..SuiteConfig::default() });
    let failures: Vec<String> = outcome.failures().map(|r| r.to_string()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn grids_reject_too_few_nodes_and_unsorted_times() {
    assert!(GridSpec::new(-1.0, 1.0, 8, vec![0.0]).is_err());
    assert!(GridSpec::new(-1.0, 1.0, 9, vec![1.0, 0.0]).is_err());
    assert!(GridSpec::new(-1.0, 1.0, 9, vec![0.0, 1.0]).is_ok());
}

proptest! {
    #[test]
    fn ranges_hit_both_endpoints(start in -100.0f64..100.0, len in 0.1f64..50.0, count in 2usize..200) {
        let stop = start + len;
        let v = NumberSet::Range { start, stop, count }.values().unwrap();
        prop_assert_eq!(v.len(), count);
        prop_assert_eq!(v[0], start);
        prop_assert!((v[count - 1] - stop).abs() <= 1e-12 * stop.abs().max(1.0));
        prop_assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn emitted_tables_read_back_bit_exactly(values in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..40)) {
        let mut table = Table::new(&["a", "b"]);
        for (j, v) in values.iter().enumerate() {
            table.push(vec![(*v).into(), (j as f64).into()]);
        }
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        let a = back.column("a").unwrap();
        prop_assert_eq!(a.len(), values.len());
        for (x, y) in a.iter().zip(&values) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
