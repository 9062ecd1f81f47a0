//! Randomized round-trip invariants for the emitters: parsing an emitted
//! table and re-emitting it reproduces the bytes, so 12 significant digits
//! survive any number of text round-trips.

use nuqr_cli::emit::{emit_csv, emit_json, format_value};
use nuqr_cli::{ResultRow, SweepTable};
use proptest::prelude::*;

fn table_strategy() -> impl Strategy<Value = SweepTable> {
    let value = prop_oneof![
        -1.0e3..1.0e3f64,
        -1.0..1.0f64,
        Just(0.0),
        Just(1.0),
        -1.0e-12..1.0e-12f64,
    ];
    let columns = prop_oneof![
        Just(vec!["phi", "steering_ab"]),
        Just(vec!["tau", "log_negativity", "coherence_l1"]),
        Just(vec!["t", "tau", "steering_ab", "steering_ba", "steering_asym"]),
    ];
    (columns, 1usize..40).prop_flat_map(move |(columns, rows)| {
        let width = columns.len();
        proptest::collection::vec(proptest::collection::vec(value.clone(), width), rows)
            .prop_map(move |data| SweepTable {
                columns: columns.clone(),
                rows: data
                    .into_iter()
                    .map(|values| ResultRow { values })
                    .collect(),
            })
    })
}

fn parse_csv(text: &str) -> (Vec<&str>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let columns = lines.next().unwrap().split(',').collect();
    let rows = lines
        .map(|line| line.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (columns, rows)
}

proptest! {
    #[test]
    fn csv_reemission_is_byte_identical(table in table_strategy()) {
        let first = emit_csv(&table).unwrap();
        let (columns, rows) = parse_csv(&first);
        let reparsed = SweepTable {
            columns: table.columns.clone(),
            rows: rows.into_iter().map(|values| ResultRow { values }).collect(),
        };
        prop_assert_eq!(columns, table.columns);
        let second = emit_csv(&reparsed).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn formatted_values_parse_within_12_digits(value in -1.0e6..1.0e6f64) {
        let text = format_value(value);
        let parsed: f64 = text.parse().unwrap();
        let scale = value.abs().max(1e-300);
        prop_assert!(((parsed - value) / scale).abs() < 1e-11);
        // Formatting is a fixed point after one round-trip.
        prop_assert_eq!(format_value(parsed), text);
    }

    #[test]
    fn json_and_csv_carry_identical_numbers(table in table_strategy()) {
        let csv = emit_csv(&table).unwrap();
        let json = emit_json(&table).unwrap();
        let (_, csv_rows) = parse_csv(&csv);
        let json_rows: Vec<&str> = json
            .lines()
            .filter(|l| l.trim_start().starts_with('{'))
            .collect();
        prop_assert_eq!(csv_rows.len(), json_rows.len());
        for (csv_row, json_row) in csv_rows.iter().zip(json_rows.iter()) {
            for (column, expected) in table.columns.iter().zip(csv_row.iter()) {
                let needle = format!("\"{column}\": ");
                let start = json_row.find(&needle).unwrap() + needle.len();
                let rest = &json_row[start..];
                let end = rest.find([',', '}']).unwrap_or(rest.len());
                let value: f64 = rest[..end].trim().parse().unwrap();
                prop_assert_eq!(value, *expected);
            }
        }
    }
}
