//! Monthly labor metrics on a synthetic event log, checked against the
//! brute-force oracle.
//!
//!     cargo run --example labor_metrics

use bellwether::metrics::{all_experiences, compute_all, BucketEdges};
use bellwether::synth::{gen_event_log, oracle_metrics, EventLogSpec};
use bellwether::{Month, OccupationSet, Window};

fn main() {
    let spec = EventLogSpec {
        workers: 400,
        seed: 11,
        ..EventLogSpec::default()
    };
    let log = gen_event_log(&spec).expect("valid spec");
    let occupations = OccupationSet::with_extra("Other");
    let window = Window::new(Month::new(2022, 6).unwrap(), Month::new(2024, 6).unwrap()).unwrap();
    let reference = spec.reference;

    let tables = compute_all(&log.profiles, &occupations, window, reference, BucketEdges::default()).unwrap();
    for metric in ["ncr", "tenure", "unemployment", "genai_transition"] {
        let s = tables.get(metric, Some("Computer")).or_else(|| tables.get(metric, None)).unwrap();
        let shown: Vec<String> = s.values[..6]
            .iter()
            .map(|v| v.map_or("NA".into(), |x| format!("{x:.3}")))
            .collect();
        println!("{:<28} {}", s.label(), shown.join(" "));
    }

    let occs: Vec<_> = occupations.iter().collect();
    let oracle = oracle_metrics(&all_experiences(&log.profiles), &occs, window, reference, (3, 12)).unwrap();
    let mismatches = tables
        .series
        .iter()
        .filter(|s| oracle.get(&s.metric, s.occupation.as_ref()).map(|o| &o.values) != Some(&s.values))
        .count();
    println!("{} series, {} differ from the oracle", tables.series.len(), mismatches);
}
