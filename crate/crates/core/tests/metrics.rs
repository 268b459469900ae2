use bellwether::ingest::{Profile, WorkExperience};
use bellwether::metrics::{
    all_experiences, compute_all, compute_genai_transition_ratio, read_metrics_csv, transitions_from_profiles,
    write_metrics_csv, BucketEdges, MetricTables,
};
use bellwether::synth::{oracle_metrics, OracleTables};
use bellwether::{Month, Occupation, OccupationSet, Window};
use proptest::prelude::*;

fn m(s: &str) -> Month {
    s.parse().unwrap()
}

fn job(person: &str, occ: &str, start: &str, end: Option<&str>, genai: bool) -> WorkExperience {
    WorkExperience {
        person_id: person.into(),
        title: "t".into(),
        description: "d".into(),
        company: "c".into(),
        start: m(start),
        end: end.map(m),
        occupation: OccupationSet::default().resolve(occ).unwrap(),
        is_genai: genai,
    }
}

fn profiles(jobs: Vec<WorkExperience>) -> Vec<Profile> {
    let mut by_person: std::collections::BTreeMap<String, Vec<WorkExperience>> = Default::default();
    for j in jobs {
        by_person.entry(j.person_id.clone()).or_default().push(j);
    }
    by_person
        .into_iter()
        .map(|(person_id, mut experiences)| {
            experiences.sort_by_key(|e| e.start);
            Profile {
                person_id,
                experiences,
                education: vec![],
            }
        })
        .collect()
}

fn both(ps: &[Profile], window: Window, reference: Month) -> (MetricTables, OracleTables) {
    let set = OccupationSet::default();
    let occs: Vec<Occupation> = set.iter().collect();
    let ours = compute_all(ps, &set, window, reference, BucketEdges::default()).unwrap();
    let oracle = oracle_metrics(&all_experiences(ps), &occs, window, reference, (3, 12)).unwrap();
    (ours, oracle)
}

fn assert_agree(ours: &MetricTables, oracle: &OracleTables) {
    assert_eq!(ours.series.len(), oracle.series.len());
    for s in &ours.series {
        let o = oracle.get(&s.metric, s.occupation.as_ref()).expect("oracle has series");
        assert_eq!(o.values, s.values, "{}", s.label());
    }
    for ((occ, month), counts) in &oracle.counts {
        let c = ours.panel.cell(occ, *month).unwrap();
        assert_eq!([c.starts, c.ends, c.active], *counts, "{occ} {month}");
    }
}

fn win(a: &str, b: &str) -> Window {
    Window::new(m(a), m(b)).unwrap()
}

#[test]
fn five_job_log() {
    let ps = profiles(vec![
        job("a", "Computer", "2022-01", Some("2022-08"), false),
        job("a", "Computer", "2022-10", None, true),
        job("b", "Computer", "2022-07", Some("2022-09"), false),
        job("b", "Computer", "2022-09", Some("2022-12"), false),
        job("c", "Computer", "2022-11", Some("2022-12"), false),
    ]);
    let (ours, oracle) = both(&ps, win("2022-06", "2022-12"), m("2022-12"));
    assert_agree(&ours, &oracle);
    // 2022-09: b's second job starts as the first one ends
    let ncr = ours.get("ncr", Some("Computer")).unwrap();
    assert_eq!(ncr.get(m("2022-09")), Some(0.0));
    // same-month handover is a zero gap
    let unemp = ours.get("unemployment", Some("Computer")).unwrap();
    assert_eq!(unemp.get(m("2022-09")), Some(0.0));
}

#[test]
fn six_jobs_three_occupations() {
    let ps = profiles(vec![
        job("p", "Arts", "2021-03", Some("2022-07"), false),
        job("p", "Legal", "2022-09", None, false),
        job("q", "Legal", "2022-06", Some("2023-01"), true),
        job("q", "Sales", "2023-04", Some("2023-09"), false),
        job("r", "Sales", "2022-08", Some("2022-08"), false),
        job("r", "Arts", "2023-02", None, true),
    ]);
    let (ours, oracle) = both(&ps, win("2022-06", "2023-12"), m("2024-06"));
    assert_agree(&ours, &oracle);
}

#[test]
fn transition_table() {
    // gaps 0, 2, 5 and 14 months into the same occupation
    let ps = profiles(vec![
        job("a", "Production", "2020-01", Some("2022-06"), false),
        job("a", "Production", "2022-06", None, false),
        job("b", "Production", "2021-01", Some("2022-06"), false),
        job("b", "Production", "2022-08", None, false),
        job("c", "Production", "2021-01", Some("2022-06"), false),
        job("c", "Production", "2022-11", None, false),
        job("d", "Production", "2021-01", Some("2022-06"), false),
        job("d", "Production", "2023-08", None, false),
    ]);
    let (ours, oracle) = both(&ps, win("2022-06", "2023-12"), m("2024-06"));
    assert_agree(&ours, &oracle);
    let shares: Vec<f64> = ["0_3", "4_12", "13p"]
        .iter()
        .map(|b| ours.get(&format!("unemployment_bucket_{b}"), Some("Production")).unwrap().get(m("2022-06")).unwrap())
        .collect();
    assert_eq!(shares, [0.5, 0.25, 0.25]);
}

#[test]
fn planted_ratio_recovered_exactly() {
    // every month: 10 people change jobs, one of them into a GenAI role
    let mut jobs = Vec::new();
    let window = win("2023-01", "2023-12");
    for (k, month) in window.months().enumerate() {
        for i in 0..10 {
            let id = format!("w{k}-{i}");
            jobs.push(job(&id, "Business", "2020-01", Some(&(month - 1).to_string()), false));
            jobs.push(job(&id, "Business", &month.to_string(), None, i == 0));
        }
    }
    let ps = profiles(jobs);
    let r = compute_genai_transition_ratio(&transitions_from_profiles(&ps), &all_experiences(&ps), None, window);
    assert!(r.values.iter().all(|v| *v == Some(0.1)));
    let (ours, oracle) = both(&ps, window, m("2024-06"));
    assert_agree(&ours, &oracle);
}

#[test]
fn csv_roundtrip() {
    let ps = profiles(vec![
        job("a", "Arts", "2022-01", Some("2022-09"), false),
        job("a", "Arts", "2023-01", None, true),
        job("b", "Legal", "2022-03", Some("2023-02"), false),
    ]);
    let (ours, _) = both(&ps, win("2022-06", "2023-06"), m("2024-06"));
    let text = write_metrics_csv(&ours.series);
    let back = read_metrics_csv(text.as_bytes(), &OccupationSet::default()).unwrap();
    assert_eq!(back, ours.series);
}

fn arb_log() -> impl Strategy<Value = Vec<WorkExperience>> {
    let occs = ["Arts", "Computer", "Legal", "Other"];
    prop::collection::vec((0usize..12, 0usize..4, 0i32..48, prop::option::of(0i32..24), any::<bool>()), 0..100).prop_map(
        move |raw| {
            raw.into_iter()
                .map(|(p, o, s, d, g)| {
                    let start = m("2021-01") + s;
                    WorkExperience {
                        person_id: format!("p{p}"),
                        title: "t".into(),
                        description: "d".into(),
                        company: "c".into(),
                        start,
                        end: d.map(|d| start + d),
                        occupation: OccupationSet::default().resolve(occs[o]).unwrap(),
                        is_genai: g,
                    }
                })
                .collect()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn arbitrary_logs_match_oracle(jobs in arb_log(), ws in 0i32..24, len in 1i32..18) {
        let window = Window::new(m("2022-01") + ws, m("2022-01") + ws + len).unwrap();
        let (ours, oracle) = both(&profiles(jobs), window, m("2025-12"));
        prop_assert_eq!(ours.series.len(), oracle.series.len());
        for s in &ours.series {
            prop_assert_eq!(&oracle.get(&s.metric, s.occupation.as_ref()).unwrap().values, &s.values, "{}", s.label());
        }
    }
}
