//! Parse a few career profiles, drop the bad ones and label GenAI jobs.
//!
//!     cargo run --example ingest_profiles

use std::io::Cursor;

use bellwether::ingest::{load_profiles, prepare_profiles, GenAiRuleSet};
use bellwether::OccupationSet;

const PROFILES: &str = r#"# person_id, jobs, education
{"person_id":"a","education":[{"start":"2015-09","end":"2019-06","level":"bachelor"}],"experiences":[{"title":"Intern","description":"store support","company":"Shop","start":"2018-06","end":"2018-08","occupation":"Sales"},{"title":"Data analyst","description":"sales dashboards","company":"Shop","start":"2019-09","end":"2022-12","occupation":"Computer"},{"title":"ML engineer","description":"fine-tuning large language models","company":"Lab","start":"2023-02","occupation":"Computer"}]}
{"person_id":"b","education":[{"start":"2012-09","end":"2016-06","level":"bachelor"}],"experiences":[{"title":"Designer","company":"Studio","start":"2016-09","end":"2021-03","occupation":"Arts"}]}
{"person_id":"c","experiences":[{"title":"Chef","start":"2020-13","occupation":"Food"}]}
{"person_id":"b","experiences":[]}
not json
"#;

fn main() {
    let occupations = OccupationSet::with_extra("Other");
    let (raw, report) = load_profiles(Cursor::new(PROFILES), &occupations).expect("readable input");
    println!("{} lines, {} accepted", report.lines, report.accepted);
    for r in &report.rejected {
        println!("  line {}: {:?} ({})", r.line, r.reason, r.detail);
    }

    let (profiles, summary) = prepare_profiles(raw, &GenAiRuleSet::default());
    println!("excluded: {:?}", summary.exclusions.excluded);
    println!(
        "kept {} profiles, removed {} education-period jobs, {} of {} jobs labeled GenAI",
        profiles.len(),
        summary.education_period_jobs_removed,
        summary.genai_experiences,
        summary.experiences
    );
    for p in &profiles {
        for e in &p.experiences {
            let end = e.end.map_or("open".to_string(), |m| m.to_string());
            println!("  {} {:<14} {}..{} genai={}", p.person_id, e.title, e.start, end, e.is_genai);
        }
    }
}
