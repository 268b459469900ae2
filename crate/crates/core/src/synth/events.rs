//! Synthetic resume-style careers with planted parameters.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use super::SynthError;
use crate::ingest::profiles::MAX_EXPERIENCES;
use crate::ingest::{EducationEntry, Profile, WorkExperience};
use crate::month::{Month, Window};
use crate::series::{Occupation, OccupationSet};
use crate::stats::SplitRng;

const GENAI_TITLES: &[&str] = &[
    "Machine Learning Engineer",
    "AI Product Manager",
    "Applied Scientist",
    "Conversational Designer",
];
const GENAI_DESCRIPTIONS: &[&str] = &[
    "fine-tuning large language model assistants",
    "led prompt engineering for support bot",
    "built retrieval-augmented generation search",
    "shipped generative AI features",
    "evaluated LLM agents for internal tools",
];
const GENAI_COMPANIES: &[&str] = &["OpenAI", "Anthropic", "Hugging Face", "Mistral AI"];
const PLAIN_DESCRIPTIONS: &[&str] = &[
    "managed weekly operations",
    "coordinated client projects",
    "maintained quality records",
    "prepared monthly reports",
    "trained new team members",
];
const PLAIN_COMPANIES: &[&str] = &["Northwind Traders", "Contoso Ltd", "Globex", "Initech", "Umbrella Health"];

/// Career simulator settings. Each worker's first job starts inside
/// `first_start`; later jobs follow after geometric durations and gaps
/// until the reference month or ten experiences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventLogSpec {
    pub workers: usize,
    pub occupations: Vec<Occupation>,
    pub first_start: Window,
    pub reference: Month,
    /// Mean job length in months (end minus start).
    pub mean_duration: f64,
    /// Mean gap in months between consecutive jobs.
    pub mean_gap: f64,
    /// Probability that a job following a non-GenAI job is a GenAI job.
    pub transition_prob: f64,
    /// Probability that a GenAI job ends and the career continues;
    /// otherwise it is held through the reference month.
    pub genai_exit_prob: f64,
    /// Probability that the job after a GenAI job is again GenAI.
    pub genai_persistence: f64,
    /// Every worker holds a single job with no end month.
    pub open_ended: bool,
    /// Probability of an internship inside the education period.
    pub internship_prob: f64,
    pub seed: u64,
}

impl Default for EventLogSpec {
    fn default() -> Self {
        EventLogSpec {
            workers: 1000,
            occupations: OccupationSet::default().iter().collect(),
            first_start: Window::new(Month::new(2016, 1).unwrap(), Month::new(2022, 5).unwrap()).unwrap(),
            reference: Month::new(2024, 6).unwrap(),
            mean_duration: 14.0,
            mean_gap: 3.0,
            transition_prob: 0.1,
            genai_exit_prob: 0.5,
            genai_persistence: 0.5,
            open_ended: false,
            internship_prob: 0.1,
            seed: 0,
        }
    }
}

impl EventLogSpec {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: &str| Err(SynthError::InvalidSpec(m.into()));
        if self.workers == 0 {
            return bad("population size must be at least 1");
        }
        if self.occupations.is_empty() {
            return bad("occupation mix is empty");
        }
        if self.first_start.start > self.reference {
            return bad("first jobs start after the reference month");
        }
        if !(self.mean_duration >= 0.0 && self.mean_gap >= 0.0 && self.mean_duration.is_finite() && self.mean_gap.is_finite()) {
            return bad("mean duration and gap must be finite and non-negative");
        }
        for (name, p) in [
            ("transition_prob", self.transition_prob),
            ("genai_exit_prob", self.genai_exit_prob),
            ("genai_persistence", self.genai_persistence),
            ("internship_prob", self.internship_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SynthError::InvalidSpec(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Generated profiles with the spec that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticLog {
    pub spec: EventLogSpec,
    pub profiles: Vec<Profile>,
}

fn months_with_mean(mean: f64) -> Geometric {
    Geometric::new(1.0 / (1.0 + mean)).expect("probability in (0, 1]")
}

fn experience(rng: &mut ChaCha20Rng, person: &str, occupation: &Occupation, start: Month, genai: bool) -> WorkExperience {
    let (title, description, company) = if genai {
        if rng.random_bool(0.25) {
            (
                GENAI_TITLES.choose(rng).unwrap().to_string(),
                PLAIN_DESCRIPTIONS.choose(rng).unwrap().to_string(),
                GENAI_COMPANIES.choose(rng).unwrap().to_string(),
            )
        } else {
            (
                GENAI_TITLES.choose(rng).unwrap().to_string(),
                GENAI_DESCRIPTIONS.choose(rng).unwrap().to_string(),
                PLAIN_COMPANIES.choose(rng).unwrap().to_string(),
            )
        }
    } else {
        (
            format!("{occupation} Specialist"),
            PLAIN_DESCRIPTIONS.choose(rng).unwrap().to_string(),
            PLAIN_COMPANIES.choose(rng).unwrap().to_string(),
        )
    };
    WorkExperience {
        person_id: person.to_string(),
        title,
        description,
        company,
        start,
        end: None,
        occupation: occupation.clone(),
        is_genai: genai,
    }
}

fn career(spec: &EventLogSpec, rng: &mut ChaCha20Rng, person: &str) -> Profile {
    let duration = months_with_mean(spec.mean_duration);
    let gap = months_with_mean(spec.mean_gap);
    let first = spec.first_start.start + rng.random_range(0..spec.first_start.len() as i32);
    let school = EducationEntry {
        person_id: person.to_string(),
        start: first - 48,
        end: first - 2,
        level: "Bachelor".into(),
    };
    let mut jobs = Vec::new();
    if rng.random_bool(spec.internship_prob) {
        let occ = spec.occupations.choose(rng).unwrap();
        let mut intern = experience(rng, person, occ, school.start + 24, false);
        intern.title = "Summer Intern".into();
        intern.end = Some(intern.start + 2);
        jobs.push(intern);
    }

    let mut start = first;
    let mut genai = rng.random_bool(spec.transition_prob);
    loop {
        let occ = spec.occupations.choose(rng).unwrap();
        let mut job = experience(rng, person, occ, start, genai);
        if spec.open_ended {
            jobs.push(job);
            break;
        }
        let end = start + duration.sample(rng) as i32;
        let held = genai && !rng.random_bool(spec.genai_exit_prob);
        if held || end > spec.reference {
            jobs.push(job);
            break;
        }
        job.end = Some(end);
        jobs.push(job);
        let next = end + gap.sample(rng) as i32;
        if next > spec.reference || jobs.len() >= MAX_EXPERIENCES {
            break;
        }
        start = next;
        let p = if genai { spec.genai_persistence } else { spec.transition_prob };
        genai = rng.random_bool(p);
    }
    Profile {
        person_id: person.to_string(),
        experiences: jobs,
        education: vec![school],
    }
}

/// Generates `spec.workers` careers; worker `i` draws from its own stream.
pub fn gen_event_log(spec: &EventLogSpec) -> Result<SyntheticLog, SynthError> {
    spec.validate()?;
    let root = SplitRng::new(spec.seed);
    let profiles = (0..spec.workers)
        .map(|i| {
            let mut rng = root.stream(i as u64);
            career(spec, &mut rng, &format!("w{i:06}"))
        })
        .collect();
    Ok(SyntheticLog {
        spec: spec.clone(),
        profiles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{label_genai, GenAiRuleSet};

    #[test]
    fn deterministic_and_well_formed() {
        let spec = EventLogSpec {
            workers: 300,
            seed: 5,
            ..Default::default()
        };
        let a = gen_event_log(&spec).unwrap();
        assert_eq!(a, gen_event_log(&spec).unwrap());
        for p in &a.profiles {
            assert!(p.experiences.len() <= MAX_EXPERIENCES);
            assert!(p.experiences.windows(2).all(|w| w[0].start <= w[1].start));
            for e in &p.experiences {
                assert!(e.end.is_none_or(|end| end >= e.start && end <= spec.reference));
                assert!(e.start <= spec.reference);
            }
        }
    }

    #[test]
    fn planted_flags_match_rule_labels() {
        let rules = GenAiRuleSet::default();
        let log = gen_event_log(&EventLogSpec {
            workers: 500,
            transition_prob: 0.3,
            seed: 11,
            ..Default::default()
        })
        .unwrap();
        for e in log.profiles.iter().flat_map(|p| &p.experiences) {
            assert_eq!(label_genai(e, &rules), e.is_genai, "{e:?}");
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(gen_event_log(&EventLogSpec { workers: 0, ..Default::default() }).is_err());
        assert!(gen_event_log(&EventLogSpec { transition_prob: 1.5, ..Default::default() }).is_err());
    }
}
