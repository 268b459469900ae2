//! Parsing, validation, filtering and GenAI labeling of the input datasets.

pub mod profiles;
pub mod rules;
pub mod series;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::month::Month;

pub use profiles::{
    apply_profile_filters, first_education_period, load_profiles, remove_education_period_jobs, write_profiles,
    EducationEntry, ExclusionReason, ExclusionReport, ParseReport, Profile, RejectReason, WorkExperience,
};
pub use rules::{label_genai, normalize_company, GenAiRuleSet};
pub use series::{load_series, write_series, SeriesKind, SeriesSet};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("duplicate observation for {key} at {month}")]
    DuplicateObservation { month: Month, key: String },
    #[error("series {key} is missing {month}")]
    InteriorGap { month: Month, key: String },
    #[error("no observations left inside the analysis window")]
    EmptySeries,
    #[error("invalid GenAI rules: {0}")]
    Rules(String),
}

/// Counts from the full profile preparation pass.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepareSummary {
    pub exclusions: ExclusionReport,
    pub education_period_jobs_removed: usize,
    pub experiences: usize,
    pub genai_experiences: usize,
}

/// Filters profiles, removes education-period jobs and assigns GenAI flags.
pub fn prepare_profiles(profiles: Vec<Profile>, rules: &GenAiRuleSet) -> (Vec<Profile>, PrepareSummary) {
    let (kept, exclusions) = apply_profile_filters(profiles);
    let mut summary = PrepareSummary {
        exclusions,
        ..Default::default()
    };
    let prepared: Vec<Profile> = kept
        .into_iter()
        .map(|p| {
            let before = p.experiences.len();
            let mut p = remove_education_period_jobs(p);
            summary.education_period_jobs_removed += before - p.experiences.len();
            for e in &mut p.experiences {
                e.is_genai = label_genai(e, rules);
                summary.genai_experiences += usize::from(e.is_genai);
            }
            summary.experiences += p.experiences.len();
            p
        })
        .collect();
    (prepared, summary)
}
