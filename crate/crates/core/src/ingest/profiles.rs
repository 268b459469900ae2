//! Line-delimited JSON profile records: parsing, quality filters and
//! removal of jobs held during the first education period.

use std::collections::{BTreeMap, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::month::Month;
use crate::series::{Occupation, OccupationSet};

pub const MAX_EXPERIENCES: usize = 10;
pub const MAX_EDUCATION: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkExperience {
    pub person_id: String,
    pub title: String,
    pub description: String,
    pub company: String,
    pub start: Month,
    /// `None` while the job is ongoing.
    pub end: Option<Month>,
    pub occupation: Occupation,
    pub is_genai: bool,
}

impl WorkExperience {
    /// Last month of the job, with ongoing jobs capped at `reference`.
    pub fn end_or(&self, reference: Month) -> Month {
        self.end.map_or(reference, |e| e.min(reference))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EducationEntry {
    pub person_id: String,
    pub start: Month,
    pub end: Month,
    pub level: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub person_id: String,
    /// Sorted by start month.
    pub experiences: Vec<WorkExperience>,
    pub education: Vec<EducationEntry>,
}

// Wire format of one input line.

#[derive(Debug, Serialize, Deserialize)]
struct ProfileRecord {
    person_id: String,
    #[serde(default)]
    experiences: Vec<ExperienceRecord>,
    #[serde(default)]
    education: Vec<EducationRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ExperienceRecord {
    #[serde(default)]
    title: Option<String>,
    #[serde(default)]
    description: Option<String>,
    #[serde(default)]
    company: Option<String>,
    start: String,
    #[serde(default)]
    end: Option<String>,
    occupation: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct EducationRecord {
    start: String,
    end: String,
    #[serde(default)]
    level: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    MalformedRecord,
    InvalidMonth,
    UnknownOccupation,
    DuplicatePersonId,
    EndBeforeStart,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub line: usize,
    pub reason: RejectReason,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseReport {
    pub lines: usize,
    pub accepted: usize,
    pub rejected: Vec<Rejection>,
}

impl ParseReport {
    pub fn counts(&self) -> BTreeMap<RejectReason, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rejected {
            *out.entry(r.reason).or_insert(0) += 1;
        }
        out
    }
}

fn parse_month(text: &str) -> Result<Month, (RejectReason, String)> {
    text.parse()
        .map_err(|e| (RejectReason::InvalidMonth, format!("{e}")))
}

fn convert(record: ProfileRecord, occupations: &OccupationSet) -> Result<Profile, (RejectReason, String)> {
    let person_id = record.person_id;
    let mut experiences = Vec::with_capacity(record.experiences.len());
    for e in record.experiences {
        let start = parse_month(&e.start)?;
        let end = e.end.as_deref().map(parse_month).transpose()?;
        if let Some(end) = end {
            if end < start {
                return Err((RejectReason::EndBeforeStart, format!("experience {start} > {end}")));
            }
        }
        let occupation = occupations
            .resolve(e.occupation.trim())
            .ok_or_else(|| (RejectReason::UnknownOccupation, e.occupation.clone()))?;
        experiences.push(WorkExperience {
            person_id: person_id.clone(),
            title: e.title.unwrap_or_default(),
            description: e.description.unwrap_or_default(),
            company: e.company.unwrap_or_default(),
            start,
            end,
            occupation,
            is_genai: false,
        });
    }
    let mut education = Vec::with_capacity(record.education.len());
    for e in record.education {
        let start = parse_month(&e.start)?;
        let end = parse_month(&e.end)?;
        if end < start {
            return Err((RejectReason::EndBeforeStart, format!("education {start} > {end}")));
        }
        education.push(EducationEntry {
            person_id: person_id.clone(),
            start,
            end,
            level: e.level,
        });
    }
    experiences.sort_by_key(|e| (e.start, e.end));
    education.sort_by_key(|e| (e.start, e.end));
    Ok(Profile {
        person_id,
        experiences,
        education,
    })
}

/// Parses one profile per non-blank line; lines starting with `#` are
/// comments. Bad records are skipped and reported; only I/O failures abort.
pub fn load_profiles<R: BufRead>(
    reader: R,
    occupations: &OccupationSet,
) -> Result<(Vec<Profile>, ParseReport), IngestError> {
    let mut report = ParseReport::default();
    let mut seen = HashSet::new();
    let mut profiles = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        report.lines += 1;
        let lineno = i + 1;
        let outcome = serde_json::from_str::<ProfileRecord>(&line)
            .map_err(|e| (RejectReason::MalformedRecord, e.to_string()))
            .and_then(|r| convert(r, occupations))
            .and_then(|p| {
                if seen.insert(p.person_id.clone()) {
                    Ok(p)
                } else {
                    Err((RejectReason::DuplicatePersonId, p.person_id))
                }
            });
        match outcome {
            Ok(p) => {
                report.accepted += 1;
                profiles.push(p);
            }
            Err((reason, detail)) => report.rejected.push(Rejection {
                line: lineno,
                reason,
                detail,
            }),
        }
    }
    Ok((profiles, report))
}

/// Writes profiles in the input wire format, one per line.
pub fn write_profiles<W: Write>(mut out: W, profiles: &[Profile]) -> Result<(), IngestError> {
    for p in profiles {
        let record = ProfileRecord {
            person_id: p.person_id.clone(),
            experiences: p
                .experiences
                .iter()
                .map(|e| ExperienceRecord {
                    title: Some(e.title.clone()),
                    description: Some(e.description.clone()),
                    company: Some(e.company.clone()),
                    start: e.start.to_string(),
                    end: e.end.map(|m| m.to_string()),
                    occupation: e.occupation.to_string(),
                })
                .collect(),
            education: p
                .education
                .iter()
                .map(|e| EducationRecord {
                    start: e.start.to_string(),
                    end: e.end.to_string(),
                    level: e.level.clone(),
                })
                .collect(),
        };
        serde_json::to_writer(&mut out, &record).map_err(|e| IngestError::Io(e.into()))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionReason {
    TooManyExperiences,
    TooManyEducation,
    MissingExperienceField,
}

/// Tally of excluded profiles. A profile failing several rules is counted
/// under the first failing rule in declaration order of [`ExclusionReason`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub kept: usize,
    pub excluded: BTreeMap<ExclusionReason, usize>,
}

impl ExclusionReport {
    pub fn total_excluded(&self) -> usize {
        self.excluded.values().sum()
    }
}

fn exclusion(profile: &Profile) -> Option<ExclusionReason> {
    let blank = |s: &str| s.trim().is_empty();
    if profile.experiences.len() > MAX_EXPERIENCES {
        Some(ExclusionReason::TooManyExperiences)
    } else if profile.education.len() > MAX_EDUCATION {
        Some(ExclusionReason::TooManyEducation)
    } else if profile
        .experiences
        .iter()
        .any(|e| blank(&e.company) || blank(&e.title) || blank(&e.description))
    {
        Some(ExclusionReason::MissingExperienceField)
    } else {
        None
    }
}

/// Keeps profiles with at most ten experiences, at most five education
/// entries, and a company, title and description on every experience.
pub fn apply_profile_filters(profiles: Vec<Profile>) -> (Vec<Profile>, ExclusionReport) {
    let mut report = ExclusionReport::default();
    let kept: Vec<Profile> = profiles
        .into_iter()
        .filter(|p| match exclusion(p) {
            Some(reason) => {
                *report.excluded.entry(reason).or_insert(0) += 1;
                false
            }
            None => true,
        })
        .collect();
    report.kept = kept.len();
    (kept, report)
}

/// Secondary-school entries do not start the post-secondary period.
fn is_secondary(level: &str) -> bool {
    let l = level.to_ascii_lowercase();
    l.contains("high school") || l.contains("secondary school")
}

/// The first continuous post-secondary education period, if any.
///
/// Entries chain while the next one starts no later than the calendar year
/// after the current period ends.
pub fn first_education_period(education: &[EducationEntry]) -> Option<(Month, Month)> {
    let mut entries: Vec<&EducationEntry> = education.iter().filter(|e| !is_secondary(&e.level)).collect();
    entries.sort_by_key(|e| (e.start, e.end));
    let (first, rest) = entries.split_first()?;
    let (start, mut end) = (first.start, first.end);
    for e in rest {
        if e.start.year() <= end.year() + 1 {
            end = end.max(e.end);
        } else {
            break;
        }
    }
    Some((start, end))
}

/// Drops experiences lying entirely inside the first education period.
/// Ongoing experiences are never inside it.
pub fn remove_education_period_jobs(mut profile: Profile) -> Profile {
    if let Some((start, end)) = first_education_period(&profile.education) {
        profile
            .experiences
            .retain(|e| !(e.start >= start && e.end.is_some_and(|x| x <= end)));
    }
    profile
}
