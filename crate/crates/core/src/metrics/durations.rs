//! Right-censoring-normalized tenure and unemployment duration, GenAI
//! transition ratio, and duration bucket shares.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::ingest::{Profile, WorkExperience};
use crate::month::{Month, Window};
use crate::series::{MetricSeries, Occupation};

/// One job-to-job move: consecutive experiences of one person, the first
/// of which has ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionRecord {
    pub person_id: String,
    pub prev_end: Month,
    pub next_start: Month,
    pub prev_occupation: Occupation,
    pub next_occupation: Occupation,
    /// `next_start - prev_end`, floored at zero for overlapping jobs.
    pub gap_months: i32,
    pub prev_is_genai: bool,
    pub next_is_genai: bool,
}

impl TransitionRecord {
    pub fn into_genai(&self) -> bool {
        !self.prev_is_genai && self.next_is_genai
    }
}

/// Pairs each experience with the next one (by start) of the same person.
/// Pairs whose earlier job has no end month are skipped.
pub fn build_transitions<'a>(experiences_by_person: impl IntoIterator<Item = &'a [WorkExperience]>) -> Vec<TransitionRecord> {
    let mut out = Vec::new();
    for jobs in experiences_by_person {
        let mut sorted: Vec<&WorkExperience> = jobs.iter().collect();
        sorted.sort_by_key(|j| (j.start, j.end));
        for pair in sorted.windows(2) {
            let (prev, next) = (pair[0], pair[1]);
            let Some(prev_end) = prev.end else { continue };
            out.push(TransitionRecord {
                person_id: next.person_id.clone(),
                prev_end,
                next_start: next.start,
                prev_occupation: prev.occupation.clone(),
                next_occupation: next.occupation.clone(),
                gap_months: (next.start - prev_end).max(0),
                prev_is_genai: prev.is_genai,
                next_is_genai: next.is_genai,
            });
        }
    }
    out
}

pub fn transitions_from_profiles(profiles: &[Profile]) -> Vec<TransitionRecord> {
    build_transitions(profiles.iter().map(|p| p.experiences.as_slice()))
}

fn in_scope(occupation: &Occupation, scope: Option<&Occupation>) -> bool {
    scope.is_none_or(|s| s == occupation)
}

fn scope_name(scope: Option<&Occupation>) -> Option<Occupation> {
    scope.cloned()
}

/// Per-month integer sums `(count, numerator)` of the events keyed by month.
fn monthly_sums(events: impl Iterator<Item = (Month, i64)>, window: Window) -> Vec<(i64, i64)> {
    let mut acc = vec![(0i64, 0i64); window.len()];
    for (m, v) in events {
        if let Some(i) = window.offset(m) {
            acc[i].0 += 1;
            acc[i].1 += v;
        }
    }
    acc
}

/// Mean of `value / (reference - month)` within each month, computed as
/// `sum(value) / (count * (reference - month))`.
fn normalized_means(sums: &[(i64, i64)], window: Window, reference: Month) -> Vec<Option<f64>> {
    window
        .months()
        .zip(sums)
        .map(|(m, &(count, total))| {
            let span = (reference - m) as i64;
            (count > 0 && span > 0).then(|| total as f64 / (count * span) as f64)
        })
        .collect()
}

/// Normalized tenure by start-month cohort: mean over jobs starting in `t`
/// of months employed divided by `reference - t`. Ongoing jobs run to the
/// reference month.
pub fn compute_normalized_tenure(
    experiences: &[WorkExperience],
    scope: Option<&Occupation>,
    window: Window,
    reference: Month,
) -> MetricSeries {
    let events = experiences
        .iter()
        .filter(|j| j.start <= reference && in_scope(&j.occupation, scope))
        .map(|j| (j.start, (j.end_or(reference) - j.start) as i64));
    let sums = monthly_sums(events, window);
    MetricSeries::new("tenure", scope_name(scope), window.start, normalized_means(&sums, window, reference))
}

/// Normalized unemployment duration keyed by the month the previous job
/// ended and the occupation of the next job.
pub fn compute_unemployment_duration(
    transitions: &[TransitionRecord],
    scope: Option<&Occupation>,
    window: Window,
    reference: Month,
) -> MetricSeries {
    let events = transitions
        .iter()
        .filter(|t| t.next_start <= reference && in_scope(&t.next_occupation, scope))
        .map(|t| (t.prev_end, t.gap_months as i64));
    let sums = monthly_sums(events, window);
    MetricSeries::new(
        "unemployment",
        scope_name(scope),
        window.start,
        normalized_means(&sums, window, reference),
    )
}

/// Share of job starts in each month that are moves from a non-GenAI job
/// into a GenAI job. `scope = None` gives the economy-wide ratio.
pub fn compute_genai_transition_ratio(
    transitions: &[TransitionRecord],
    experiences: &[WorkExperience],
    scope: Option<&Occupation>,
    window: Window,
) -> MetricSeries {
    let mut into = vec![0u64; window.len()];
    let mut starts = vec![0u64; window.len()];
    for t in transitions.iter().filter(|t| t.into_genai() && in_scope(&t.next_occupation, scope)) {
        if let Some(i) = window.offset(t.next_start) {
            into[i] += 1;
        }
    }
    for j in experiences.iter().filter(|j| in_scope(&j.occupation, scope)) {
        if let Some(i) = window.offset(j.start) {
            starts[i] += 1;
        }
    }
    let values = into
        .iter()
        .zip(&starts)
        .map(|(&n, &d)| (d > 0).then(|| n as f64 / d as f64))
        .collect();
    MetricSeries::new("genai_transition", scope_name(scope), window.start, values)
}

/// Upper edges (inclusive) of the short and medium duration buckets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketEdges {
    pub short_max: i32,
    pub medium_max: i32,
}

impl Default for BucketEdges {
    fn default() -> Self {
        BucketEdges {
            short_max: 3,
            medium_max: 12,
        }
    }
}

impl BucketEdges {
    pub fn validate(self) -> Result<Self, MetricsError> {
        if self.short_max >= 0 && self.medium_max > self.short_max {
            Ok(self)
        } else {
            Err(MetricsError::InvalidBuckets(self))
        }
    }

    pub fn index(&self, months: i32) -> usize {
        if months <= self.short_max {
            0
        } else if months <= self.medium_max {
            1
        } else {
            2
        }
    }

    /// Labels such as `0_3`, `4_12`, `13p`.
    pub fn labels(&self) -> [String; 3] {
        [
            format!("0_{}", self.short_max),
            format!("{}_{}", self.short_max + 1, self.medium_max),
            format!("{}p", self.medium_max + 1),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketShares {
    pub counts: [u64; 3],
    pub shares: [f64; 3],
}

pub fn compute_bucket_shares(durations: &[i32], edges: BucketEdges) -> Result<BucketShares, MetricsError> {
    if durations.is_empty() {
        return Err(MetricsError::EmptyDurations);
    }
    let mut counts = [0u64; 3];
    for &d in durations {
        counts[edges.index(d)] += 1;
    }
    let total = durations.len() as f64;
    Ok(BucketShares {
        counts,
        shares: counts.map(|c| c as f64 / total),
    })
}

fn bucket_series(
    prefix: &str,
    events: impl Iterator<Item = (Month, i32)>,
    scope: Option<&Occupation>,
    window: Window,
    edges: BucketEdges,
) -> [MetricSeries; 3] {
    let mut by_month: BTreeMap<usize, Vec<i32>> = BTreeMap::new();
    for (m, d) in events {
        if let Some(i) = window.offset(m) {
            by_month.entry(i).or_default().push(d);
        }
    }
    let mut cols: [Vec<Option<f64>>; 3] = std::array::from_fn(|_| vec![None; window.len()]);
    for (i, durations) in by_month {
        let shares = compute_bucket_shares(&durations, edges).expect("non-empty by construction");
        for b in 0..3 {
            cols[b][i] = Some(shares.shares[b]);
        }
    }
    let labels = edges.labels();
    let mut cols = cols.into_iter();
    std::array::from_fn(|b| {
        MetricSeries::new(
            format!("{prefix}_bucket_{}", labels[b]),
            scope_name(scope),
            window.start,
            cols.next().unwrap(),
        )
    })
}

/// Monthly tenure bucket shares by start-month cohort. Ongoing jobs are
/// measured to the reference month.
pub fn tenure_bucket_series(
    experiences: &[WorkExperience],
    scope: Option<&Occupation>,
    window: Window,
    reference: Month,
    edges: BucketEdges,
) -> [MetricSeries; 3] {
    let events = experiences
        .iter()
        .filter(|j| j.start <= reference && in_scope(&j.occupation, scope))
        .map(|j| (j.start, j.end_or(reference) - j.start));
    bucket_series("tenure", events, scope, window, edges)
}

/// Monthly unemployment-gap bucket shares keyed by the previous job's end.
pub fn unemployment_bucket_series(
    transitions: &[TransitionRecord],
    scope: Option<&Occupation>,
    window: Window,
    reference: Month,
    edges: BucketEdges,
) -> [MetricSeries; 3] {
    let events = transitions
        .iter()
        .filter(|t| t.next_start <= reference && in_scope(&t.next_occupation, scope))
        .map(|t| (t.prev_end, t.gap_months));
    bucket_series("unemployment", events, scope, window, edges)
}
