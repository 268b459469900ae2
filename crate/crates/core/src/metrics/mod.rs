//! Labor-market metrics per occupation and month: net change ratio,
//! normalized tenure and unemployment duration, GenAI transition ratio and
//! duration bucket shares.

pub mod durations;
pub mod panel;
pub mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{Profile, WorkExperience};
use crate::month::{Month, Window};
use crate::series::{MetricSeries, OccupationSet};

pub use durations::{
    build_transitions, compute_bucket_shares, compute_genai_transition_ratio, compute_normalized_tenure,
    compute_unemployment_duration, tenure_bucket_series, transitions_from_profiles, unemployment_bucket_series,
    BucketEdges, BucketShares, TransitionRecord,
};
pub use panel::{build_event_panel, check_window, compute_ncr, EventPanel, PanelCell};
pub use table::{read_metrics_csv, write_metrics_csv};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("window ends {window_end}, after the reference month {reference}")]
    WindowAfterReference { window_end: Month, reference: Month },
    #[error("bucket shares need at least one duration")]
    EmptyDurations,
    #[error("invalid bucket edges {0:?}")]
    InvalidBuckets(BucketEdges),
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// Every metric series for one prepared dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricTables {
    pub panel: EventPanel,
    /// Sorted by metric name, then occupation (economy-wide rows first).
    pub series: Vec<MetricSeries>,
}

impl MetricTables {
    pub fn get(&self, metric: &str, occupation: Option<&str>) -> Option<&MetricSeries> {
        self.series
            .iter()
            .find(|s| s.metric == metric && s.occupation.as_ref().map(|o| o.as_str()) == occupation)
    }
}

pub fn all_experiences(profiles: &[Profile]) -> Vec<WorkExperience> {
    profiles.iter().flat_map(|p| p.experiences.iter().cloned()).collect()
}

/// Computes every metric per occupation plus economy-wide aggregates
/// (all but NCR, which is only defined per occupation).
pub fn compute_all(
    profiles: &[Profile],
    occupations: &OccupationSet,
    window: Window,
    reference: Month,
    edges: BucketEdges,
) -> Result<MetricTables, MetricsError> {
    let edges = edges.validate()?;
    let experiences = all_experiences(profiles);
    let transitions = transitions_from_profiles(profiles);
    let panel = build_event_panel(&experiences, occupations, window, reference)?;

    let mut series = compute_ncr(&panel);
    let occs: Vec<_> = occupations.iter().collect();
    let scopes = std::iter::once(None).chain(occs.iter().map(Some));
    for scope in scopes {
        series.push(compute_normalized_tenure(&experiences, scope, window, reference));
        series.push(compute_unemployment_duration(&transitions, scope, window, reference));
        series.push(compute_genai_transition_ratio(&transitions, &experiences, scope, window));
        series.extend(tenure_bucket_series(&experiences, scope, window, reference, edges));
        series.extend(unemployment_bucket_series(&transitions, scope, window, reference, edges));
    }
    sort_series(&mut series);
    Ok(MetricTables { panel, series })
}

pub(crate) fn sort_series(series: &mut [MetricSeries]) {
    series.sort_by(|a, b| {
        let key = |s: &MetricSeries| (s.metric.clone(), s.occupation.as_ref().map(|o| o.as_str().to_string()));
        key(a).cmp(&key(b))
    });
}
