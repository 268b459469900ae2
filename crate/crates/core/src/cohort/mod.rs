//! GenAI versus non-GenAI worker cohorts: bucket-share outcome panels,
//! trend regression and DTW permutation tests.

pub mod dtw;
pub mod trend;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::Profile;
use crate::metrics::{build_transitions, tenure_bucket_series, unemployment_bucket_series, BucketEdges};
use crate::month::{Month, Window};
use crate::series::{align_pair, Occupation, SeriesError};
use crate::stats::{SplitRng, StatsError};

pub use dtw::{dtw_distance, dtw_permutation_test, z_score, DtwTestResult, DEFAULT_PERMUTATIONS};
pub use trend::{stars, trend_regression, TrendComparison, MIN_TREND_MONTHS};

#[derive(Debug, Error)]
pub enum CohortError {
    #[error("the {0} cohort has no experiences")]
    EmptyCohort(&'static str),
    #[error("series must be non-empty")]
    EmptySeries,
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("series of length {len} too short, need at least {needed}")]
    TooShort { len: usize, needed: usize },
    #[error("outcome {0}: regressors are collinear")]
    Degenerate(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

/// Two aligned monthly series of one outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortPanel {
    pub outcome: String,
    pub start: Month,
    /// Months from the analysis-window start to `start`.
    pub t0: i32,
    pub genai: Vec<f64>,
    pub non_genai: Vec<f64>,
}

/// Workers with at least one GenAI job keep the experiences starting at or
/// after their first GenAI job; everyone else keeps every experience.
pub fn split_cohorts(profiles: &[Profile]) -> (Vec<Profile>, Vec<Profile>) {
    let mut genai = Vec::new();
    let mut other = Vec::new();
    for p in profiles {
        match p.experiences.iter().filter(|e| e.is_genai).map(|e| e.start).min() {
            Some(first) => {
                let mut kept = p.clone();
                kept.experiences.retain(|e| e.start >= first);
                genai.push(kept);
            }
            None => other.push(p.clone()),
        }
    }
    (genai, other)
}

fn bucket_outcomes(
    profiles: &[Profile],
    scope: Option<&Occupation>,
    window: Window,
    reference: Month,
    edges: BucketEdges,
) -> Vec<crate::series::MetricSeries> {
    let experiences: Vec<_> = profiles.iter().flat_map(|p| p.experiences.iter().cloned()).collect();
    let transitions = build_transitions(profiles.iter().map(|p| p.experiences.as_slice()));
    let mut out: Vec<_> = tenure_bucket_series(&experiences, scope, window, reference, edges).into();
    out.extend(unemployment_bucket_series(&transitions, scope, window, reference, edges));
    out
}

/// Six panels: tenure and unemployment-gap bucket shares, three buckets
/// each. `scope = None` pools all occupations.
pub fn build_cohorts(
    profiles: &[Profile],
    window: Window,
    reference: Month,
    edges: BucketEdges,
    scope: Option<&Occupation>,
) -> Result<Vec<CohortPanel>, CohortError> {
    let (genai, other) = split_cohorts(profiles);
    let has_jobs = |ps: &[Profile]| ps.iter().any(|p| !p.experiences.is_empty());
    if !has_jobs(&genai) {
        return Err(CohortError::EmptyCohort("GenAI"));
    }
    if !has_jobs(&other) {
        return Err(CohortError::EmptyCohort("non-GenAI"));
    }
    let g = bucket_outcomes(&genai, scope, window, reference, edges);
    let n = bucket_outcomes(&other, scope, window, reference, edges);
    g.iter()
        .zip(&n)
        .map(|(gs, ns)| {
            let (start, gv, nv) = align_pair(gs, ns)?;
            Ok(CohortPanel {
                outcome: gs.metric.clone(),
                start,
                t0: start - window.start,
                genai: gv,
                non_genai: nv,
            })
        })
        .collect()
}

/// One report row per outcome: trend coefficients plus DTW statistics on
/// both the standardized and the raw scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortRow {
    pub trend: TrendComparison,
    pub dtw_z: DtwTestResult,
    pub dtw_raw: DtwTestResult,
}

/// Panel `i` uses permutation seed `SplitRng::new(seed).child(i)`.
pub fn compare_cohorts(panels: &[CohortPanel], permutations: usize, seed: u64) -> Result<Vec<CohortRow>, CohortError> {
    let root = SplitRng::new(seed);
    panels
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let s = root.child(i as u64).seed();
            Ok(CohortRow {
                trend: trend_regression(p)?,
                dtw_z: dtw_permutation_test(&p.genai, &p.non_genai, permutations, s, true)?,
                dtw_raw: dtw_permutation_test(&p.genai, &p.non_genai, permutations, s, false)?,
            })
        })
        .collect()
}

pub const COHORT_CSV_HEADER: &str =
    "outcome,beta,beta_p,beta_stars,delta,delta_p,delta_stars,dtw_z,dtw_z_p,dtw_raw,dtw_raw_p,permutations";

pub fn cohort_rows_csv(rows: &[CohortRow]) -> String {
    let mut out = String::from(COHORT_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let t = &r.trend;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            t.outcome,
            t.beta,
            t.beta_p,
            t.beta_stars,
            t.delta,
            t.delta_p,
            t.delta_stars,
            r.dtw_z.d_obs,
            r.dtw_z.p_value,
            r.dtw_raw.d_obs,
            r.dtw_raw.p_value,
            r.dtw_z.permutations
        ));
    }
    out
}
