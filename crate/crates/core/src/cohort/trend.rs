//! Level-gap and slope-difference regression between two cohort series.

use serde::{Deserialize, Serialize};

use super::{CohortError, CohortPanel};
use crate::stats::{ols_fit, DesignMatrix, StatsError};

pub const MIN_TREND_MONTHS: usize = 6;

/// `***` for p < 0.01, `**` for p < 0.05, `*` for p < 0.10.
pub fn stars(p: f64) -> &'static str {
    if p < 0.01 {
        "***"
    } else if p < 0.05 {
        "**"
    } else if p < 0.10 {
        "*"
    } else {
        ""
    }
}

/// `Y = alpha + beta G + gamma t + delta G t`; `beta` is the GenAI gap at
/// the window start and `delta` the monthly slope difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendComparison {
    pub outcome: String,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub beta_se: f64,
    pub delta_se: f64,
    pub beta_p: f64,
    pub delta_p: f64,
    pub beta_stars: String,
    pub delta_stars: String,
    pub n: usize,
}

pub fn trend_regression(panel: &CohortPanel) -> Result<TrendComparison, CohortError> {
    let t_len = panel.genai.len();
    if panel.non_genai.len() != t_len {
        return Err(CohortError::LengthMismatch(panel.non_genai.len(), t_len));
    }
    if t_len < MIN_TREND_MONTHS {
        return Err(CohortError::TooShort {
            len: t_len,
            needed: MIN_TREND_MONTHS,
        });
    }
    let n = 2 * t_len;
    let mut group = Vec::with_capacity(n);
    let mut time = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for (g, values) in [(0.0, &panel.non_genai), (1.0, &panel.genai)] {
        for (i, v) in values.iter().enumerate() {
            group.push(g);
            time.push((panel.t0 + i as i32) as f64);
            y.push(*v);
        }
    }
    let interaction = group.iter().zip(&time).map(|(g, t)| g * t).collect();
    let x = DesignMatrix::with_intercept(n)
        .column("genai", group)
        .column("t", time)
        .column("genai_t", interaction);
    let fit = ols_fit(&x, &y).map_err(|e| match e {
        StatsError::RankDeficient { .. } => CohortError::Degenerate(panel.outcome.clone()),
        other => CohortError::Stats(other),
    })?;
    Ok(TrendComparison {
        outcome: panel.outcome.clone(),
        alpha: fit.coefficients[0],
        beta: fit.coefficients[1],
        gamma: fit.coefficients[2],
        delta: fit.coefficients[3],
        beta_se: fit.std_errors[1],
        delta_se: fit.std_errors[3],
        beta_p: fit.p_values[1],
        delta_p: fit.p_values[3],
        beta_stars: stars(fit.p_values[1]).into(),
        delta_stars: stars(fit.p_values[3]).into(),
        n,
    })
}
