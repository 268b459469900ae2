//! Monthly series with explicit missing values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::month::{Month, Window};

/// Closed-set occupation label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Occupation(String);

impl Occupation {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Occupation names shown in the published heatmaps. The taxonomy has one
/// more category than these; it is filled by [`DEFAULT_EXTRA_OCCUPATION`]
/// unless configured otherwise.
pub const NAMED_OCCUPATIONS: [&str; 12] = [
    "Architecture",
    "Arts",
    "Business",
    "Community",
    "Computer",
    "Education",
    "Healthcare",
    "Legal",
    "Life",
    "Management",
    "Production",
    "Sales",
];

pub const DEFAULT_EXTRA_OCCUPATION: &str = "Other";

/// The configured set of valid occupation names. Comparisons are exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccupationSet {
    names: Vec<String>,
}

impl OccupationSet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        OccupationSet { names }
    }

    /// The twelve named categories plus `extra`.
    pub fn with_extra(extra: &str) -> Self {
        OccupationSet::new(NAMED_OCCUPATIONS.iter().copied().chain(std::iter::once(extra)))
    }

    pub fn resolve(&self, name: &str) -> Option<Occupation> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| Occupation(self.names[i].clone()))
    }

    /// Occupations in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = Occupation> + '_ {
        self.names.iter().map(|n| Occupation(n.clone()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

impl Default for OccupationSet {
    fn default() -> Self {
        OccupationSet::with_extra(DEFAULT_EXTRA_OCCUPATION)
    }
}

/// Origin of an exogenous or outcome series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    News,
    Reddit,
    /// Job-posting index.
    Indeed,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::News => "news",
            Source::Reddit => "reddit",
            Source::Indeed => "indeed",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "news" => Ok(Source::News),
            "reddit" => Ok(Source::Reddit),
            "indeed" | "postings" => Ok(Source::Indeed),
            other => Err(format!("unknown source {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series {name} has a missing value at {month} inside its observed range")]
    InteriorMissing { name: String, month: Month },
    #[error("series {name} has no observed values")]
    Empty { name: String },
    #[error("series {a} and {b} do not overlap")]
    NoOverlap { a: String, b: String },
}

/// Values of one metric for one occupation over consecutive months.
/// `None` marks a month where the metric is undefined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSeries {
    pub metric: String,
    /// `None` for economy-wide series.
    pub occupation: Option<Occupation>,
    pub source: Option<Source>,
    pub start: Month,
    pub values: Vec<Option<f64>>,
}

impl MetricSeries {
    pub fn new(
        metric: impl Into<String>,
        occupation: Option<Occupation>,
        start: Month,
        values: Vec<Option<f64>>,
    ) -> Self {
        MetricSeries {
            metric: metric.into(),
            occupation,
            source: None,
            start,
            values,
        }
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = Some(source);
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn end(&self) -> Month {
        self.start + (self.values.len() as i32 - 1)
    }

    pub fn get(&self, month: Month) -> Option<f64> {
        let i = month - self.start;
        if i < 0 {
            return None;
        }
        self.values.get(i as usize).copied().flatten()
    }

    pub fn months(&self) -> impl Iterator<Item = (Month, Option<f64>)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (self.start + i as i32, *v))
    }

    /// Human-readable identifier, e.g. `ncr/Computer` or `discussion/Arts/reddit`.
    pub fn label(&self) -> String {
        let mut s = self.metric.clone();
        s.push('/');
        s.push_str(self.occupation.as_ref().map_or("ALL", |o| o.as_str()));
        if let Some(src) = self.source {
            s.push('/');
            s.push_str(src.as_str());
        }
        s
    }

    /// Restricts to months inside `window`.
    pub fn clip(&self, window: Window) -> MetricSeries {
        let values = window.months().map(|m| self.get(m)).collect();
        let mut out = self.clone();
        out.start = window.start;
        out.values = values;
        out.trim()
    }

    /// Drops leading and trailing missing months.
    pub fn trim(&self) -> MetricSeries {
        let first = self.values.iter().position(Option::is_some);
        let last = self.values.iter().rposition(Option::is_some);
        let mut out = self.clone();
        match (first, last) {
            (Some(a), Some(b)) => {
                out.start = self.start + a as i32;
                out.values = self.values[a..=b].to_vec();
            }
            _ => out.values.clear(),
        }
        out
    }

    /// Observed values after trimming, failing on any interior gap.
    pub fn contiguous(&self) -> Result<(Month, Vec<f64>), SeriesError> {
        let t = self.trim();
        if t.values.is_empty() {
            return Err(SeriesError::Empty { name: self.label() });
        }
        let mut out = Vec::with_capacity(t.values.len());
        for (m, v) in t.months() {
            out.push(v.ok_or_else(|| SeriesError::InteriorMissing {
                name: self.label(),
                month: m,
            })?);
        }
        Ok((t.start, out))
    }

    /// First differences; the first month becomes missing.
    pub fn differenced(&self) -> MetricSeries {
        let mut out = self.clone();
        out.values = std::iter::once(None)
            .chain(self.values.windows(2).map(|w| match (w[0], w[1]) {
                (Some(a), Some(b)) => Some(b - a),
                _ => None,
            }))
            .take(self.values.len())
            .collect();
        out
    }
}

/// Overlapping months of two series on which both are observed, as a
/// contiguous block.
pub fn align_pair(a: &MetricSeries, b: &MetricSeries) -> Result<(Month, Vec<f64>, Vec<f64>), SeriesError> {
    let start = a.start.max(b.start);
    let end = a.end().min(b.end());
    let window = Window::new(start, end).ok_or_else(|| SeriesError::NoOverlap {
        a: a.label(),
        b: b.label(),
    })?;
    let pair: Vec<(Option<f64>, Option<f64>)> = window.months().map(|m| (a.get(m), b.get(m))).collect();
    let first = pair.iter().position(|(x, y)| x.is_some() && y.is_some());
    let last = pair.iter().rposition(|(x, y)| x.is_some() && y.is_some());
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f, l),
        _ => {
            return Err(SeriesError::NoOverlap {
                a: a.label(),
                b: b.label(),
            })
        }
    };
    let mut xs = Vec::with_capacity(last - first + 1);
    let mut ys = Vec::with_capacity(last - first + 1);
    for (i, (x, y)) in pair[first..=last].iter().enumerate() {
        let month = window.start + (first + i) as i32;
        match (x, y) {
            (Some(x), Some(y)) => {
                xs.push(*x);
                ys.push(*y);
            }
            (None, _) => {
                return Err(SeriesError::InteriorMissing {
                    name: a.label(),
                    month,
                })
            }
            (_, None) => {
                return Err(SeriesError::InteriorMissing {
                    name: b.label(),
                    month,
                })
            }
        }
    }
    Ok((window.start + first as i32, xs, ys))
}
