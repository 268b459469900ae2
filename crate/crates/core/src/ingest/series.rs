//! `month,occupation,source,value` CSV files for discussion intensity and
//! the job-posting index.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::month::{Month, Window};
use crate::series::{MetricSeries, Occupation, OccupationSet, Source};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// News / Reddit discussion intensity; values must be non-negative.
    Discussion,
    /// Posting index in percent relative to a baseline; any real value.
    PostingIndex,
}

impl SeriesKind {
    pub fn metric_name(self) -> &'static str {
        match self {
            SeriesKind::Discussion => "discussion",
            SeriesKind::PostingIndex => "postings",
        }
    }

    fn accepts(self, source: Source) -> bool {
        match self {
            SeriesKind::Discussion => matches!(source, Source::News | Source::Reddit),
            SeriesKind::PostingIndex => source == Source::Indeed,
        }
    }
}

/// One gap-free series per (occupation, source).
pub type SeriesSet = BTreeMap<(Occupation, Source), MetricSeries>;

#[derive(Debug, Deserialize)]
struct Row {
    month: String,
    occupation: String,
    source: String,
    value: String,
}

/// Loads a series file and clips it to `window`.
///
/// Months outside the window are discarded before the gap check, so only
/// holes between a key's first and last in-window month are errors.
pub fn load_series<R: Read>(
    reader: R,
    kind: SeriesKind,
    window: Window,
    occupations: &OccupationSet,
) -> Result<SeriesSet, IngestError> {
    let mut csv = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut points: BTreeMap<(Occupation, Source), BTreeMap<Month, f64>> = BTreeMap::new();
    for (i, row) in csv.deserialize::<Row>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| IngestError::Csv { line, message: e.to_string() })?;
        let bad = |message: String| IngestError::Csv { line, message };
        let month: Month = row.month.parse().map_err(|e| bad(format!("{e}")))?;
        let occupation = occupations
            .resolve(&row.occupation)
            .ok_or_else(|| bad(format!("unknown occupation {:?}", row.occupation)))?;
        let source: Source = row.source.parse().map_err(bad)?;
        if !kind.accepts(source) {
            return Err(bad(format!("source {source} not valid for {} data", kind.metric_name())));
        }
        let value: f64 = row
            .value
            .parse()
            .map_err(|_| bad(format!("invalid value {:?}", row.value)))?;
        if !value.is_finite() || (kind == SeriesKind::Discussion && value < 0.0) {
            return Err(bad(format!("value {value} out of range")));
        }
        let slot = points.entry((occupation.clone(), source)).or_default();
        if slot.contains_key(&month) {
            return Err(IngestError::DuplicateObservation {
                month,
                key: format!("{occupation}/{source}"),
            });
        }
        if window.contains(month) {
            slot.insert(month, value);
        } else {
            // out-of-window rows still participate in the duplicate check
            slot.insert(month, f64::NAN);
        }
    }

    let mut out = SeriesSet::new();
    for ((occupation, source), obs) in points {
        let inside: Vec<(Month, f64)> = obs.into_iter().filter(|(m, _)| window.contains(*m)).collect();
        let Some(&(first, _)) = inside.first() else {
            continue;
        };
        let mut values = Vec::with_capacity(inside.len());
        for (k, (m, v)) in inside.iter().enumerate() {
            let expected = first + k as i32;
            if *m != expected {
                return Err(IngestError::InteriorGap {
                    month: expected,
                    key: format!("{occupation}/{source}"),
                });
            }
            values.push(Some(*v));
        }
        let series = MetricSeries::new(kind.metric_name(), Some(occupation.clone()), first, values).with_source(source);
        out.insert((occupation, source), series);
    }
    if out.is_empty() {
        return Err(IngestError::EmptySeries);
    }
    Ok(out)
}

/// Serializes a series set in the input CSV format, sorted by month,
/// occupation, then source.
pub fn write_series(set: &SeriesSet) -> String {
    let mut rows: Vec<(Month, &str, Source, f64)> = Vec::new();
    for ((occ, src), s) in set {
        for (m, v) in s.months() {
            if let Some(v) = v {
                rows.push((m, occ.as_str(), *src, v));
            }
        }
    }
    rows.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
    let mut out = String::from("month,occupation,source,value\n");
    for (m, occ, src, v) in rows {
        out.push_str(&format!("{m},{occ},{src},{v}\n"));
    }
    out
}
