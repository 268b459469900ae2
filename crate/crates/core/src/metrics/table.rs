//! `metric,occupation,month,value` tables. Missing values are written as
//! `NA`; economy-wide series use the occupation `ALL`.

use std::collections::BTreeMap;
use std::io::Read;

use serde::Deserialize;

use super::MetricsError;
use crate::month::Month;
use crate::series::{MetricSeries, OccupationSet};

pub const ALL_OCCUPATIONS: &str = "ALL";
pub const MISSING: &str = "NA";

fn occupation_key(s: &MetricSeries) -> &str {
    s.occupation.as_ref().map_or(ALL_OCCUPATIONS, |o| o.as_str())
}

/// Rows ordered by (metric, occupation, month).
pub fn write_metrics_csv(series: &[MetricSeries]) -> String {
    let mut sorted: Vec<&MetricSeries> = series.iter().collect();
    sorted.sort_by(|a, b| (&a.metric, occupation_key(a)).cmp(&(&b.metric, occupation_key(b))));
    let mut out = String::from("metric,occupation,month,value\n");
    for s in sorted {
        let occ = occupation_key(s);
        for (m, v) in s.months() {
            match v {
                Some(v) => out.push_str(&format!("{},{occ},{m},{v}\n", s.metric)),
                None => out.push_str(&format!("{},{occ},{m},{MISSING}\n", s.metric)),
            }
        }
    }
    out
}

#[derive(Deserialize)]
struct Row {
    metric: String,
    occupation: String,
    month: String,
    value: String,
}

/// Parses a table written by [`write_metrics_csv`]. Each (metric,
/// occupation) block must cover contiguous months.
pub fn read_metrics_csv<R: Read>(reader: R, occupations: &OccupationSet) -> Result<Vec<MetricSeries>, MetricsError> {
    let mut csv = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut blocks: BTreeMap<(String, String), (Month, Vec<Option<f64>>)> = BTreeMap::new();
    for (i, row) in csv.deserialize::<Row>().enumerate() {
        let line = i + 2;
        let bad = |message: String| MetricsError::Csv { line, message };
        let row = row.map_err(|e| bad(e.to_string()))?;
        let month: Month = row.month.parse().map_err(|e| bad(format!("{e}")))?;
        if row.occupation != ALL_OCCUPATIONS && occupations.resolve(&row.occupation).is_none() {
            return Err(bad(format!("unknown occupation {:?}", row.occupation)));
        }
        let value = if row.value == MISSING {
            None
        } else {
            Some(row.value.parse::<f64>().map_err(|_| bad(format!("invalid value {:?}", row.value)))?)
        };
        let (start, values) = blocks
            .entry((row.metric, row.occupation))
            .or_insert_with(|| (month, Vec::new()));
        if month != *start + values.len() as i32 {
            return Err(bad(format!("month {month} breaks the contiguous block starting {start}")));
        }
        values.push(value);
    }
    Ok(blocks
        .into_iter()
        .map(|((metric, occ), (start, values))| {
            let occupation = occupations.resolve(&occ);
            MetricSeries::new(metric, occupation, start, values)
        })
        .collect())
}
