use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::ingest::WorkExperience;
use crate::month::{Month, Window};
use crate::series::{MetricSeries, Occupation, OccupationSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PanelCell {
    pub starts: u64,
    pub ends: u64,
    pub active: u64,
}

/// Monthly start/end/active counts per occupation.
///
/// A job is active from its start month through its end month inclusive;
/// a job without an end month is active through the reference month.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventPanel {
    pub window: Window,
    pub cells: BTreeMap<Occupation, Vec<PanelCell>>,
}

impl EventPanel {
    pub fn cell(&self, occupation: &Occupation, month: Month) -> Option<PanelCell> {
        let i = self.window.offset(month)?;
        self.cells.get(occupation).map(|v| v[i])
    }
}

pub fn check_window(window: Window, reference: Month) -> Result<(), MetricsError> {
    if window.end > reference {
        return Err(MetricsError::WindowAfterReference {
            window_end: window.end,
            reference,
        });
    }
    Ok(())
}

pub fn build_event_panel(
    experiences: &[WorkExperience],
    occupations: &OccupationSet,
    window: Window,
    reference: Month,
) -> Result<EventPanel, MetricsError> {
    check_window(window, reference)?;
    let len = window.len();
    // active counts via a difference array over window offsets
    let mut starts: BTreeMap<Occupation, Vec<u64>> = BTreeMap::new();
    let mut ends: BTreeMap<Occupation, Vec<u64>> = BTreeMap::new();
    let mut delta: BTreeMap<Occupation, Vec<i64>> = BTreeMap::new();
    for occ in occupations.iter() {
        starts.insert(occ.clone(), vec![0; len]);
        ends.insert(occ.clone(), vec![0; len]);
        delta.insert(occ, vec![0; len + 1]);
    }
    for job in experiences.iter().filter(|j| j.start <= reference) {
        let Some(d) = delta.get_mut(&job.occupation) else {
            continue;
        };
        if let Some(i) = window.offset(job.start) {
            starts.get_mut(&job.occupation).unwrap()[i] += 1;
        }
        if let Some(i) = job.end.and_then(|e| window.offset(e)) {
            ends.get_mut(&job.occupation).unwrap()[i] += 1;
        }
        let first = job.start.max(window.start);
        let last = job.end_or(reference).min(window.end);
        if first <= last {
            d[(first - window.start) as usize] += 1;
            d[(last - window.start) as usize + 1] -= 1;
        }
    }
    let cells = delta
        .into_iter()
        .map(|(occ, d)| {
            let mut running = 0i64;
            let s = &starts[&occ];
            let e = &ends[&occ];
            let v = (0..len)
                .map(|i| {
                    running += d[i];
                    PanelCell {
                        starts: s[i],
                        ends: e[i],
                        active: running as u64,
                    }
                })
                .collect();
            (occ, v)
        })
        .collect();
    Ok(EventPanel { window, cells })
}

/// `(starts - ends) / active`, missing where nobody is active.
pub fn compute_ncr(panel: &EventPanel) -> Vec<MetricSeries> {
    panel
        .cells
        .iter()
        .map(|(occ, cells)| {
            let values = cells
                .iter()
                .map(|c| (c.active > 0).then(|| (c.starts as i64 - c.ends as i64) as f64 / c.active as f64))
                .collect();
            MetricSeries::new("ncr", Some(occ.clone()), panel.window.start, values)
        })
        .collect()
}
