//! Brute-force recomputation of every labor metric by enumerating
//! (job, month) pairs. Deliberately slow and shares nothing with the
//! metrics module beyond the data types.

use std::collections::BTreeMap;

use super::SynthError;
use crate::ingest::WorkExperience;
use crate::month::{Month, Window};
use crate::series::{MetricSeries, Occupation};

pub const ORACLE_MAX_EXPERIENCES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleTables {
    /// `[starts, ends, active]` per occupation and month.
    pub counts: BTreeMap<(Occupation, Month), [u64; 3]>,
    pub series: Vec<MetricSeries>,
}

impl OracleTables {
    pub fn get(&self, metric: &str, occupation: Option<&Occupation>) -> Option<&MetricSeries> {
        self.series
            .iter()
            .find(|s| s.metric == metric && s.occupation.as_ref() == occupation)
    }
}

struct Move<'a> {
    prev: &'a WorkExperience,
    next: &'a WorkExperience,
}

impl Move<'_> {
    fn prev_end(&self) -> Month {
        self.prev.end.unwrap()
    }

    fn gap(&self) -> i32 {
        let g = self.next.start.ordinal() - self.prev_end().ordinal();
        if g < 0 {
            0
        } else {
            g
        }
    }
}

fn last_month(job: &WorkExperience, reference: Month) -> Month {
    match job.end {
        Some(e) if e < reference => e,
        _ => reference,
    }
}

fn bucket(d: i32, short_max: i32, medium_max: i32) -> usize {
    if d > medium_max {
        2
    } else if d > short_max {
        1
    } else {
        0
    }
}

/// Recomputes net change ratio, normalized tenure, normalized
/// unemployment duration, GenAI transition ratio and the six bucket-share
/// series with the same names and scopes as the metrics module.
pub fn oracle_metrics(
    experiences: &[WorkExperience],
    occupations: &[Occupation],
    window: Window,
    reference: Month,
    bucket_edges: (i32, i32),
) -> Result<OracleTables, SynthError> {
    if experiences.len() > ORACLE_MAX_EXPERIENCES {
        return Err(SynthError::Oversize(experiences.len()));
    }
    let (short_max, medium_max) = bucket_edges;
    let jobs: Vec<&WorkExperience> = experiences.iter().filter(|j| j.start <= reference).collect();
    let months: Vec<Month> = window.months().collect();

    let mut counts = BTreeMap::new();
    for occ in occupations {
        for &t in &months {
            counts.insert((occ.clone(), t), [0u64; 3]);
        }
    }
    for job in &jobs {
        for &t in &months {
            let Some(c) = counts.get_mut(&(job.occupation.clone(), t)) else {
                continue;
            };
            if job.start == t {
                c[0] += 1;
            }
            if job.end == Some(t) {
                c[1] += 1;
            }
            if job.start <= t && t <= last_month(job, reference) {
                c[2] += 1;
            }
        }
    }

    let mut people: BTreeMap<&str, Vec<&WorkExperience>> = BTreeMap::new();
    for job in experiences {
        people.entry(job.person_id.as_str()).or_default().push(job);
    }
    let mut moves = Vec::new();
    for list in people.values_mut() {
        list.sort_by(|a, b| a.start.cmp(&b.start).then(a.end.cmp(&b.end)));
        for i in 1..list.len() {
            if list[i - 1].end.is_some() {
                moves.push(Move {
                    prev: list[i - 1],
                    next: list[i],
                });
            }
        }
    }

    let mut series = Vec::new();
    for occ in occupations {
        let values = months
            .iter()
            .map(|&t| {
                let [s, e, a] = counts[&(occ.clone(), t)];
                if a == 0 {
                    None
                } else {
                    Some((s as i64 - e as i64) as f64 / a as f64)
                }
            })
            .collect();
        series.push(MetricSeries::new("ncr", Some(occ.clone()), window.start, values));
    }

    let labels = [
        format!("0_{short_max}"),
        format!("{}_{medium_max}", short_max + 1),
        format!("{}p", medium_max + 1),
    ];
    let scopes: Vec<Option<&Occupation>> = std::iter::once(None).chain(occupations.iter().map(Some)).collect();
    for scope in scopes {
        let hit = |o: &Occupation| scope.is_none() || scope == Some(o);
        let mut tenure = Vec::new();
        let mut unemployment = Vec::new();
        let mut ratio = Vec::new();
        let mut tenure_buckets = vec![Vec::new(); 3];
        let mut unemp_buckets = vec![Vec::new(); 3];
        for &t in &months {
            let span = reference.ordinal() - t.ordinal();

            let mut n = 0i64;
            let mut total = 0i64;
            let mut tb = [0u64; 3];
            for job in jobs.iter().filter(|j| j.start == t && hit(&j.occupation)) {
                let held = last_month(job, reference).ordinal() - job.start.ordinal();
                n += 1;
                total += held as i64;
                tb[bucket(held, short_max, medium_max)] += 1;
            }
            tenure.push((n > 0 && span > 0).then(|| total as f64 / (n * span as i64) as f64));
            for b in 0..3 {
                tenure_buckets[b].push((n > 0).then(|| tb[b] as f64 / n as f64));
            }

            let mut m = 0i64;
            let mut gaps = 0i64;
            let mut ub = [0u64; 3];
            for mv in moves
                .iter()
                .filter(|mv| mv.prev_end() == t && mv.next.start <= reference && hit(&mv.next.occupation))
            {
                m += 1;
                gaps += mv.gap() as i64;
                ub[bucket(mv.gap(), short_max, medium_max)] += 1;
            }
            unemployment.push((m > 0 && span > 0).then(|| gaps as f64 / (m * span as i64) as f64));
            for b in 0..3 {
                unemp_buckets[b].push((m > 0).then(|| ub[b] as f64 / m as f64));
            }

            let starts = experiences.iter().filter(|j| j.start == t && hit(&j.occupation)).count();
            let into = moves
                .iter()
                .filter(|mv| mv.next.start == t && hit(&mv.next.occupation) && !mv.prev.is_genai && mv.next.is_genai)
                .count();
            ratio.push((starts > 0).then(|| into as f64 / starts as f64));
        }
        let owner = scope.cloned();
        series.push(MetricSeries::new("tenure", owner.clone(), window.start, tenure));
        series.push(MetricSeries::new("unemployment", owner.clone(), window.start, unemployment));
        series.push(MetricSeries::new("genai_transition", owner.clone(), window.start, ratio));
        for (b, label) in labels.iter().enumerate() {
            series.push(MetricSeries::new(
                format!("tenure_bucket_{label}"),
                owner.clone(),
                window.start,
                tenure_buckets[b].clone(),
            ));
            series.push(MetricSeries::new(
                format!("unemployment_bucket_{label}"),
                owner.clone(),
                window.start,
                unemp_buckets[b].clone(),
            ));
        }
    }
    Ok(OracleTables { counts, series })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::OccupationSet;

    fn m(s: &str) -> Month {
        s.parse().unwrap()
    }

    #[test]
    fn single_job_hand_arithmetic() {
        let occ = OccupationSet::default().resolve("Legal").unwrap();
        let job = WorkExperience {
            person_id: "p".into(),
            title: "t".into(),
            description: "d".into(),
            company: "c".into(),
            start: m("2024-01"),
            end: Some(m("2024-03")),
            occupation: occ.clone(),
            is_genai: false,
        };
        let w = Window::new(m("2024-01"), m("2024-03")).unwrap();
        let o = oracle_metrics(&[job], &[occ.clone()], w, m("2024-05"), (3, 12)).unwrap();
        assert_eq!(o.counts[&(occ.clone(), m("2024-01"))], [1, 0, 1]);
        assert_eq!(o.counts[&(occ.clone(), m("2024-03"))], [0, 1, 1]);
        assert_eq!(o.get("ncr", Some(&occ)).unwrap().values, [Some(1.0), Some(0.0), Some(-1.0)]);
        // two months held out of four possible
        assert_eq!(o.get("tenure", Some(&occ)).unwrap().values[0], Some(0.5));
        assert!(o.get("unemployment", None).unwrap().values.iter().all(Option::is_none));
    }

    #[test]
    fn empty_log_all_missing() {
        let occs: Vec<Occupation> = OccupationSet::default().iter().collect();
        let o = oracle_metrics(&[], &occs, Window::default(), m("2024-06"), (3, 12)).unwrap();
        assert!(o.series.iter().all(|s| s.values.iter().all(Option::is_none)));
        assert!(o.counts.values().all(|c| *c == [0, 0, 0]));
    }

    #[test]
    fn oversize_rejected() {
        let occ = OccupationSet::default().resolve("Legal").unwrap();
        let job = WorkExperience {
            person_id: "p".into(),
            title: "t".into(),
            description: "d".into(),
            company: "c".into(),
            start: m("2024-01"),
            end: None,
            occupation: occ.clone(),
            is_genai: false,
        };
        let many = vec![job; ORACLE_MAX_EXPERIENCES + 1];
        assert!(matches!(
            oracle_metrics(&many, &[occ], Window::default(), m("2024-06"), (3, 12)),
            Err(SynthError::Oversize(_))
        ));
    }
}
