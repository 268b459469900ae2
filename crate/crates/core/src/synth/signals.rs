//! Synthetic discussion and posting-index files. The posting index of each
//! occupation loads on the lagged Reddit signal of the same occupation.

use serde::{Deserialize, Serialize};

use super::pairs::{gen_leadlag_pair, PairSpec};
use super::SynthError;
use crate::ingest::SeriesSet;
use crate::month::Window;
use crate::series::{MetricSeries, Occupation, OccupationSet, Source};
use crate::stats::SplitRng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalSpec {
    pub occupations: Vec<Occupation>,
    /// Months covered by the generated files; usually wider than the
    /// analysis window so clipping is exercised.
    pub span: Window,
    pub ar: f64,
    pub coupling: f64,
    pub lag: usize,
    pub seed: u64,
}

impl Default for SignalSpec {
    fn default() -> Self {
        let m = |y, mo| crate::month::Month::new(y, mo).unwrap();
        SignalSpec {
            occupations: OccupationSet::default().iter().collect(),
            span: Window::new(m(2021, 6), m(2024, 12)).unwrap(),
            ar: 0.5,
            coupling: 0.8,
            lag: 2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSignals {
    pub spec: SignalSpec,
    pub discussion: SeriesSet,
    pub postings: SeriesSet,
}

/// Reddit intensity is `100 exp(x / 4)` for the driver `x`; news adds
/// independent noise to the same driver; the posting index is `5 y`.
pub fn gen_signals(spec: &SignalSpec) -> Result<SyntheticSignals, SynthError> {
    let root = SplitRng::new(spec.seed);
    let len = spec.span.len();
    let mut discussion = SeriesSet::new();
    let mut postings = SeriesSet::new();
    for (i, occ) in spec.occupations.iter().enumerate() {
        let child = root.child(i as u64);
        let pair = PairSpec {
            len,
            ar_x: spec.ar,
            ar_y: spec.ar,
            coupling: spec.coupling,
            lag: spec.lag,
            noise_sd: 1.0,
            seed: child.seed(),
        };
        let (x, y) = gen_leadlag_pair(&pair)?;
        let (noise, _) = gen_leadlag_pair(&PairSpec {
            coupling: 0.0,
            seed: child.child(1).seed(),
            ..pair.clone()
        })?;
        let reddit = x.iter().map(|v| Some(100.0 * (v / 4.0).exp())).collect();
        let news = x.iter().zip(&noise).map(|(v, n)| Some(100.0 * ((v + n) / 4.0).exp())).collect();
        let index = y.iter().map(|v| Some(5.0 * v)).collect();
        let start = spec.span.start;
        for (src, values) in [(Source::Reddit, reddit), (Source::News, news)] {
            discussion.insert(
                (occ.clone(), src),
                MetricSeries::new("discussion", Some(occ.clone()), start, values).with_source(src),
            );
        }
        postings.insert(
            (occ.clone(), Source::Indeed),
            MetricSeries::new("postings", Some(occ.clone()), start, index).with_source(Source::Indeed),
        );
    }
    Ok(SyntheticSignals {
        spec: spec.clone(),
        discussion,
        postings,
    })
}
