pub mod cohort;
pub mod ingest;
pub mod leadlag;
pub mod metrics;
pub mod month;
pub mod pipeline;
pub mod series;
pub mod stats;
pub mod synth;

pub use month::{Month, Window};
pub use series::{MetricSeries, Occupation, OccupationSet, Source};
