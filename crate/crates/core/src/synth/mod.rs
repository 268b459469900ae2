//! Seeded synthetic data with known ground truth, and a naive metric
//! oracle that shares no code with [`crate::metrics`].

pub mod events;
pub mod oracle;
pub mod pairs;
pub mod signals;

use thiserror::Error;

pub use events::{gen_event_log, EventLogSpec, SyntheticLog};
pub use oracle::{oracle_metrics, OracleTables, ORACLE_MAX_EXPERIENCES};
pub use pairs::{gen_leadlag_pair, gen_null_pair, PairSpec, BURN_IN};
pub use signals::{gen_signals, SignalSpec, SyntheticSignals};

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("oracle input has {0} experiences, above the limit")]
    Oversize(usize),
}
