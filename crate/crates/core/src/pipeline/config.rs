//! TOML analysis configuration with explicit defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::PipelineError;
use crate::leadlag::LagMode;
use crate::metrics::BucketEdges;
use crate::month::{Month, Window};
use crate::series::{OccupationSet, DEFAULT_EXTRA_OCCUPATION};

pub const SEED_ENV: &str = "BELLWETHER_SEED";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    #[default]
    Levels,
    FirstDifference,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Inputs {
    pub profiles: PathBuf,
    pub discussion: PathBuf,
    pub postings: PathBuf,
    /// Bundled keyword/company lists when absent.
    pub rules: Option<PathBuf>,
}

impl Default for Inputs {
    fn default() -> Self {
        Inputs {
            profiles: "profiles.jsonl".into(),
            discussion: "discussion.csv".into(),
            postings: "postings.csv".into(),
            rules: None,
        }
    }
}

/// Parameters of the `synth` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub workers: usize,
    pub mean_duration: f64,
    pub mean_gap: f64,
    pub transition_prob: f64,
    pub genai_exit_prob: f64,
    pub genai_persistence: f64,
    pub coupling: f64,
    pub coupling_lag: usize,
    pub signal_start: Month,
    pub signal_end: Month,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            workers: 5000,
            mean_duration: 14.0,
            mean_gap: 3.0,
            transition_prob: 0.1,
            genai_exit_prob: 0.5,
            genai_persistence: 0.5,
            coupling: 0.8,
            coupling_lag: 2,
            signal_start: Month::new(2021, 6).unwrap(),
            signal_end: Month::new(2024, 6).unwrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub window_start: Month,
    pub window_end: Month,
    /// Data-collection month; open jobs run to here.
    pub reference: Month,
    pub granger_alpha: f64,
    pub oos_alpha: f64,
    pub max_lag: usize,
    pub lag_mode: LagMode,
    pub horizons: Vec<usize>,
    pub training_window: usize,
    pub lag_candidates: Vec<usize>,
    pub permutations: usize,
    pub bucket_short_max: i32,
    pub bucket_medium_max: i32,
    pub seed: u64,
    pub transform: Transform,
    pub extra_occupation: String,
    pub inputs: Inputs,
    pub synth: SynthConfig,
    /// Directory relative input paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            window_start: Month::new(2022, 6).unwrap(),
            window_end: Month::new(2024, 6).unwrap(),
            reference: Month::new(2024, 6).unwrap(),
            granger_alpha: 0.01,
            oos_alpha: 0.05,
            max_lag: 7,
            lag_mode: LagMode::UpTo,
            horizons: vec![1, 3],
            training_window: 10,
            lag_candidates: vec![1, 2, 3],
            permutations: 2000,
            bucket_short_max: 3,
            bucket_medium_max: 12,
            seed: 0,
            transform: Transform::Levels,
            extra_occupation: DEFAULT_EXTRA_OCCUPATION.into(),
            inputs: Inputs::default(),
            synth: SynthConfig::default(),
            base_dir: PathBuf::from("."),
        }
    }
}

fn invalid(field: &str, message: impl Into<String>) -> PipelineError {
    PipelineError::Config {
        field: field.into(),
        message: message.into(),
    }
}

impl AnalysisConfig {
    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        toml::from_str(text).map_err(|e| invalid("<file>", e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Reads, applies the seed environment override and validates.
    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid("<file>", format!("cannot read {}: {e}", path.display())))?;
        let mut config = AnalysisConfig::from_toml(&text)?;
        config.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        config.apply_env(std::env::var(SEED_ENV).ok().as_deref())?;
        config.validate()?;
        Ok(config)
    }

    pub fn apply_env(&mut self, seed: Option<&str>) -> Result<(), PipelineError> {
        if let Some(s) = seed {
            self.seed = s
                .trim()
                .parse()
                .map_err(|_| invalid("seed", format!("{SEED_ENV}={s:?} is not an unsigned integer")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.window_end <= self.window_start {
            return Err(invalid(
                "window_end",
                format!("{} is not after window_start {}", self.window_end, self.window_start),
            ));
        }
        if self.reference < self.window_end {
            return Err(invalid(
                "reference",
                format!("{} is before window_end {}", self.reference, self.window_end),
            ));
        }
        for (field, a) in [("granger_alpha", self.granger_alpha), ("oos_alpha", self.oos_alpha)] {
            if !(a > 0.0 && a < 1.0) {
                return Err(invalid(field, format!("{a} is not in (0, 1)")));
            }
        }
        if self.max_lag == 0 {
            return Err(invalid("max_lag", "must be at least 1"));
        }
        if self.horizons.is_empty() || self.horizons.contains(&0) {
            return Err(invalid("horizons", "need at least one positive horizon"));
        }
        if self.training_window < 3 {
            return Err(invalid("training_window", "must be at least 3"));
        }
        if self.lag_candidates.is_empty() || self.lag_candidates.contains(&0) {
            return Err(invalid("lag_candidates", "need at least one positive lag"));
        }
        if self.permutations == 0 {
            return Err(invalid("permutations", "must be at least 1"));
        }
        if self.bucket_edges().validate().is_err() {
            return Err(invalid("bucket_medium_max", "bucket edges must satisfy 0 <= short < medium"));
        }
        if self.extra_occupation.trim().is_empty() {
            return Err(invalid("extra_occupation", "must be non-empty"));
        }
        if self.synth.signal_end <= self.synth.signal_start {
            return Err(invalid("synth.signal_end", "is not after synth.signal_start"));
        }
        Ok(())
    }

    pub fn window(&self) -> Window {
        Window::new(self.window_start, self.window_end).expect("validated")
    }

    pub fn bucket_edges(&self) -> BucketEdges {
        BucketEdges {
            short_max: self.bucket_short_max,
            medium_max: self.bucket_medium_max,
        }
    }

    pub fn occupations(&self) -> OccupationSet {
        OccupationSet::with_extra(&self.extra_occupation)
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
