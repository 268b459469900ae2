//! Batch stages behind the `bellwether` commands. Every stage writes its
//! outputs into one run directory and stamps them with the config hash.

pub mod config;

use std::collections::BTreeMap;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohort::{build_cohorts, cohort_rows_csv, compare_cohorts, CohortPanel, CohortRow};
use crate::ingest::{
    load_profiles, load_series, prepare_profiles, write_profiles, write_series, GenAiRuleSet, ParseReport,
    PrepareSummary, Profile, SeriesKind, SeriesSet,
};
use crate::leadlag::{
    emit_heatmap_data, granger_grid, granger_heatmap, oos_heatmap, rolling_oos_series, GrangerCell, HeatmapMatrix,
    OosResult,
};
use crate::metrics::{compute_all, write_metrics_csv, MetricTables};
use crate::month::{Month, Window};
use crate::series::{MetricSeries, Occupation, Source};
use crate::stats::SplitRng;
use crate::synth::{gen_event_log, gen_signals, EventLogSpec, SignalSpec};

pub use config::{AnalysisConfig, Inputs, SynthConfig, Transform, SEED_ENV};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("data error: {0}")]
    Data(String),
    #[error("infeasible analysis: {0}")]
    Infeasible(String),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config { .. } => 2,
            PipelineError::Data(_) => 3,
            PipelineError::Infeasible(_) => 4,
        }
    }
}

fn data_err(context: &str, e: impl std::fmt::Display) -> PipelineError {
    PipelineError::Data(format!("{context}: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Ingest,
    Metrics,
    Cohort,
    Granger,
    Forecast,
    Synth,
    Report,
}

impl Command {
    pub const ANALYSIS_STAGES: [Command; 5] = [
        Command::Ingest,
        Command::Metrics,
        Command::Cohort,
        Command::Granger,
        Command::Forecast,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Ingest => "ingest",
            Command::Metrics => "metrics",
            Command::Cohort => "cohort",
            Command::Granger => "granger",
            Command::Forecast => "forecast",
            Command::Synth => "synth",
            Command::Report => "report",
        }
    }
}

/// JSON wrapper carried by every stage output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub stage: String,
    pub config_hash: String,
    pub config: AnalysisConfig,
    pub data: T,
}

/// A resolved configuration bound to an output directory.
#[derive(Debug, Clone)]
pub struct Run {
    pub config: AnalysisConfig,
    pub hash: String,
    pub dir: PathBuf,
}

impl Run {
    /// Without an explicit directory, outputs go to `runs/<hash>-<UTC time>`.
    pub fn new(config: AnalysisConfig, dir: Option<PathBuf>) -> Result<Run, PipelineError> {
        config.validate()?;
        let hash = config.hash();
        let dir = dir.unwrap_or_else(|| {
            let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%SZ");
            PathBuf::from("runs").join(format!("{hash}-{stamp}"))
        });
        fs::create_dir_all(&dir).map_err(|e| data_err(&format!("cannot create {}", dir.display()), e))?;
        Ok(Run { config, hash, dir })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn write(&self, name: &str, contents: &str) -> Result<(), PipelineError> {
        let path = self.path(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| data_err(&format!("cannot create {}", parent.display()), e))?;
        }
        fs::write(&path, contents).map_err(|e| data_err(&format!("cannot write {}", path.display()), e))
    }

    /// CSV text preceded by a `# config_hash=` comment line.
    fn write_csv(&self, name: &str, body: &str) -> Result<(), PipelineError> {
        self.write(name, &format!("# config_hash={}\n{body}", self.hash))
    }

    fn write_stage<T: Serialize>(&self, stage: Command, data: &T) -> Result<(), PipelineError> {
        let env = Envelope {
            stage: stage.name().to_string(),
            config_hash: self.hash.clone(),
            config: self.config.clone(),
            data,
        };
        let json = serde_json::to_string_pretty(&env).expect("stage output serializes");
        self.write(&format!("{}.json", stage.name()), &(json + "\n"))
    }
}

/// Prepared profiles and clipped signal series.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub profiles: Vec<Profile>,
    pub parse: ParseReport,
    pub summary: PrepareSummary,
    pub discussion: SeriesSet,
    pub postings: SeriesSet,
}

fn open(path: &Path) -> Result<fs::File, PipelineError> {
    fs::File::open(path).map_err(|e| data_err(&format!("cannot open {}", path.display()), e))
}

pub fn load_inputs(config: &AnalysisConfig) -> Result<Prepared, PipelineError> {
    let occupations = config.occupations();
    let rules = match &config.inputs.rules {
        Some(p) => {
            let path = config.resolve(p);
            let text = fs::read_to_string(&path).map_err(|e| data_err(&format!("cannot read {}", path.display()), e))?;
            GenAiRuleSet::parse(&text).map_err(|e| data_err(&path.display().to_string(), e))?
        }
        None => GenAiRuleSet::default(),
    };
    let profiles_path = config.resolve(&config.inputs.profiles);
    let (raw, parse) = load_profiles(BufReader::new(open(&profiles_path)?), &occupations)
        .map_err(|e| data_err(&profiles_path.display().to_string(), e))?;
    let (profiles, summary) = prepare_profiles(raw, &rules);
    let window = config.window();
    let series = |p: &Path, kind| -> Result<SeriesSet, PipelineError> {
        let path = config.resolve(p);
        load_series(open(&path)?, kind, window, &occupations).map_err(|e| data_err(&path.display().to_string(), e))
    };
    Ok(Prepared {
        profiles,
        parse,
        summary,
        discussion: series(&config.inputs.discussion, SeriesKind::Discussion)?,
        postings: series(&config.inputs.postings, SeriesKind::PostingIndex)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestSummary {
    pub parse: ParseReport,
    pub prepare: PrepareSummary,
    pub profiles: usize,
    /// Months per clipped series, keyed by `metric/occupation/source`.
    pub series_lengths: BTreeMap<String, usize>,
}

pub fn stage_ingest(run: &Run, prepared: &Prepared) -> Result<IngestSummary, PipelineError> {
    let series_lengths = prepared
        .discussion
        .values()
        .chain(prepared.postings.values())
        .map(|s| (s.label(), s.len()))
        .collect();
    let summary = IngestSummary {
        parse: prepared.parse.clone(),
        prepare: prepared.summary.clone(),
        profiles: prepared.profiles.len(),
        series_lengths,
    };
    run.write_csv("discussion.clipped.csv", &write_series(&prepared.discussion))?;
    run.write_csv("postings.clipped.csv", &write_series(&prepared.postings))?;
    run.write_stage(Command::Ingest, &summary)?;
    Ok(summary)
}

pub fn compute_metrics(config: &AnalysisConfig, prepared: &Prepared) -> Result<MetricTables, PipelineError> {
    compute_all(
        &prepared.profiles,
        &config.occupations(),
        config.window(),
        config.reference,
        config.bucket_edges(),
    )
    .map_err(|e| PipelineError::Infeasible(e.to_string()))
}

pub fn stage_metrics(run: &Run, prepared: &Prepared) -> Result<MetricTables, PipelineError> {
    let tables = compute_metrics(&run.config, prepared)?;
    run.write_csv("metrics.csv", &write_metrics_csv(&tables.series))?;
    run.write_stage(Command::Metrics, &tables)?;
    Ok(tables)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortReport {
    pub panels: Vec<CohortPanel>,
    pub rows: Vec<CohortRow>,
}

pub fn stage_cohort(run: &Run, prepared: &Prepared) -> Result<CohortReport, PipelineError> {
    let c = &run.config;
    let infeasible = |e: crate::cohort::CohortError| PipelineError::Infeasible(e.to_string());
    let panels = build_cohorts(&prepared.profiles, c.window(), c.reference, c.bucket_edges(), None).map_err(infeasible)?;
    let seed = SplitRng::new(c.seed).child(2).seed();
    let rows = compare_cohorts(&panels, c.permutations, seed).map_err(infeasible)?;
    run.write_csv("cohort.csv", &cohort_rows_csv(&rows))?;
    let report = CohortReport { panels, rows };
    run.write_stage(Command::Cohort, &report)?;
    Ok(report)
}

pub const LEADLAG_TARGETS: [&str; 4] = ["postings", "ncr", "tenure", "unemployment"];
pub const DISCUSSION_SOURCES: [Source; 2] = [Source::News, Source::Reddit];

fn transformed(s: &MetricSeries, t: Transform) -> MetricSeries {
    match t {
        Transform::Levels => s.clone(),
        Transform::FirstDifference => s.differenced(),
    }
}

/// `(occupation, y, x)` triples for one target metric and source.
fn leadlag_pairs(
    config: &AnalysisConfig,
    prepared: &Prepared,
    tables: &MetricTables,
    target: &str,
    source: Source,
) -> Vec<(Occupation, MetricSeries, MetricSeries)> {
    config
        .occupations()
        .iter()
        .filter_map(|occ| {
            let y = if target == "postings" {
                prepared.postings.get(&(occ.clone(), Source::Indeed)).cloned()
            } else {
                tables.get(target, Some(occ.as_str())).cloned()
            }?;
            let x = prepared.discussion.get(&(occ.clone(), source))?.clone();
            Some((occ, transformed(&y, config.transform), transformed(&x, config.transform)))
        })
        .collect()
}

fn heatmap_name(kind: &str, target: &str, source: Source) -> String {
    format!("heatmaps/{kind}_{target}_{source}")
}

fn write_heatmap(run: &Run, stem: &str, matrix: &HeatmapMatrix) -> Result<(), PipelineError> {
    if matrix.rows.is_empty() {
        return Ok(());
    }
    let (values, mask) = emit_heatmap_data(matrix).map_err(|e| PipelineError::Infeasible(e.to_string()))?;
    run.write_csv(&format!("{stem}_values.csv"), &values)?;
    run.write_csv(&format!("{stem}_mask.csv"), &mask)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrangerPanel {
    pub target: String,
    pub source: Source,
    pub heatmap: HeatmapMatrix,
    pub rows: Vec<(Occupation, Vec<GrangerCell>)>,
}

pub fn stage_granger(run: &Run, prepared: &Prepared, tables: &MetricTables) -> Result<Vec<GrangerPanel>, PipelineError> {
    let c = &run.config;
    let mut panels = Vec::new();
    for target in LEADLAG_TARGETS {
        for source in DISCUSSION_SOURCES {
            let rows: Vec<(Occupation, Vec<GrangerCell>)> = leadlag_pairs(c, prepared, tables, target, source)
                .into_iter()
                .map(|(occ, y, x)| {
                    let cells = granger_grid(&y, &x, c.max_lag, c.granger_alpha, c.lag_mode).unwrap_or_else(|e| {
                        (1..=c.max_lag)
                            .map(|lag| GrangerCell {
                                lag,
                                result: None,
                                skipped: Some(e.to_string()),
                            })
                            .collect()
                    });
                    (occ, cells)
                })
                .collect();
            let named: Vec<(String, Vec<GrangerCell>)> =
                rows.iter().map(|(o, cells)| (o.to_string(), cells.clone())).collect();
            let heatmap = granger_heatmap(&named, c.max_lag, c.granger_alpha);
            write_heatmap(run, &heatmap_name("granger", target, source), &heatmap)?;
            panels.push(GrangerPanel {
                target: target.into(),
                source,
                heatmap,
                rows,
            });
        }
    }
    run.write_stage(Command::Granger, &panels)?;
    Ok(panels)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OosCell {
    pub horizon: usize,
    pub result: Option<OosResult>,
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastPanel {
    pub target: String,
    pub source: Source,
    pub heatmap: HeatmapMatrix,
    pub rows: Vec<(Occupation, Vec<OosCell>)>,
}

pub fn stage_forecast(run: &Run, prepared: &Prepared, tables: &MetricTables) -> Result<Vec<ForecastPanel>, PipelineError> {
    let c = &run.config;
    let mut panels = Vec::new();
    for target in LEADLAG_TARGETS {
        for source in DISCUSSION_SOURCES {
            let rows: Vec<(Occupation, Vec<OosCell>)> = leadlag_pairs(c, prepared, tables, target, source)
                .into_iter()
                .map(|(occ, y, x)| {
                    let cells = c
                        .horizons
                        .iter()
                        .map(|&h| match rolling_oos_series(&y, &x, h, c.training_window, &c.lag_candidates) {
                            Ok(r) => OosCell {
                                horizon: h,
                                result: Some(r),
                                skipped: None,
                            },
                            Err(e) => OosCell {
                                horizon: h,
                                result: None,
                                skipped: Some(e.to_string()),
                            },
                        })
                        .collect();
                    (occ, cells)
                })
                .collect();
            let named: Vec<(String, Vec<Option<OosResult>>)> = rows
                .iter()
                .map(|(o, cells)| (o.to_string(), cells.iter().map(|c| c.result.clone()).collect()))
                .collect();
            let heatmap = oos_heatmap(&named, &c.horizons, c.oos_alpha);
            write_heatmap(run, &heatmap_name("oos", target, source), &heatmap)?;
            panels.push(ForecastPanel {
                target: target.into(),
                source,
                heatmap,
                rows,
            });
        }
    }
    run.write_stage(Command::Forecast, &panels)?;
    Ok(panels)
}

/// What `synth` planted, echoed next to the generated files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthManifest {
    pub events: EventLogSpec,
    pub signals: SignalSpec,
    pub profiles: usize,
    pub experiences: usize,
}

/// Writes `profiles.jsonl`, `discussion.csv`, `postings.csv`, a manifest
/// and a `config.toml` whose inputs point at those files.
pub fn stage_synth(run: &Run) -> Result<SynthManifest, PipelineError> {
    let c = &run.config;
    let s = &c.synth;
    let root = SplitRng::new(c.seed);
    let occupations: Vec<Occupation> = c.occupations().iter().collect();
    let events = EventLogSpec {
        workers: s.workers,
        occupations: occupations.clone(),
        first_start: Window::new(Month::new(2016, 1).unwrap().min(c.window_start - 1), c.window_start - 1)
            .expect("non-empty"),
        reference: c.reference,
        mean_duration: s.mean_duration,
        mean_gap: s.mean_gap,
        transition_prob: s.transition_prob,
        genai_exit_prob: s.genai_exit_prob,
        genai_persistence: s.genai_persistence,
        open_ended: false,
        internship_prob: 0.1,
        seed: root.child(0).seed(),
    };
    let signals = SignalSpec {
        occupations,
        span: Window::new(s.signal_start, s.signal_end).expect("validated"),
        ar: 0.5,
        coupling: s.coupling,
        lag: s.coupling_lag,
        seed: root.child(1).seed(),
    };
    let invalid = |e: crate::synth::SynthError| PipelineError::Config {
        field: "synth".into(),
        message: e.to_string(),
    };
    let log = gen_event_log(&events).map_err(invalid)?;
    let sig = gen_signals(&signals).map_err(invalid)?;

    let mut jsonl = format!("# config_hash={}\n", run.hash).into_bytes();
    write_profiles(&mut jsonl, &log.profiles).map_err(|e| data_err("profiles", e))?;
    run.write("profiles.jsonl", &String::from_utf8(jsonl).expect("utf-8"))?;
    run.write_csv("discussion.csv", &write_series(&sig.discussion))?;
    run.write_csv("postings.csv", &write_series(&sig.postings))?;

    let mut analysis = c.clone();
    analysis.inputs = Inputs::default();
    run.write("config.toml", &format!("# generated by synth, config_hash={}\n{}", run.hash, analysis.to_toml()))?;

    let manifest = SynthManifest {
        profiles: log.profiles.len(),
        experiences: log.profiles.iter().map(|p| p.experiences.len()).sum(),
        events,
        signals,
    };
    run.write_stage(Command::Synth, &manifest)?;
    Ok(manifest)
}

fn read_stage<T: DeserializeOwned>(run: &Run, stage: Command) -> Result<Option<Envelope<T>>, PipelineError> {
    let path = run.path(&format!("{}.json", stage.name()));
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).map_err(|e| data_err(&path.display().to_string(), e))?;
    let env: Envelope<T> = serde_json::from_str(&text).map_err(|e| data_err(&path.display().to_string(), e))?;
    if env.config_hash != run.hash {
        return Err(PipelineError::Config {
            field: "config_hash".into(),
            message: format!(
                "{} was produced with config {}, current config is {}",
                path.display(),
                env.config_hash,
                run.hash
            ),
        });
    }
    Ok(Some(env))
}

/// Runs one analysis stage, loading inputs and metrics as needed.
pub fn run_stage(run: &Run, stage: Command) -> Result<(), PipelineError> {
    match stage {
        Command::Synth => stage_synth(run).map(|_| ()),
        Command::Report => stage_report(run).map(|_| ()),
        other => {
            let prepared = load_inputs(&run.config)?;
            match other {
                Command::Ingest => stage_ingest(run, &prepared).map(|_| ()),
                Command::Metrics => stage_metrics(run, &prepared).map(|_| ()),
                Command::Cohort => stage_cohort(run, &prepared).map(|_| ()),
                Command::Granger => {
                    let tables = compute_metrics(&run.config, &prepared)?;
                    stage_granger(run, &prepared, &tables).map(|_| ())
                }
                Command::Forecast => {
                    let tables = compute_metrics(&run.config, &prepared)?;
                    stage_forecast(run, &prepared, &tables).map(|_| ())
                }
                _ => unreachable!(),
            }
        }
    }
}

/// Collates every analysis stage into `report/report.json` plus heatmap
/// CSVs under `report/heatmaps`. Missing stages are run first; a stage
/// written under another config is an error.
pub fn stage_report(run: &Run) -> Result<PathBuf, PipelineError> {
    let mut missing = Vec::new();
    for stage in Command::ANALYSIS_STAGES {
        if read_stage::<serde_json::Value>(run, stage)?.is_none() {
            missing.push(stage);
        }
    }
    if !missing.is_empty() {
        let prepared = load_inputs(&run.config)?;
        let tables = compute_metrics(&run.config, &prepared)?;
        for stage in missing {
            match stage {
                Command::Ingest => stage_ingest(run, &prepared).map(|_| ())?,
                Command::Metrics => stage_metrics(run, &prepared).map(|_| ())?,
                Command::Cohort => stage_cohort(run, &prepared).map(|_| ())?,
                Command::Granger => stage_granger(run, &prepared, &tables).map(|_| ())?,
                Command::Forecast => stage_forecast(run, &prepared, &tables).map(|_| ())?,
                _ => unreachable!(),
            }
        }
    }
    let mut stages = serde_json::Map::new();
    for stage in Command::ANALYSIS_STAGES {
        let env = read_stage::<serde_json::Value>(run, stage)?.expect("stage present");
        stages.insert(stage.name().into(), env.data);
    }
    let granger: Envelope<Vec<GrangerPanel>> = read_stage(run, Command::Granger)?.expect("stage present");
    let forecast: Envelope<Vec<ForecastPanel>> = read_stage(run, Command::Forecast)?.expect("stage present");
    for p in &granger.data {
        write_heatmap(run, &format!("report/{}", heatmap_name("granger", &p.target, p.source)), &p.heatmap)?;
    }
    for p in &forecast.data {
        write_heatmap(run, &format!("report/{}", heatmap_name("oos", &p.target, p.source)), &p.heatmap)?;
    }
    let bundle = serde_json::json!({
        "config_hash": run.hash,
        "config": run.config,
        "stages": stages,
    });
    let path = PathBuf::from("report/report.json");
    run.write(path.to_str().unwrap(), &(serde_json::to_string_pretty(&bundle).expect("serializes") + "\n"))?;
    Ok(run.path("report/report.json"))
}

/// Every analysis stage followed by the report.
pub fn run_all(run: &Run) -> Result<PathBuf, PipelineError> {
    let prepared = load_inputs(&run.config)?;
    stage_ingest(run, &prepared)?;
    let tables = stage_metrics(run, &prepared)?;
    stage_cohort(run, &prepared)?;
    stage_granger(run, &prepared, &tables)?;
    stage_forecast(run, &prepared, &tables)?;
    stage_report(run)
}
