//! Acceptance criteria 1-9. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use bellwether::cohort::{dtw_distance, dtw_permutation_test, stars, trend_regression, CohortPanel};
use bellwether::leadlag::{granger_test, rolling_oos_eval, LagMode, DEFAULT_LAG_CANDIDATES};
use bellwether::metrics::{all_experiences, compute_all, BucketEdges};
use bellwether::pipeline::{run_all, stage_synth, AnalysisConfig, Run};
use bellwether::stats::{cdf, ols_fit, sf, DesignMatrix, Distribution, SplitRng};
use bellwether::synth::{gen_event_log, gen_leadlag_pair, gen_null_pair, oracle_metrics, EventLogSpec, PairSpec};
use bellwether::{Month, OccupationSet, Window};
use common::*;
use rand::Rng;
use rand_distr::StandardNormal;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn m(s: &str) -> Month {
    s.parse().unwrap()
}

fn analysis_window() -> Window {
    Window::new(m("2022-06"), m("2024-06")).unwrap()
}

// 1. metrics module vs brute-force oracle, exact equality
fn metric_oracle_equivalence() -> Outcome {
    let t0 = Instant::now();
    let occupations = OccupationSet::with_extra("Other");
    let occs: Vec<_> = occupations.iter().collect();
    let edges = BucketEdges::default();
    let mut series_checked = 0;
    let mut cells_checked = 0;
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let window = if seed % 3 == 0 {
            Window::new(m("2023-01"), m("2023-12")).unwrap()
        } else {
            analysis_window()
        };
        let spec = EventLogSpec {
            workers: 40 + (seed as usize * 37) % 260,
            mean_duration: 6.0 + (seed % 5) as f64 * 4.0,
            mean_gap: 1.0 + (seed % 4) as f64,
            transition_prob: [0.0, 0.1, 0.3][seed as usize % 3],
            genai_exit_prob: 0.5,
            open_ended: seed % 17 == 0,
            seed,
            ..EventLogSpec::default()
        };
        let log = gen_event_log(&spec).unwrap();
        let experiences = all_experiences(&log.profiles);
        assert!(experiences.len() <= 10_000);
        let ours = compute_all(&log.profiles, &occupations, window, spec.reference, edges).unwrap();
        let oracle = oracle_metrics(&experiences, &occs, window, spec.reference, (edges.short_max, edges.medium_max)).unwrap();
        if ours.series.len() != oracle.series.len() {
            failures.push(format!("seed {seed}: {} vs {} series", ours.series.len(), oracle.series.len()));
        }
        for s in &ours.series {
            series_checked += 1;
            match oracle.get(&s.metric, s.occupation.as_ref()) {
                Some(o) if o.values == s.values && o.start == s.start => {}
                _ => failures.push(format!("seed {seed}: {}", s.label())),
            }
        }
        for occ in &occs {
            for month in window.months() {
                cells_checked += 1;
                let c = ours.panel.cell(occ, month).unwrap();
                let o = oracle.counts.get(&(occ.clone(), month)).copied().unwrap_or([0; 3]);
                if [c.starts, c.ends, c.active] != o {
                    failures.push(format!("seed {seed}: counts {occ} {month}"));
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "100 logs, {series_checked} series and {cells_checked} count cells, {} mismatches, {:.1}s (limit 60s){}",
            failures.len(),
            elapsed.as_secs_f64(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

// 2. SVD-backed OLS vs normal equations, 1e-8 relative
fn ols_correctness() -> Outcome {
    let root = SplitRng::new(2024);
    let mut worst: f64 = 0.0;
    for inst in 0..20u64 {
        let mut rng = root.stream(inst);
        let n = rng.random_range(12..80);
        let k = rng.random_range(2..7);
        let beta: Vec<f64> = (0..k)
            .map(|_| {
                let b: f64 = rng.random_range(0.5..3.0);
                if rng.random_bool(0.5) {
                    -b
                } else {
                    b
                }
            })
            .collect();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let mut r = vec![1.0];
                r.extend((1..k).map(|_| rng.sample::<f64, _>(StandardNormal) * 2.0));
                r
            })
            .collect();
        let y: Vec<f64> = rows
            .iter()
            .map(|r| r.iter().zip(&beta).map(|(x, b)| x * b).sum::<f64>() + 0.5 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let mut design = DesignMatrix::with_intercept(n);
        for j in 1..k {
            design = design.column(format!("x{j}"), rows.iter().map(|r| r[j]).collect());
        }
        let fit = ols_fit(&design, &y).unwrap();
        let oracle = normal_equations(&rows, &y);
        for j in 0..k {
            worst = worst
                .max(rel_err(fit.coefficients[j], oracle.coefficients[j]))
                .max(rel_err(fit.std_errors[j], oracle.std_errors[j]));
        }
        worst = worst.max(rel_err(fit.rss, oracle.rss));
    }
    outcome(worst <= 1e-8, format!("20 instances, worst relative error {worst:.2e} (limit 1e-8)"))
}

// 3. CDFs vs quadrature, 1e-8 absolute; F(1,10) tail at 4.965
fn distribution_accuracy() -> Outcome {
    let mut worst: f64 = 0.0;
    let grid: Vec<f64> = (0..20).map(|i| -4.75 + 0.5 * i as f64).collect();
    for &x in &grid {
        worst = worst.max((cdf(Distribution::Normal, x).unwrap() - normal_cdf_quad(x)).abs());
        for df in [1.0, 3.0, 10.0, 30.0] {
            let ours = cdf(Distribution::StudentT { df }, x).unwrap();
            worst = worst.max((ours - t_cdf_quad(x, df)).abs());
        }
    }
    let fgrid: Vec<f64> = (1..=20).map(|i| 0.25 * i as f64).collect();
    for &x in &fgrid {
        for (d1, d2) in [(1.0, 10.0), (2.0, 10.0), (3.0, 18.0), (7.0, 5.0)] {
            let ours = cdf(Distribution::F { df1: d1, df2: d2 }, x).unwrap();
            worst = worst.max((ours - f_cdf_quad(x, d1, d2)).abs());
        }
    }
    let tail = sf(Distribution::F { df1: 1.0, df2: 10.0 }, 4.965).unwrap();
    let tail_quad = 1.0 - f_cdf_quad(4.965, 1.0, 10.0);
    let pass = worst <= 1e-8 && (tail - 0.05).abs() <= 1e-3 && (tail - tail_quad).abs() <= 1e-8;
    outcome(
        pass,
        format!("worst |cdf - quadrature| {worst:.2e} (limit 1e-8); P(F(1,10) > 4.965) = {tail:.6} (0.05 +/- 1e-3)"),
    )
}

// 4. Granger size at T = 24
fn granger_size() -> Outcome {
    let mut rejections = 0;
    let mut p_values = Vec::with_capacity(500);
    for seed in 0..500 {
        let (x, y) = gen_null_pair(&PairSpec::null(24, 0.5, seed)).unwrap();
        let r = granger_test(&y, &x, 1, LagMode::UpTo, 0.05).unwrap();
        rejections += usize::from(r.p_value < 0.05);
        p_values.push(r.p_value);
    }
    let rate = rejections as f64 / 500.0;
    let ks = ks_uniform(&p_values);
    outcome(
        (0.02..=0.10).contains(&rate) && ks < 0.10,
        format!("T=24, lag 1, 500 reps: rejection rate {rate:.3} (in [0.02, 0.10]), KS {ks:.3} (< 0.10)"),
    )
}

// 5. Granger power and lag identification
fn granger_power() -> Outcome {
    let mut significant = 0;
    let mut argmin_true = 0;
    for s in 0..200 {
        let (x, y) = gen_leadlag_pair(&PairSpec::leadlag(200, 0.5, 0.8, 2, 10_000 + s)).unwrap();
        let ps: Vec<f64> = (1..=7)
            .map(|p| granger_test(&y, &x, p, LagMode::UpTo, 0.01).unwrap().p_value)
            .collect();
        significant += usize::from(ps[1] < 0.01);
        let argmin = (0..7).min_by(|&a, &b| ps[a].total_cmp(&ps[b])).unwrap() + 1;
        argmin_true += usize::from(argmin == 2);
    }
    let (sig, arg) = (significant as f64 / 200.0, argmin_true as f64 / 200.0);
    outcome(
        sig >= 0.95 && arg >= 0.80,
        format!("c=0.8 at lag 2, T=200, 200 seeds: lag-2 p<0.01 in {sig:.3} (>= 0.95), min-p column = 2 in {arg:.3} (>= 0.80)"),
    )
}

// 6. DTW vs exhaustive paths, identities, permutation null
fn dtw_correctness() -> Outcome {
    let t0 = Instant::now();
    let words = all_words(&[0.0, 1.0, 2.0], 5);
    let mut mismatches = 0usize;
    let mut pairs = 0usize;
    for a in &words {
        for b in &words {
            pairs += 1;
            if dtw_distance(a, b, false).unwrap() != dtw_exhaustive(a, b) {
                mismatches += 1;
            }
        }
        if dtw_distance(a, a, false).unwrap() != 0.0 {
            mismatches += 1;
        }
    }
    let ident = [0.3, -1.2, 0.8, 2.5, 0.0, -0.4];
    let p_ident = dtw_permutation_test(&ident, &ident, 500, 3, true).unwrap().p_value;
    let mut rejections = 0;
    for s in 0..200 {
        let (a, _) = gen_null_pair(&PairSpec::null(25, 0.5, 50_000 + 2 * s)).unwrap();
        let (b, _) = gen_null_pair(&PairSpec::null(25, 0.5, 50_001 + 2 * s)).unwrap();
        rejections += usize::from(dtw_permutation_test(&a, &b, 500, s, true).unwrap().p_value < 0.05);
    }
    let rate = rejections as f64 / 200.0;
    let elapsed = t0.elapsed();
    outcome(
        mismatches == 0 && p_ident == 1.0 && (0.01..=0.10).contains(&rate) && elapsed < Duration::from_secs(300),
        format!(
            "{pairs} pairs vs exhaustive paths, {mismatches} mismatches; p(identical) = {p_ident}; null rejection {rate:.3} (in [0.01, 0.10]); {:.1}s (limit 300s)",
            elapsed.as_secs_f64()
        ),
    )
}

// 7. OOS machinery and Clark-West size/power
fn oos_machinery() -> Outcome {
    let (x, _) = gen_null_pair(&PairSpec::null(25, 0.5, 1)).unwrap();
    let mut y = vec![0.0; 25];
    y[1..].copy_from_slice(&x[..24]);
    let perfect = rolling_oos_eval(&y, &x, 1, 10, &DEFAULT_LAG_CANDIDATES).unwrap().r2_oos;
    let (_, y0) = gen_null_pair(&PairSpec::null(25, 0.5, 2)).unwrap();
    let flat = rolling_oos_eval(&y0, &[1.5; 25], 1, 10, &DEFAULT_LAG_CANDIDATES).unwrap().r2_oos;

    let r2: Vec<f64> = (0..500)
        .map(|s| {
            let (x, y) = gen_null_pair(&PairSpec::null(25, 0.5, 20_000 + s)).unwrap();
            rolling_oos_eval(&y, &x, 1, 10, &DEFAULT_LAG_CANDIDATES).unwrap().r2_oos
        })
        .collect();
    let med = median(&r2);

    let (mut power, mut size) = (0, 0);
    for s in 0..500 {
        let (x, y) = gen_leadlag_pair(&PairSpec::leadlag(60, 0.5, 0.8, 1, 30_000 + s)).unwrap();
        power += usize::from(rolling_oos_eval(&y, &x, 1, 10, &DEFAULT_LAG_CANDIDATES).unwrap().cw_p < 0.05);
        let (x, y) = gen_null_pair(&PairSpec::null(60, 0.5, 40_000 + s)).unwrap();
        size += usize::from(rolling_oos_eval(&y, &x, 1, 10, &DEFAULT_LAG_CANDIDATES).unwrap().cw_p < 0.05);
    }
    let (power, size) = (power as f64 / 500.0, size as f64 / 500.0);
    outcome(
        perfect == 1.0 && flat == 0.0 && med <= 0.0 && size <= 0.12 && power >= 0.70,
        format!(
            "perfect R2 = {perfect}, flat-x R2 = {flat}; null median R2 {med:.3} (<= 0); CW size {size:.3} (<= 0.12), power {power:.3} (>= 0.70)"
        ),
    )
}

// 8. Trend regression recovers the 12+ month row exactly
fn trend_recovery() -> Outcome {
    let (gap, slope_diff) = (0.151, -0.0119);
    let panel = CohortPanel {
        outcome: "tenure_bucket_13p".into(),
        start: m("2022-06"),
        t0: 0,
        non_genai: (0..25).map(|t| 0.42 - 0.0031 * t as f64).collect(),
        genai: (0..25).map(|t| 0.42 + gap + (-0.0031 + slope_diff) * t as f64).collect(),
    };
    let fit = trend_regression(&panel).unwrap();
    let err = (fit.beta - gap).abs().max((fit.delta - slope_diff).abs());
    let thresholds = [
        (0.0099, "***"),
        (0.01, "**"),
        (0.049, "**"),
        (0.05, "*"),
        (0.0999, "*"),
        (0.10, ""),
        (0.5, ""),
    ];
    let stars_ok = thresholds.iter().all(|&(p, s)| stars(p) == s);
    let pass = err <= 1e-10 && stars_ok && fit.beta_stars == "***" && fit.delta_stars == "***";
    outcome(
        pass,
        format!(
            "beta {:.6} (0.151), delta {:.6} (-0.0119), max error {err:.1e}; stars {}/{}; thresholds {}",
            fit.beta,
            fit.delta,
            fit.beta_stars,
            fit.delta_stars,
            if stars_ok { "match" } else { "differ" }
        ),
    )
}

fn files_under(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn pipeline_once(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut config = AnalysisConfig::default();
    config.synth.workers = 1500;
    config.seed = 7;
    let data = Run::new(config, Some(dir.join("data"))).unwrap();
    stage_synth(&data).unwrap();
    let config = AnalysisConfig::load(&data.path("config.toml")).unwrap();
    let run = Run::new(config, Some(dir.join("run"))).unwrap();
    run_all(&run).unwrap();
    files_under(dir)
}

// 9. Full pipeline twice, byte-identical; 25 monthly points
fn end_to_end_determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = pipeline_once(a.path());
    let second = pipeline_once(b.path());
    let differing: Vec<_> = first
        .iter()
        .filter(|(k, v)| second.get(*k) != Some(v))
        .map(|(k, _)| k.display().to_string())
        .collect();
    let same = differing.is_empty() && first.len() == second.len();

    let ingest: serde_json::Value = serde_json::from_slice(&first[Path::new("run/ingest.json")]).unwrap();
    let lengths: Vec<u64> = ingest["data"]["series_lengths"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_u64().unwrap())
        .collect();
    let metrics_csv = String::from_utf8(first[Path::new("run/metrics.csv")].clone()).unwrap();
    let mut months_per_series: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for line in metrics_csv.lines().skip(2) {
        let f: Vec<&str> = line.split(',').collect();
        months_per_series.entry((f[0].into(), f[1].into())).or_default().push(f[2].into());
    }
    let expected: Vec<String> = analysis_window().months().map(|m| m.to_string()).collect();
    let clipped = !lengths.is_empty()
        && lengths.iter().all(|&n| n == 25)
        && months_per_series.values().all(|ms| *ms == expected);
    let has_report = first.contains_key(Path::new("run/report/report.json"));
    outcome(
        same && clipped && has_report,
        format!(
            "{} files compared, {} differ; {} input series and {} metric series all span 2022-06..2024-06 in 25 points: {clipped}",
            first.len(),
            differing.len(),
            lengths.len(),
            months_per_series.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("metric-oracle equivalence", metric_oracle_equivalence),
        ("OLS correctness", ols_correctness),
        ("distribution accuracy", distribution_accuracy),
        ("Granger size", granger_size),
        ("Granger power", granger_power),
        ("DTW correctness", dtw_correctness),
        ("OOS machinery", oos_machinery),
        ("trend-regression recovery", trend_recovery),
        ("end-to-end determinism", end_to_end_determinism),
    ];
    let results: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| scope.spawn(move || std::panic::catch_unwind(f)))
            .collect();
        handles
            .into_iter()
            .map(|h| match h.join().unwrap() {
                Ok(o) => o,
                Err(e) => outcome(
                    false,
                    format!(
                        "panicked: {}",
                        e.downcast_ref::<String>()
                            .cloned()
                            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default()
                    ),
                ),
            })
            .collect()
    });
    let mut failed = 0;
    for (i, ((name, _), r)) in criteria.iter().zip(&results).enumerate() {
        println!("criterion {} [{}] {name}: {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
