//! Rolling-window direct forecasts, MSFE comparison and the Clark-West
//! test for nested models.

use serde::{Deserialize, Serialize};

use super::LeadLagError;
use crate::series::{align_pair, MetricSeries, Occupation, Source};
use crate::stats::{
    newey_west_lrv, normal_cdf, ols_fit_dropping_collinear, select_lag_bic_horizon, LagSpec, ModelKind,
};

pub const DEFAULT_TRAINING_WINDOW: usize = 10;
pub const DEFAULT_HORIZONS: [usize; 2] = [1, 3];
pub const DEFAULT_LAG_CANDIDATES: [usize; 3] = [1, 2, 3];
pub const DEFAULT_OOS_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClarkWest {
    pub mean: f64,
    /// `None` when the adjusted differentials have zero variance.
    pub stat: Option<f64>,
    pub p_value: f64,
}

/// `f_t = e_AR^2 - (e_ARDL^2 - (yhat_AR - yhat_ARDL)^2)`, studentized by
/// the Bartlett long-run variance with bandwidth `h - 1`; one-sided
/// p-value `1 - Phi(CW)`.
pub fn clark_west(actuals: &[f64], ar: &[f64], ardl: &[f64], h: usize) -> Result<ClarkWest, LeadLagError> {
    let n = actuals.len();
    if ar.len() != n || ardl.len() != n {
        return Err(LeadLagError::LengthMismatch(ar.len().min(ardl.len()), n));
    }
    if n < 2 {
        return Err(LeadLagError::Infeasible(format!("{n} forecasts, need at least 2")));
    }
    let f: Vec<f64> = (0..n)
        .map(|t| {
            let e_ar = actuals[t] - ar[t];
            let e_ardl = actuals[t] - ardl[t];
            let adj = ar[t] - ardl[t];
            e_ar * e_ar - (e_ardl * e_ardl - adj * adj)
        })
        .collect();
    let mean = f.iter().sum::<f64>() / n as f64;
    let bandwidth = h.saturating_sub(1).min(n - 2);
    let var = newey_west_lrv(&f, bandwidth)?;
    if !(var > 0.0) {
        return Ok(ClarkWest {
            mean,
            stat: None,
            p_value: 1.0,
        });
    }
    let stat = mean / var.sqrt();
    Ok(ClarkWest {
        mean,
        stat: Some(stat),
        p_value: 1.0 - normal_cdf(stat),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OosResult {
    pub target: String,
    pub occupation: Option<Occupation>,
    pub source: Option<Source>,
    pub horizon: usize,
    pub window: usize,
    pub forecasts: usize,
    pub msfe_ar: f64,
    pub msfe_ardl: f64,
    pub r2_oos: f64,
    pub cw_stat: Option<f64>,
    pub cw_p: f64,
    /// Lag chosen at each window position.
    pub lags: Vec<usize>,
    pub actuals: Vec<f64>,
    pub ar_forecasts: Vec<f64>,
    pub ardl_forecasts: Vec<f64>,
}

/// `1 - MSFE_ARDL / MSFE_AR`; zero when both are zero.
pub fn r2_oos(msfe_ar: f64, msfe_ardl: f64) -> f64 {
    if msfe_ar == 0.0 {
        if msfe_ardl == 0.0 {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    } else {
        1.0 - msfe_ardl / msfe_ar
    }
}

fn mean_square(e: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = e.fold((0.0, 0usize), |(s, n), v| (s + v * v, n + 1));
    s / n as f64
}

/// Lag candidates for which an ARDL(p, p) with horizon `h` still has
/// positive residual dof inside a training window.
pub fn feasible_candidates(candidates: &[usize], window: usize, h: usize) -> Vec<usize> {
    candidates
        .iter()
        .copied()
        .filter(|&p| {
            let spec = LagSpec::ardl(p, h);
            p > 0 && spec.usable(window, spec.first_origin()) > spec.n_params()
        })
        .collect()
}

/// Rolls a `window`-month training slice one month at a time. At each
/// position the lag is chosen by BIC on the AR model within the slice,
/// AR and ARDL direct `h`-step projections are fitted on the slice, and
/// both forecast `y` `h` months past the slice's last month.
pub fn rolling_oos_eval(
    y: &[f64],
    x: &[f64],
    h: usize,
    window: usize,
    candidates: &[usize],
) -> Result<OosResult, LeadLagError> {
    if y.len() != x.len() {
        return Err(LeadLagError::LengthMismatch(y.len(), x.len()));
    }
    if h == 0 {
        return Err(LeadLagError::Infeasible("horizon must be at least 1".into()));
    }
    if y.len() < window + h + 1 {
        return Err(LeadLagError::InsufficientData { len: y.len(), lag: h });
    }
    let lags_ok = feasible_candidates(candidates, window, h);
    if lags_ok.is_empty() {
        return Err(LeadLagError::Infeasible(format!(
            "no lag candidate fits a {window}-month window at horizon {h}"
        )));
    }
    let positions = y.len() - window - h + 1;
    let mut actuals = Vec::with_capacity(positions);
    let mut ar_fc = Vec::with_capacity(positions);
    let mut ardl_fc = Vec::with_capacity(positions);
    let mut lags = Vec::with_capacity(positions);
    for s in 0..positions {
        let ys = &y[s..s + window];
        let xs = &x[s..s + window];
        let Ok(choice) = select_lag_bic_horizon(ys, None, &lags_ok, ModelKind::Ar, h) else {
            continue;
        };
        let p = choice.lag;
        let origin = window - 1;
        let forecast = |spec: LagSpec| -> Option<f64> {
            let (design, target) = spec.design(ys, Some(xs), spec.first_origin());
            let (fit, kept) = ols_fit_dropping_collinear(&design, &target).ok()?;
            let row = spec.row(ys, Some(xs), origin);
            let row: Vec<f64> = kept.iter().map(|&j| row[j]).collect();
            Some(fit.predict(&row))
        };
        let (Some(a), Some(b)) = (forecast(LagSpec::ar(p, h)), forecast(LagSpec::ardl(p, h))) else {
            continue;
        };
        actuals.push(y[s + origin + h]);
        ar_fc.push(a);
        ardl_fc.push(b);
        lags.push(p);
    }
    if actuals.len() < 2 {
        return Err(LeadLagError::Infeasible(format!(
            "{} feasible window positions, need at least 2",
            actuals.len()
        )));
    }
    let msfe_ar = mean_square(actuals.iter().zip(&ar_fc).map(|(a, f)| a - f));
    let msfe_ardl = mean_square(actuals.iter().zip(&ardl_fc).map(|(a, f)| a - f));
    let cw = clark_west(&actuals, &ar_fc, &ardl_fc, h)?;
    Ok(OosResult {
        target: String::new(),
        occupation: None,
        source: None,
        horizon: h,
        window,
        forecasts: actuals.len(),
        msfe_ar,
        msfe_ardl,
        r2_oos: r2_oos(msfe_ar, msfe_ardl),
        cw_stat: cw.stat,
        cw_p: cw.p_value,
        lags,
        actuals,
        ar_forecasts: ar_fc,
        ardl_forecasts: ardl_fc,
    })
}

/// [`rolling_oos_eval`] on the common observed block of two series.
pub fn rolling_oos_series(
    y: &MetricSeries,
    x: &MetricSeries,
    h: usize,
    window: usize,
    candidates: &[usize],
) -> Result<OosResult, LeadLagError> {
    let (_, yv, xv) = align_pair(y, x)?;
    let mut r = rolling_oos_eval(&yv, &xv, h, window, candidates)?;
    r.target = y.metric.clone();
    r.occupation = y.occupation.clone();
    r.source = x.source;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{gen_null_pair, PairSpec};

    #[test]
    fn identical_forecasts_no_evidence() {
        let cw = clark_west(&[1.0, 2.0, 3.0], &[1.5, 1.5, 2.5], &[1.5, 1.5, 2.5], 1).unwrap();
        assert_eq!(cw.stat, None);
        assert_eq!(cw.p_value, 1.0);
    }

    #[test]
    fn zero_mean_differential_gives_half() {
        // e_AR^2 = 1 everywhere; adjusted ARDL terms alternate around 1
        let actuals = [0.0; 4];
        let ar = [1.0; 4];
        let ardl = [0.0, 2.0, 0.0, 2.0];
        let cw = clark_west(&actuals, &ar, &ardl, 1).unwrap();
        assert_eq!(cw.mean, 0.0);
        assert_eq!(cw.stat, Some(0.0));
        assert_eq!(cw.p_value, 0.5);
    }

    #[test]
    fn window_feasibility() {
        assert_eq!(feasible_candidates(&DEFAULT_LAG_CANDIDATES, 10, 1), [1, 2]);
        assert_eq!(feasible_candidates(&DEFAULT_LAG_CANDIDATES, 10, 3), [1, 2]);
    }

    #[test]
    fn perfect_predictor() {
        let (x, _) = gen_null_pair(&PairSpec::null(25, 0.5, 4)).unwrap();
        let mut y = vec![0.0; 25];
        y[1..].copy_from_slice(&x[..24]);
        let r = rolling_oos_eval(&y, &x, 1, 10, &DEFAULT_LAG_CANDIDATES).unwrap();
        assert_eq!(r.r2_oos, 1.0);
        assert_eq!(r.forecasts, 15);
    }

    #[test]
    fn constant_predictor_matches_ar() {
        let (_, y) = gen_null_pair(&PairSpec::null(25, 0.5, 6)).unwrap();
        let r = rolling_oos_eval(&y, &[3.0; 25], 1, 10, &DEFAULT_LAG_CANDIDATES).unwrap();
        assert_eq!(r.ar_forecasts, r.ardl_forecasts);
        assert_eq!(r.r2_oos, 0.0);
        assert_eq!(r.cw_p, 1.0);
    }

    #[test]
    fn r2_sign_matches_msfe_order() {
        for seed in 0..20 {
            let (x, y) = gen_null_pair(&PairSpec::null(30, 0.5, seed)).unwrap();
            for h in DEFAULT_HORIZONS {
                let r = rolling_oos_eval(&y, &x, h, 10, &DEFAULT_LAG_CANDIDATES).unwrap();
                assert_eq!(r.r2_oos > 0.0, r.msfe_ardl < r.msfe_ar);
                assert!(r.r2_oos <= 1.0);
            }
        }
    }
}
