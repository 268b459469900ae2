//! Direct h-step lag designs.
//!
//! For a forecast origin `t`, the target is `y[t + h]` and the regressors
//! are an intercept, `y[t], y[t-1], ..., y[t-p+1]` and optionally the same
//! dates of `x`. With `h = 1` this is the usual autoregression of `y[t]` on
//! lags `1..=p`.

use super::ols::DesignMatrix;

/// Which lags of the exogenous series enter the design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExogLags {
    None,
    /// Dates `t, ..., t-p+1`, i.e. lags `1..=p` of the target when `h = 1`.
    UpTo(usize),
    /// Only date `t-p+1`.
    Exactly(usize),
}

impl ExogLags {
    pub fn count(self) -> usize {
        match self {
            ExogLags::None => 0,
            ExogLags::UpTo(p) => p,
            ExogLags::Exactly(_) => 1,
        }
    }

    fn deepest(self) -> usize {
        match self {
            ExogLags::None => 0,
            ExogLags::UpTo(p) | ExogLags::Exactly(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LagSpec {
    pub ar_lags: usize,
    pub exog: ExogLags,
    pub horizon: usize,
}

impl LagSpec {
    pub fn ar(ar_lags: usize, horizon: usize) -> Self {
        LagSpec {
            ar_lags,
            exog: ExogLags::None,
            horizon,
        }
    }

    pub fn ardl(lags: usize, horizon: usize) -> Self {
        LagSpec {
            ar_lags: lags,
            exog: ExogLags::UpTo(lags),
            horizon,
        }
    }

    /// Number of regressors including the intercept.
    pub fn n_params(&self) -> usize {
        1 + self.ar_lags + self.exog.count()
    }

    /// Deepest look-back (in observations) needed at an origin.
    pub fn depth(&self) -> usize {
        self.ar_lags.max(self.exog.deepest()).max(1)
    }

    /// First usable origin index for a series.
    pub fn first_origin(&self) -> usize {
        self.depth() - 1
    }

    /// Number of (origin, target) pairs when origins start at `first_origin`.
    pub fn usable(&self, len: usize, first_origin: usize) -> usize {
        (len + 1).saturating_sub(self.horizon + first_origin + 1)
    }

    /// Regressor row (intercept first) at origin `t`.
    pub fn row(&self, y: &[f64], x: Option<&[f64]>, t: usize) -> Vec<f64> {
        let mut row = Vec::with_capacity(self.n_params());
        row.push(1.0);
        for i in 0..self.ar_lags {
            row.push(y[t - i]);
        }
        if let Some(x) = x {
            match self.exog {
                ExogLags::None => {}
                ExogLags::UpTo(p) => row.extend((0..p).map(|i| x[t - i])),
                ExogLags::Exactly(p) => row.push(x[t + 1 - p]),
            }
        }
        row
    }

    /// Design and targets over origins `first_origin ..= y.len() - 1 - h`.
    ///
    /// `x` is ignored when `exog` is `None`.
    pub fn design(&self, y: &[f64], x: Option<&[f64]>, first_origin: usize) -> (DesignMatrix, Vec<f64>) {
        let first_origin = first_origin.max(self.first_origin());
        let n = self.usable(y.len(), first_origin);
        let x = if self.exog == ExogLags::None { None } else { x };
        let origins = first_origin..first_origin + n;
        let mut design = DesignMatrix::with_intercept(n);
        for i in 0..self.ar_lags {
            let label = format!("y_lag{}", i + self.horizon);
            design.push(label, origins.clone().map(|t| y[t - i]).collect());
        }
        if let Some(x) = x {
            match self.exog {
                ExogLags::None => {}
                ExogLags::UpTo(p) => {
                    for i in 0..p {
                        let label = format!("x_lag{}", i + self.horizon);
                        design.push(label, origins.clone().map(|t| x[t - i]).collect());
                    }
                }
                ExogLags::Exactly(p) => {
                    let label = format!("x_lag{}", p - 1 + self.horizon);
                    design.push(label, origins.clone().map(|t| x[t + 1 - p]).collect());
                }
            }
        }
        let targets = origins.map(|t| y[t + self.horizon]).collect();
        (design, targets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_step_design_is_plain_autoregression() {
        let y: Vec<f64> = (0..6).map(f64::from).collect();
        let x: Vec<f64> = (10..16).map(f64::from).collect();
        let spec = LagSpec::ardl(2, 1);
        let (d, t) = spec.design(&y, Some(&x), 0);
        // origins 1..=4, targets y[2..=5]
        assert_eq!(t, vec![2.0, 3.0, 4.0, 5.0]);
        assert_eq!(d.col(1), &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.col(2), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(d.col(3), &[11.0, 12.0, 13.0, 14.0]);
        assert_eq!(d.col(4), &[10.0, 11.0, 12.0, 13.0]);
        assert_eq!(d.labels(), &["const", "y_lag1", "y_lag2", "x_lag1", "x_lag2"]);
        assert_eq!(spec.row(&y, Some(&x), 4), d.row(3));
    }

    #[test]
    fn direct_three_step_targets() {
        let y: Vec<f64> = (0..10).map(f64::from).collect();
        let spec = LagSpec::ar(1, 3);
        let (d, t) = spec.design(&y, None, 0);
        assert_eq!(d.rows(), 7);
        assert_eq!(t[0], 3.0);
        assert_eq!(d.col(1)[0], 0.0);
    }

    #[test]
    fn exact_lag_uses_single_x_column() {
        let y: Vec<f64> = (0..8).map(f64::from).collect();
        let x: Vec<f64> = (0..8).map(|v| 100.0 + v as f64).collect();
        let spec = LagSpec {
            ar_lags: 3,
            exog: ExogLags::Exactly(3),
            horizon: 1,
        };
        let (d, t) = spec.design(&y, Some(&x), 0);
        assert_eq!(d.cols(), 5);
        assert_eq!(t[0], 3.0);
        assert_eq!(d.col(4)[0], 100.0);
    }
}
