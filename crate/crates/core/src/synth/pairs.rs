use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::SynthError;
use crate::stats::SplitRng;

/// Periods simulated and discarded before the returned sample.
pub const BURN_IN: usize = 100;

/// Bivariate AR design: `x_t = ar_x x_{t-1} + e_t`,
/// `y_t = ar_y y_{t-1} + coupling x_{t-lag} + u_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub len: usize,
    pub ar_x: f64,
    pub ar_y: f64,
    pub coupling: f64,
    pub lag: usize,
    pub noise_sd: f64,
    pub seed: u64,
}

impl PairSpec {
    pub fn null(len: usize, ar: f64, seed: u64) -> Self {
        PairSpec {
            len,
            ar_x: ar,
            ar_y: ar,
            coupling: 0.0,
            lag: 1,
            noise_sd: 1.0,
            seed,
        }
    }

    pub fn leadlag(len: usize, ar_y: f64, coupling: f64, lag: usize, seed: u64) -> Self {
        PairSpec {
            len,
            ar_x: 0.5,
            ar_y,
            coupling,
            lag,
            noise_sd: 1.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: &str| Err(SynthError::InvalidSpec(m.into()));
        if self.len < 10 {
            return bad("length must be at least 10");
        }
        if !(self.ar_x.abs() < 1.0 && self.ar_y.abs() < 1.0) {
            return bad("AR coefficients must lie strictly inside (-1, 1)");
        }
        if self.lag == 0 || self.lag > BURN_IN {
            return bad("coupling lag must be in 1..=100");
        }
        if !(self.noise_sd > 0.0 && self.noise_sd.is_finite() && self.coupling.is_finite()) {
            return bad("noise sd must be positive and coupling finite");
        }
        Ok(())
    }
}

fn simulate(spec: &PairSpec) -> (Vec<f64>, Vec<f64>) {
    let rng = SplitRng::new(spec.seed);
    let (mut ex, mut ey) = (rng.stream(0), rng.stream(1));
    let n = spec.len + BURN_IN;
    let mut x = vec![0.0; n];
    let mut y = vec![0.0; n];
    for t in 1..n {
        let e: f64 = ex.sample(StandardNormal);
        let u: f64 = ey.sample(StandardNormal);
        x[t] = spec.ar_x * x[t - 1] + spec.noise_sd * e;
        let lead = if t >= spec.lag { x[t - spec.lag] } else { 0.0 };
        y[t] = spec.ar_y * y[t - 1] + spec.coupling * lead + spec.noise_sd * u;
    }
    (x.split_off(BURN_IN), y.split_off(BURN_IN))
}

/// Two independent AR(1) series drawn from separate streams.
pub fn gen_null_pair(spec: &PairSpec) -> Result<(Vec<f64>, Vec<f64>), SynthError> {
    spec.validate()?;
    Ok(simulate(&PairSpec {
        coupling: 0.0,
        ..spec.clone()
    }))
}

/// `y` loads on `x` at `spec.lag`. With zero coupling this is the null pair.
pub fn gen_leadlag_pair(spec: &PairSpec) -> Result<(Vec<f64>, Vec<f64>), SynthError> {
    spec.validate()?;
    Ok(simulate(spec))
}
