use super::StatsError;

/// Bartlett-kernel (Newey-West) long-run variance of the sample mean.
///
/// `V = (g0 + 2 * sum_{l=1..L} (1 - l/(L+1)) g_l) / n`, where `g_l` is the
/// lag-`l` autocovariance with divisor `n`.
pub fn newey_west_lrv(series: &[f64], bandwidth: usize) -> Result<f64, StatsError> {
    let n = series.len();
    if n < bandwidth + 2 {
        return Err(StatsError::SeriesTooShort {
            len: n,
            needed: bandwidth + 2,
        });
    }
    let nf = n as f64;
    let mean = series.iter().sum::<f64>() / nf;
    let dev: Vec<f64> = series.iter().map(|v| v - mean).collect();
    let autocov = |lag: usize| -> f64 {
        dev[lag..].iter().zip(&dev[..n - lag]).map(|(a, b)| a * b).sum::<f64>() / nf
    };
    let mut lrv = autocov(0);
    for lag in 1..=bandwidth {
        let w = 1.0 - lag as f64 / (bandwidth as f64 + 1.0);
        lrv += 2.0 * w * autocov(lag);
    }
    Ok(lrv.max(0.0) / nf)
}
