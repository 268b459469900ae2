use serde::{Deserialize, Serialize};

use super::dist::{sf, Distribution};
use super::ols::RegressionFit;
use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FTest {
    pub f: f64,
    pub p_value: f64,
    pub df_num: usize,
    pub df_den: usize,
}

/// Joint test that the `q` extra coefficients of `unrestricted` are zero.
pub fn nested_f_test(
    restricted: &RegressionFit,
    unrestricted: &RegressionFit,
    q: usize,
) -> Result<FTest, StatsError> {
    if restricted.n != unrestricted.n {
        return Err(StatsError::NotNested(format!(
            "sample sizes differ: {} vs {}",
            restricted.n, unrestricted.n
        )));
    }
    if unrestricted.n <= unrestricted.k {
        return Err(StatsError::InsufficientObservations {
            n: unrestricted.n,
            k: unrestricted.k,
        });
    }
    f_test_from_rss(restricted.rss, unrestricted.rss, q, unrestricted.dof())
}

/// `F = ((RSS_R - RSS_U) / q) / (RSS_U / dof)` with its upper-tail p-value.
///
/// A numerator that is negative only through rounding is clamped to zero.
pub fn f_test_from_rss(rss_r: f64, rss_u: f64, q: usize, dof: usize) -> Result<FTest, StatsError> {
    if dof == 0 {
        return Err(StatsError::InvalidDof(format!("denominator dof {dof}")));
    }
    if q == 0 {
        return Err(StatsError::InvalidDof("zero restrictions".into()));
    }
    let slack = 1e-12 * rss_r.abs().max(1.0);
    if rss_r < rss_u - slack {
        return Err(StatsError::NotNested(format!(
            "restricted RSS {rss_r} below unrestricted RSS {rss_u}"
        )));
    }
    let gain = (rss_r - rss_u).max(0.0);
    let f = if gain == 0.0 {
        0.0
    } else if rss_u == 0.0 {
        f64::INFINITY
    } else {
        (gain / q as f64) / (rss_u / dof as f64)
    };
    let p_value = sf(
        Distribution::F {
            df1: q as f64,
            df2: dof as f64,
        },
        f,
    )?;
    Ok(FTest {
        f,
        p_value,
        df_num: q,
        df_den: dof,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_gain_gives_f_zero() {
        let t = f_test_from_rss(3.0, 3.0, 2, 10).unwrap();
        assert_eq!(t.f, 0.0);
        assert_eq!(t.p_value, 1.0);
    }

    #[test]
    fn direct_substitution() {
        let t = f_test_from_rss(2.0, 1.0, 1, 10).unwrap();
        assert_eq!(t.f, 10.0);
    }

    #[test]
    fn rounding_negative_is_clamped() {
        let t = f_test_from_rss(1.0, 1.0 + 1e-14, 1, 5).unwrap();
        assert_eq!(t.f, 0.0);
        assert!(f_test_from_rss(1.0, 1.1, 1, 5).is_err());
    }

    #[test]
    fn zero_dof_rejected() {
        assert!(f_test_from_rss(2.0, 1.0, 1, 0).is_err());
    }
}
