//! OLS with t-based inference, a nested F test and a HAC variance.
//!
//!     cargo run --example ols_inference

use bellwether::stats::{nested_f_test, newey_west_lrv, ols_fit, sf, DesignMatrix, Distribution};

fn main() {
    let x1: Vec<f64> = (0..30).map(|i| i as f64).collect();
    let x2: Vec<f64> = (0..30).map(|i| ((i * 7) % 11) as f64).collect();
    let y: Vec<f64> = (0..30)
        .map(|i| 1.0 + 0.5 * x1[i] + 0.05 * x2[i] + if i % 2 == 0 { 0.3 } else { -0.3 })
        .collect();

    let full = DesignMatrix::with_intercept(30).column("x1", x1.clone()).column("x2", x2);
    let fit = ols_fit(&full, &y).unwrap();
    for (j, l) in fit.labels.iter().enumerate() {
        println!(
            "{l:<10} {:>8.4} se={:.4} t={:>7.2} p={:.4}",
            fit.coefficients[j], fit.std_errors[j], fit.t_stats[j], fit.p_values[j]
        );
    }

    let restricted = DesignMatrix::with_intercept(30).column("x1", x1);
    let small = ols_fit(&restricted, &y).unwrap();
    let f = nested_f_test(&small, &fit, 1).unwrap();
    println!("F({}, {}) = {:.3}, p = {:.4}", f.df_num, f.df_den, f.f, f.p_value);
    println!("P(F(1,10) > 4.965) = {:.5}", sf(Distribution::F { df1: 1.0, df2: 10.0 }, 4.965).unwrap());
    println!("HAC variance of residual mean (L=2): {:.3e}", newey_west_lrv(&fit.residuals, 2).unwrap());
}
