//! Granger grid on a pair with a planted lag-2 lead, at the 25-month
//! scale and at T = 200.
//!
//!     cargo run --example granger_grid

use bellwether::leadlag::{emit_heatmap_data, granger_grid, granger_heatmap, LagMode};
use bellwether::synth::{gen_leadlag_pair, PairSpec};
use bellwether::{MetricSeries, Month};

fn main() {
    let start = Month::new(2022, 6).unwrap();
    let mut rows = Vec::new();
    for (name, len, seed) in [("short", 25, 3), ("long", 200, 3)] {
        let (x, y) = gen_leadlag_pair(&PairSpec::leadlag(len, 0.5, 0.8, 2, seed)).unwrap();
        let ys = MetricSeries::new("postings", None, start, y.into_iter().map(Some).collect());
        let xs = MetricSeries::new("reddit", None, start, x.into_iter().map(Some).collect());
        let cells = granger_grid(&ys, &xs, 7, 0.01, LagMode::UpTo).unwrap();
        for c in &cells {
            match (&c.result, &c.skipped) {
                (Some(r), _) => println!("{name:>5} lag {}: F={:8.3} p={:.2e} dof={}", c.lag, r.f, r.p_value, r.df_den),
                (None, Some(why)) => println!("{name:>5} lag {}: skipped ({why})", c.lag),
                _ => unreachable!(),
            }
        }
        rows.push((name.to_string(), cells));
    }
    let (values, mask) = emit_heatmap_data(&granger_heatmap(&rows, 7, 0.01)).unwrap();
    println!("\n{values}\n{mask}");
}
