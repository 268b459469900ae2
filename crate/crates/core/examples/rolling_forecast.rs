//! Rolling 10-month AR vs ARDL forecasts with the Clark-West test.
//!
//!     cargo run --example rolling_forecast

use bellwether::leadlag::{rolling_oos_eval, DEFAULT_HORIZONS, DEFAULT_LAG_CANDIDATES, DEFAULT_TRAINING_WINDOW};
use bellwether::synth::{gen_leadlag_pair, gen_null_pair, PairSpec};

fn main() {
    let (xp, yp) = gen_leadlag_pair(&PairSpec::leadlag(60, 0.5, 0.8, 1, 2)).unwrap();
    let (xn, yn) = gen_null_pair(&PairSpec::null(60, 0.5, 9)).unwrap();
    for (name, x, y) in [("planted", &xp, &yp), ("null", &xn, &yn)] {
        for h in DEFAULT_HORIZONS {
            let r = rolling_oos_eval(y, x, h, DEFAULT_TRAINING_WINDOW, &DEFAULT_LAG_CANDIDATES).unwrap();
            println!(
                "{name:<8} h={h} forecasts={:2} msfe_ar={:.3} msfe_ardl={:.3} r2_oos={:+.3} cw_p={:.4}",
                r.forecasts, r.msfe_ar, r.msfe_ardl, r.r2_oos, r.cw_p
            );
        }
    }
}
