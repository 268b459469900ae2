//! Independent oracles shared by the integration suites. Nothing here
//! calls into the library's numerical code.

#![allow(dead_code)]

use libm::lgamma;

/// OLS through the normal equations, inverted by Gauss-Jordan elimination
/// with partial pivoting.
pub struct NormalEqFit {
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub rss: f64,
}

pub fn normal_equations(rows: &[Vec<f64>], y: &[f64]) -> NormalEqFit {
    let n = rows.len();
    let k = rows[0].len();
    let mut a = vec![vec![0.0; 2 * k]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = rows.iter().map(|r| r[i] * r[j]).sum();
        }
        a[i][k + i] = 1.0;
    }
    for c in 0..k {
        let piv = (c..k).max_by(|&p, &q| a[p][c].abs().total_cmp(&a[q][c].abs())).unwrap();
        a.swap(c, piv);
        let d = a[c][c];
        for v in a[c].iter_mut() {
            *v /= d;
        }
        for r in 0..k {
            if r != c {
                let m = a[r][c];
                for j in 0..2 * k {
                    a[r][j] -= m * a[c][j];
                }
            }
        }
    }
    let xty: Vec<f64> = (0..k).map(|j| rows.iter().zip(y).map(|(r, yi)| r[j] * yi).sum()).collect();
    let coefficients: Vec<f64> = (0..k).map(|i| (0..k).map(|j| a[i][k + j] * xty[j]).sum()).collect();
    let rss: f64 = rows
        .iter()
        .zip(y)
        .map(|(r, yi)| {
            let e = yi - r.iter().zip(&coefficients).map(|(x, b)| x * b).sum::<f64>();
            e * e
        })
        .sum();
    let s2 = rss / (n - k) as f64;
    let std_errors = (0..k).map(|i| (s2 * a[i][k + i]).sqrt()).collect();
    NormalEqFit {
        coefficients,
        std_errors,
        rss,
    }
}

fn simpson_step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    // split first so a narrow peak cannot hide between the first samples
    let pieces = 16;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson_step(f, lo, hi, fa, fm, fb, whole, eps / pieces as f64, 48)
        })
        .sum()
}

pub fn normal_cdf_quad(x: f64) -> f64 {
    let phi = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    0.5 + x.signum() * integrate(&phi, 0.0, x.abs(), 1e-14)
}

pub fn t_cdf_quad(x: f64, df: f64) -> f64 {
    let c = lgamma((df + 1.0) / 2.0) - lgamma(df / 2.0) - 0.5 * (df * std::f64::consts::PI).ln();
    let dens = |t: f64| (c - (df + 1.0) / 2.0 * (1.0 + t * t / df).ln()).exp();
    0.5 + x.signum() * integrate(&dens, 0.0, x.abs(), 1e-14)
}

/// F CDF by integrating the density after `x = u^2`, which removes the
/// `x^(-1/2)` singularity at 0 when `df1 = 1`.
pub fn f_cdf_quad(x: f64, d1: f64, d2: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let ln_beta = lgamma(d1 / 2.0) + lgamma(d2 / 2.0) - lgamma((d1 + d2) / 2.0);
    let g = |u: f64| {
        let pow = if d1 == 1.0 { 0.0 } else { (d1 - 1.0) * u.ln() };
        (2f64.ln() + pow + 0.5 * d1 * d1.ln() + 0.5 * d2 * d2.ln()
            - 0.5 * (d1 + d2) * (d1 * u * u + d2).ln()
            - ln_beta)
            .exp()
    };
    integrate(&g, 0.0, x.sqrt(), 1e-14)
}

/// Minimum squared-cost over every monotone warping path, by enumeration.
pub fn dtw_exhaustive(a: &[f64], b: &[f64]) -> f64 {
    fn walk(a: &[f64], b: &[f64], i: usize, j: usize, acc: f64, best: &mut f64) {
        let acc = acc + (a[i] - b[j]).powi(2);
        if i + 1 == a.len() && j + 1 == b.len() {
            *best = best.min(acc);
            return;
        }
        if i + 1 < a.len() {
            walk(a, b, i + 1, j, acc, best);
        }
        if j + 1 < b.len() {
            walk(a, b, i, j + 1, acc, best);
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            walk(a, b, i + 1, j + 1, acc, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(a, b, 0, 0, 0.0, &mut best);
    best
}

/// Kolmogorov-Smirnov distance of a sample from Uniform(0, 1).
pub fn ks_uniform(sample: &[f64]) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &p)| ((i + 1) as f64 / n - p).max(p - i as f64 / n))
        .fold(0.0, f64::max)
}

pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Every series of length `1..=max_len` over `alphabet`.
pub fn all_words(alphabet: &[f64], max_len: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<f64>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
