//! Test-only oracle: plain bisection on the logarithmic derivative, sharing
//! no code with the library's hybrid solver.

#![allow(dead_code)]

pub fn oracle_critical_points(roots: &[f64], mults: &[f64]) -> Vec<f64> {
    let s = |x: f64| -> f64 { roots.iter().zip(mults).map(|(r, m)| m / (x - r)).sum() };
    roots
        .windows(2)
        .map(|w| {
            let (mut lo, mut hi) = (w[0], w[1]);
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    return mid;
                }
                if s(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        })
        .collect()
}

pub fn oracle_sigmas(roots: &[f64], mults: &[f64]) -> Vec<f64> {
    oracle_critical_points(roots, mults)
        .iter()
        .enumerate()
        .map(|(k, x)| (x - roots[k]) / (roots[k + 1] - roots[k]))
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}
