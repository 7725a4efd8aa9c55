//! Three roots.
//!
//! Up to an affine map every instance is `x^{m1} (x − 1)^{m2} (x − r)^{m3}`
//! with `r > 1`. A pair `(σ1, σ2)` is a ratio vector exactly when
//! `m1/n < σ1 < m1/(m1+m2)`, `m2/(m2+m3) < σ2 < (m1+m2)/n` and
//! `n (1 − σ1) σ2 = m2`, and every admissible `σ1` is realized by exactly
//! one `r`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute tolerance on `n(1 − σ1)σ2 − m2`, applied after dividing by `n`.
pub const RELATION_TOL: f64 = 1e-9;

fn check_mults(m: &[f64; 3]) -> Result<f64> {
    if let Some(index) = m.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::NonPositiveMultiplicity {
            index,
            value: m[index],
        });
    }
    Ok(m.iter().sum())
}

fn sigma1_range(m: &[f64; 3], n: f64) -> (f64, f64) {
    (m[0] / n, m[0] / (m[0] + m[1]))
}

fn check_sigma1(m: &[f64; 3], n: f64, sigma1: f64) -> Result<()> {
    let (lower, upper) = sigma1_range(m, n);
    if sigma1 > lower && sigma1 < upper {
        Ok(())
    } else {
        Err(Error::Sigma1OutOfRange {
            sigma1,
            lower,
            upper,
        })
    }
}

/// `σ2 = m2 / (n (1 − σ1))`.
pub fn sigma2_from_sigma1(m: [f64; 3], sigma1: f64) -> Result<f64> {
    let n = check_mults(&m)?;
    check_sigma1(&m, n, sigma1)?;
    Ok(m[1] / (n * (1.0 - sigma1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct N3Verdict {
    pub is_ratio_vector: bool,
    /// `n(1 − σ1)σ2 − m2`, unscaled.
    pub relation_residual: f64,
    pub bounds_ok: bool,
}

/// Membership test for three roots.
pub fn is_ratio_vector_n3(m: [f64; 3], sigma1: f64, sigma2: f64, tol: f64) -> Result<N3Verdict> {
    let n = check_mults(&m)?;
    let (lo1, hi1) = sigma1_range(&m, n);
    let (lo2, hi2) = (m[1] / (m[1] + m[2]), (m[0] + m[1]) / n);
    let bounds_ok = lo1 < sigma1 && sigma1 < hi1 && lo2 < sigma2 && sigma2 < hi2;
    let relation_residual = n * (1.0 - sigma1) * sigma2 - m[1];
    Ok(N3Verdict {
        is_ratio_vector: bounds_ok && (relation_residual / n).abs() <= tol,
        relation_residual,
        bounds_ok,
    })
}

/// The `r > 1` for which `x^{m1}(x − 1)^{m2}(x − r)^{m3}` has first ratio `u`.
///
/// ```
/// let r = ratiovec::roots_from_sigma1_n3([1.0, 1.0, 1.0], 0.4).unwrap();
/// assert!((r - 1.6).abs() < 1e-15);
/// ```
pub fn roots_from_sigma1_n3(m: [f64; 3], u: f64) -> Result<f64> {
    let n = check_mults(&m)?;
    check_sigma1(&m, n, u)?;
    Ok(u * ((1.0 - u) * n - m[1]) / (m[0] - (m[0] + m[1]) * u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormN3 {
    pub sigma1: f64,
    pub sigma2: f64,
    pub discriminant: f64,
}

fn check_r(r: f64) -> Result<()> {
    if r > 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("need r > 1 for roots 0, 1, r; got {r}")))
    }
}

/// Ratios of `x^{m1}(x − 1)^{m2}(x − r)^{m3}` from the quadratic formula.
pub fn closed_form_ratios_n3(m: [f64; 3], r: f64) -> Result<ClosedFormN3> {
    let n = check_mults(&m)?;
    check_r(r)?;
    let [m1, m2, m3] = m;
    let a = (m1 + m2).powi(2) * r * r + 2.0 * (m2 * m3 - m1 * n) * r + (m1 + m3).powi(2);
    if a < 0.0 {
        return Err(Error::NegativeDiscriminant(a));
    }
    let root_a = a.sqrt();
    let base = (n - m3) * r - n - m2;
    Ok(ClosedFormN3 {
        sigma1: (base - root_a) / (2.0 * n) + 1.0,
        sigma2: (base + root_a) / (2.0 * n) / (r - 1.0),
        discriminant: a,
    })
}

/// `h(r) = (m2² + m1(m2 − m3)) r² + m2(m3 − m2 − m1) r + m2²`.
/// For `r > 1`, `σ1 < σ2` exactly when `h(r) > 0`.
pub fn h_poly_n3(m: [f64; 3], r: f64) -> Result<f64> {
    check_mults(&m)?;
    check_r(r)?;
    Ok(h_unchecked(&m, r))
}

fn h_coeffs(m: &[f64; 3]) -> (f64, f64, f64) {
    let [m1, m2, m3] = *m;
    (m2 * m2 + m1 * (m2 - m3), m2 * (m3 - m2 - m1), m2 * m2)
}

fn h_unchecked(m: &[f64; 3], r: f64) -> f64 {
    let (a, b, c) = h_coeffs(m);
    (a * r + b) * r + c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonotonicityVerdict {
    /// `σ1 < σ2` for every placement of the three roots.
    pub always_sigma1_lt_sigma2: bool,
    /// `m2² + m1(m2 − m3) > 0`.
    pub condition_a: bool,
    /// `m2 ≥ 2 m1 m3 / n`.
    pub condition_b: bool,
    /// `n/4 < m2 < 2 m1 m3 / n`.
    pub condition_c: bool,
    /// `h(1) = m2² + m2 m3 − m1 m3 ≥ 0`.
    pub endpoint_nonnegative: bool,
    /// The leading coefficient of `h` vanishes and its linear coefficient is
    /// non-negative, so `h(r) ≥ m2² > 0` although A fails.
    pub linear_nonnegative: bool,
    /// `A ∧ (B ∨ C)` without the endpoint condition.
    pub stated_rule: bool,
}

/// Decides whether `σ1 < σ2` holds for all root placements.
///
/// `h` is a quadratic in `r`. When its leading coefficient is positive
/// (condition A) it is positive on `(1, ∞)` if either its vertex lies at or
/// left of 1 (condition B) and `h(1) ≥ 0`, or its minimum value is positive
/// (condition C). When the leading coefficient is zero, `h` is linear with
/// positive constant term and is positive on `(1, ∞)` iff its slope is
/// non-negative, e.g. `m = (1, 2, 6)`.
///
/// `A ∧ (B ∨ C)` alone misses both the `h(1)` requirement (for
/// `m = (10, 1.6, 1)` it holds, yet `σ2 < σ1` for `r` close to 1) and the
/// linear case. That rule is still reported as `stated_rule`.
///
/// ```
/// use ratiovec::monotonicity_classify_n3;
/// assert!(monotonicity_classify_n3([1.0, 1.0, 1.0]).unwrap().always_sigma1_lt_sigma2);
/// assert!(!monotonicity_classify_n3([6.0, 1.0, 2.0]).unwrap().always_sigma1_lt_sigma2);
/// ```
pub fn monotonicity_classify_n3(m: [f64; 3]) -> Result<MonotonicityVerdict> {
    let n = check_mults(&m)?;
    let [m1, m2, m3] = m;
    let condition_a = m2 * m2 + m1 * (m2 - m3) > 0.0;
    let threshold = 2.0 * m1 * m3 / n;
    let condition_b = m2 >= threshold;
    let condition_c = n / 4.0 < m2 && m2 < threshold;
    let endpoint_nonnegative = h_unchecked(&m, 1.0) >= 0.0;
    let (lead, slope, _) = h_coeffs(&m);
    let linear_nonnegative = lead == 0.0 && slope >= 0.0;
    Ok(MonotonicityVerdict {
        always_sigma1_lt_sigma2: (condition_a && ((condition_b && endpoint_nonnegative) || condition_c))
            || linear_nonnegative,
        condition_a,
        condition_b,
        condition_c,
        endpoint_nonnegative,
        linear_nonnegative,
        stated_rule: condition_a && (condition_b || condition_c),
    })
}

/// Searches `r > 1` for a placement with `σ1 ≥ σ2`, i.e. `h(r) ≤ 0`.
///
/// With `t = 1/r`, `t² h(1/t) = a + b t + c t²` where `c = m2² > 0`, a convex
/// parabola on `(0, 1)`; golden-section search finds its minimum. Returns the
/// minimizing `r` when `h` is non-positive there, up to rounding in the
/// terms of `h` (a double root of `h`, where `σ1 = σ2`, counts).
pub fn find_order_violation_n3(m: [f64; 3]) -> Result<Option<f64>> {
    check_mults(&m)?;
    let (a, b, c) = h_coeffs(&m);
    let g = |t: f64| a + b * t + c * t * t;
    // r ranges over (1 + 1e-6, 1e6)
    let (mut lo, mut hi) = (1e-6, 1.0 / (1.0 + 1e-6));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 {
            break;
        }
        if g1 <= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        }
    }
    // The minimum may sit on an end of the search window.
    let best = [lo, 0.5 * (lo + hi), hi, 1e-6, 1.0 / (1.0 + 1e-6)]
        .into_iter()
        .min_by(|x, y| g(*x).total_cmp(&g(*y)))
        .expect("non-empty");
    let r = 1.0 / best;
    let magnitude = (a.abs() * r + b.abs()) * r + c;
    Ok((h_unchecked(&m, r) <= 8.0 * f64::EPSILON * magnitude).then_some(r))
}
