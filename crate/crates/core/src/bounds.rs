//! Multiplicity-dependent bounds on each ratio:
//!
//! ```text
//! m_k / (m_k + … + m_N)  <  σ_k  <  (m_1 + … + m_k) / (m_1 + … + m_{k+1})
//! ```
//!
//! With all multiplicities equal to one these reduce to the classical
//! `1/(N−k+1) < σ_k < k/(k+1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::RatioVector;

/// Tolerance for the two-root case, where both bounds coincide with `σ_1`.
pub const TWO_ROOT_EQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub all_strictly_inside: bool,
}

/// Lower and upper bounds for `σ_1 … σ_{N−1}`.
///
/// ```
/// let (lo, hi) = ratiovec::ratio_bounds(&[1.0, 1.0, 1.0]).unwrap();
/// assert_eq!(lo, vec![1.0 / 3.0, 0.5]);
/// assert_eq!(hi, vec![0.5, 2.0 / 3.0]);
/// ```
pub fn ratio_bounds(mults: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if mults.len() < 2 {
        return Err(Error::ArityTooSmall {
            min: 2,
            got: mults.len(),
        });
    }
    if let Some(index) = mults.iter().position(|m| !(*m > 0.0 && m.is_finite())) {
        return Err(Error::NonPositiveMultiplicity {
            index,
            value: mults[index],
        });
    }
    let n = mults.len();
    // prefix[k] = m_1 + … + m_k, suffix[k] = m_{k+1} + … + m_N (0-based k)
    let mut prefix = vec![0.0; n + 1];
    for k in 0..n {
        prefix[k + 1] = prefix[k] + mults[k];
    }
    let mut suffix = vec![0.0; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + mults[k];
    }
    let lower = (0..n - 1).map(|k| mults[k] / suffix[k]).collect();
    let upper = (0..n - 1).map(|k| prefix[k + 1] / prefix[k + 2]).collect();
    Ok((lower, upper))
}

/// Checks a computed ratio vector against [`ratio_bounds`]. For two roots the
/// check is equality within [`TWO_ROOT_EQUALITY_TOL`].
pub fn check_bounds(rv: &RatioVector) -> BoundsReport {
    let (lower, upper) =
        ratio_bounds(rv.source.mults()).expect("a validated instance has at least two positive multiplicities");
    let all_strictly_inside = if rv.sigmas.len() == 1 {
        (rv.sigmas[0] - lower[0]).abs() <= TWO_ROOT_EQUALITY_TOL
    } else {
        rv.sigmas
            .iter()
            .zip(lower.iter().zip(&upper))
            .all(|(s, (lo, hi))| lo < s && s < hi)
    };
    BoundsReport {
        lower,
        upper,
        sigmas: rv.sigmas.clone(),
        all_strictly_inside,
    }
}
