//! Critical points and ratio vectors.
//!
//! On each root interval `(r_k, r_{k+1})` the logarithmic derivative
//! `S(x) = Σ m_j / (x − r_j)` falls strictly from `+∞` to `−∞`, so it has
//! exactly one zero there and that zero is the critical point `x_k`. It is
//! located by bisection, with Newton steps taken only when they land inside
//! the current bracket.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{PolyLike, RatioVector};

/// Stopping rule for the per-interval solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_iter >= 1) {
            return Err(Error::ConfigInvalid(format!("{self:?}")));
        }
        Ok(())
    }
}

/// `(S(x), S'(x))` without any guard.
#[inline]
fn eval_unchecked(p: &PolyLike, x: f64) -> (f64, f64) {
    let mut s = 0.0;
    let mut ds = 0.0;
    for (&r, &m) in p.roots().iter().zip(p.mults()) {
        let inv = 1.0 / (x - r);
        s += m * inv;
        ds -= m * inv * inv;
    }
    (s, ds)
}

fn check_off_roots(p: &PolyLike, x: f64) -> Result<()> {
    for &r in p.roots() {
        if (x - r).abs() <= 4.0 * f64::EPSILON * x.abs().max(r.abs()).max(f64::MIN_POSITIVE) {
            return Err(Error::EvalAtRoot { x, root: r });
        }
    }
    Ok(())
}

/// `S(x) = p'(x)/p(x) = Σ m_k / (x − r_k)`.
pub fn log_deriv(p: &PolyLike, x: f64) -> Result<f64> {
    check_off_roots(p, x)?;
    Ok(eval_unchecked(p, x).0)
}

/// `S'(x) = −Σ m_k / (x − r_k)²`, negative everywhere off the roots.
pub fn log_deriv_slope(p: &PolyLike, x: f64) -> Result<f64> {
    check_off_roots(p, x)?;
    Ok(eval_unchecked(p, x).1)
}

/// Moves `offset` towards zero until `S` at `base + offset` has the sign
/// `want_positive`. The offset starts at a thousandth of the interval.
fn bracket_end(p: &PolyLike, base: f64, width: f64, toward: f64, want_positive: bool) -> Option<f64> {
    let mut eps = width / 1000.0;
    loop {
        let x = base + toward * eps;
        if x == base {
            return None;
        }
        let s = eval_unchecked(p, x).0;
        if (want_positive && s > 0.0) || (!want_positive && s < 0.0) {
            return Some(x);
        }
        eps *= 0.5;
    }
}

fn solve_interval(p: &PolyLike, k: usize, cfg: &SolverConfig) -> Result<f64> {
    let lo = p.roots()[k];
    let hi = p.roots()[k + 1];
    let width = hi - lo;
    let fail = Error::ConvergenceFailure {
        interval: k,
        iterations: cfg.max_iter,
    };
    let mut a = bracket_end(p, lo, width, 1.0, true).ok_or_else(|| fail.clone())?;
    let mut b = bracket_end(p, hi, width, -1.0, false).ok_or_else(|| fail.clone())?;
    let tol = cfg.abs_tol + cfg.rel_tol * width;

    let mut x = 0.5 * (a + b);
    let mut step_prev = b - a;
    let mut step = step_prev;
    for _ in 0..cfg.max_iter {
        let (s, ds) = eval_unchecked(p, x);
        if s == 0.0 {
            return Ok(x);
        }
        if s > 0.0 {
            a = x;
        } else {
            b = x;
        }
        let newton = x - s / ds;
        let use_newton =
            newton.is_finite() && newton > a && newton < b && (2.0 * s).abs() <= (step_prev * ds).abs();
        step_prev = step;
        if use_newton {
            step = x - newton;
            x = newton;
        } else {
            step = 0.5 * (b - a);
            x = a + step;
        }
        if step.abs() <= tol || b - a <= tol {
            return Ok(polish(p, x, a, b));
        }
    }
    Err(fail)
}

/// One last Newton step, kept only if it stays in the bracket.
fn polish(p: &PolyLike, x: f64, a: f64, b: f64) -> f64 {
    let (s, ds) = eval_unchecked(p, x);
    let next = x - s / ds;
    if next.is_finite() && next >= a && next <= b {
        next
    } else {
        x
    }
}

/// The `N − 1` critical points, one per root interval, in increasing order.
///
/// ```
/// use ratiovec::{critical_points, validate_instance, SolverConfig};
/// let p = validate_instance(&[-1.0, 0.0, 1.0], &[1.0, 1.0, 1.0]).unwrap();
/// let xs = critical_points(&p, &SolverConfig::default()).unwrap();
/// assert!((xs[1] - 1.0 / 3f64.sqrt()).abs() < 1e-14);
/// ```
pub fn critical_points(p: &PolyLike, cfg: &SolverConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    (0..p.len() - 1).map(|k| solve_interval(p, k, cfg)).collect()
}

/// `σ_k = (x_k − r_k) / (r_{k+1} − r_k)`.
pub fn ratio_vector(p: &PolyLike, cfg: &SolverConfig) -> Result<RatioVector> {
    let critical_points = critical_points(p, cfg)?;
    let r = p.roots();
    let sigmas = critical_points
        .iter()
        .enumerate()
        .map(|(k, x)| (x - r[k]) / (r[k + 1] - r[k]))
        .collect();
    Ok(RatioVector {
        sigmas,
        critical_points,
        source: p.clone(),
    })
}

/// Critical points of two instances whose roots were dragged to the right.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DragComparison {
    pub before: Vec<f64>,
    pub after: Vec<f64>,
    pub moved_right: Vec<bool>,
}

impl DragComparison {
    pub fn all_moved_right(&self) -> bool {
        self.moved_right.iter().all(|&b| b)
    }
}

/// Compares critical points of `p` and `q`, where `q` has the same
/// multiplicities and every root of `q` is at least the matching root of
/// `p`, with at least one strictly greater. Under that hypothesis every
/// critical point of `q` is strictly to the right of the one of `p`.
pub fn drag_compare(p: &PolyLike, q: &PolyLike, cfg: &SolverConfig) -> Result<DragComparison> {
    if p.mults() != q.mults() {
        return Err(Error::MultiplicityMismatch);
    }
    if let Some(index) = p.roots().iter().zip(q.roots()).position(|(a, b)| b < a) {
        return Err(Error::HypothesisViolated { index });
    }
    if p.roots() == q.roots() {
        return Err(Error::HypothesisViolated { index: 0 });
    }
    let before = critical_points(p, cfg)?;
    let after = critical_points(q, cfg)?;
    let moved_right = before.iter().zip(&after).map(|(x, y)| y > x).collect();
    Ok(DragComparison {
        before,
        after,
        moved_right,
    })
}
