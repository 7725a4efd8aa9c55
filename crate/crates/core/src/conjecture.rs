//! Randomized search for two distinct normalized instances with the same
//! ratio vector.
//!
//! Both instances have roots `−1, 0, r_3 < … < r_N` and the given
//! multiplicities. Consecutive gaps are parameterized by their logarithms
//! (relative to `r_2 − r_1 = 1`) and kept in `[GAP_MIN, GAP_MAX]`. A compass
//! search minimizes `‖σ(p) − σ(q)‖∞` over pairs whose log-gap vectors differ
//! by at least `SEPARATION` in the max norm, i.e. some gap differs by a
//! relative `1e−3`. The ratio map is scale invariant, so separation is
//! measured in these scale-free coordinates; an absolute root distance would
//! let a far root move by `1e−3` while barely changing any ratio.
//!
//! A gap that stays away from zero supports uniqueness; a tiny gap between
//! separated instances is a candidate counterexample worth inspecting.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::critical::{ratio_vector, SolverConfig};
use crate::error::{Error, Result};
use crate::model::PolyLike;
use crate::sample::rng_for;

pub const GAP_MIN: f64 = 0.05;
pub const GAP_MAX: f64 = 20.0;
pub const SEPARATION: f64 = 1e-3;

/// Objective evaluations spent on one local search.
const LOCAL_BUDGET: usize = 400;
const INITIAL_STEP: f64 = 0.5;
const MIN_STEP: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureSearchReport {
    pub n_roots: usize,
    pub mults: Vec<f64>,
    pub seed: u64,
    pub best_gap: f64,
    /// Full root lists `(−1, 0, r_3, …, r_N)` of the closest pair found.
    pub best_pair: [Vec<f64>; 2],
    /// Max-norm distance between the log-gap vectors of the closest pair.
    pub best_separation: f64,
    /// `‖p − q‖∞` in root space of the closest pair.
    pub best_root_distance: f64,
    pub evaluations: usize,
    pub restarts: usize,
}

struct Search<'a> {
    mults: &'a [f64],
    free: usize,
    cfg: SolverConfig,
}

impl Search<'_> {
    fn roots(&self, log_gaps: &[f64]) -> Vec<f64> {
        let mut roots = Vec::with_capacity(self.free + 2);
        roots.push(-1.0);
        roots.push(0.0);
        let mut current = 0.0;
        for z in log_gaps {
            current += z.exp();
            roots.push(current);
        }
        roots
    }

    fn sigmas(&self, roots: &[f64]) -> Option<Vec<f64>> {
        let p = PolyLike::with_min_gap(roots, self.mults, 0.0).ok()?;
        ratio_vector(&p, &self.cfg).ok().map(|rv| rv.sigmas)
    }

    /// `None` when the point is outside the box, not separated, or the
    /// solver failed.
    fn objective(&self, point: &[f64]) -> Option<f64> {
        let (lo, hi) = (GAP_MIN.ln(), GAP_MAX.ln());
        if point.iter().any(|z| *z < lo || *z > hi) {
            return None;
        }
        if separation(&point[..self.free], &point[self.free..]) < SEPARATION {
            return None;
        }
        let p = self.roots(&point[..self.free]);
        let q = self.roots(&point[self.free..]);
        let sp = self.sigmas(&p)?;
        let sq = self.sigmas(&q)?;
        Some(sp.iter().zip(&sq).fold(0.0, |acc, (a, b)| acc.max((a - b).abs())))
    }

    /// Compass search from random starts until `budget` evaluations are
    /// spent. Returns `(best value, best point, evaluations)`.
    fn local(&self, seed: u64, restart: usize, budget: usize) -> (f64, Vec<f64>, usize) {
        let mut rng = rng_for(seed, restart as u64);
        let (lo, hi) = (GAP_MIN.ln(), GAP_MAX.ln());
        let mut used = 0;
        let mut best = (f64::INFINITY, Vec::new());
        while used < budget {
            let mut point: Vec<f64> = (0..2 * self.free).map(|_| rng.gen_range(lo..hi)).collect();
            used += 1;
            let Some(mut value) = self.objective(&point) else {
                continue;
            };
            let mut step = INITIAL_STEP;
            'outer: while used < budget && step >= MIN_STEP {
                for coord in 0..point.len() {
                    for dir in [1.0, -1.0] {
                        if used >= budget {
                            break 'outer;
                        }
                        let mut trial = point.clone();
                        trial[coord] += dir * step;
                        used += 1;
                        if let Some(v) = self.objective(&trial) {
                            if v < value {
                                value = v;
                                point = trial;
                                continue 'outer;
                            }
                        }
                    }
                }
                step *= 0.5;
            }
            if value < best.0 {
                best = (value, point);
            }
        }
        (best.0, best.1, used)
    }
}

fn separation(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
}

/// Spends exactly `budget` objective evaluations on seeded compass searches,
/// split into independent chunks of 400, and reports the closest pair.
pub fn conjecture_search(n_roots: usize, mults: &[f64], budget: usize, seed: u64) -> Result<ConjectureSearchReport> {
    if n_roots < 3 {
        return Err(Error::ConfigInvalid(format!("need at least 3 roots, got {n_roots}")));
    }
    if mults.len() != n_roots {
        return Err(Error::ArityMismatch {
            expected: n_roots,
            got: mults.len(),
        });
    }
    if let Some(index) = mults.iter().position(|m| !(*m > 0.0 && m.is_finite())) {
        return Err(Error::NonPositiveMultiplicity {
            index,
            value: mults[index],
        });
    }
    if budget == 0 {
        return Err(Error::ConfigInvalid("budget must be at least 1".into()));
    }
    let search = Search {
        mults,
        free: n_roots - 2,
        cfg: SolverConfig::default(),
    };
    let restarts = budget.div_ceil(LOCAL_BUDGET);
    let mut results: Vec<(f64, Vec<f64>, usize)> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let slice = LOCAL_BUDGET.min(budget - i * LOCAL_BUDGET);
            search.local(seed, i, slice)
        })
        .collect();
    let evaluations = results.iter().map(|r| r.2).sum();
    // stable sort keeps restart order among ties
    results.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (best_gap, point, _) = results.swap_remove(0);
    let (p, q, best_separation) = if point.is_empty() {
        (Vec::new(), Vec::new(), 0.0)
    } else {
        (
            search.roots(&point[..search.free]),
            search.roots(&point[search.free..]),
            separation(&point[..search.free], &point[search.free..]),
        )
    };
    Ok(ConjectureSearchReport {
        n_roots,
        mults: mults.to_vec(),
        seed,
        best_gap,
        best_separation,
        best_root_distance: separation(&p, &q),
        best_pair: [p, q],
        evaluations,
        restarts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(conjecture_search(2, &[1.0; 2], 10, 0).is_err());
        assert!(conjecture_search(3, &[1.0; 2], 10, 0).is_err());
        assert!(conjecture_search(3, &[1.0; 3], 0, 0).is_err());
    }

    #[test]
    fn three_roots_stay_apart() {
        let rep = conjecture_search(3, &[1.0, 2.0, 0.5], 1000, 11).unwrap();
        assert!(rep.best_gap > 0.0);
        assert!(rep.best_separation >= SEPARATION);
        assert_eq!(rep.evaluations, 1000);
    }

    #[test]
    fn reproducible() {
        let a = conjecture_search(4, &[1.0; 4], 800, 5).unwrap();
        let b = conjecture_search(4, &[1.0; 4], 800, 5).unwrap();
        assert_eq!(a, b);
    }
}
