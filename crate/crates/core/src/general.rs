//! Arbitrary numbers of roots.
//!
//! Given multiplicities and a candidate ratio vector, the root/ratio system
//! is solved numerically for the roots. The system is homogeneous in the
//! roots, so the scale is fixed by `r_1 = −1` (and `r_2 = 0` as usual),
//! leaving `N − 2` unknowns for `N − 1` equations. Solutions exist only on a
//! proper subvariety of ratio space, so the solver minimizes the residual in
//! the least-squares sense (damped Gauss–Newton from many starts) and
//! declares a solution when the residual reaches the tolerance.
//!
//! "No solution" is a semi-decision: every start failed.

use nalgebra::{ComplexField, DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{residual_full, residual_jacobian};
use crate::n4::{r_eval_n4, N4Candidate};

type Complex = nalgebra::Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralSolverConfig {
    /// Number of real starting points.
    pub starts: usize,
    /// Threshold on the scaled residual (see [`GeneralSolveResult`]).
    pub tol: f64,
    pub max_iter: usize,
    pub max_backtracks: usize,
    /// Retry from complex-perturbed starts when no real start converges.
    pub complex_probe: bool,
}

impl Default for GeneralSolverConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            tol: 1e-8,
            max_iter: 100,
            max_backtracks: 30,
            complex_probe: true,
        }
    }
}

impl GeneralSolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 || !(self.tol > 0.0) || self.max_iter == 0 {
            return Err(Error::ConfigInvalid(format!("{self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SolveStatus {
    RealOrderedSolution,
    RealUnorderedSolution,
    ComplexOnly,
    NoConvergence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralSolveResult {
    pub status: SolveStatus,
    /// `(r_1, r_3, …, r_N)` with `r_1 = −1`; `r_2 = 0` is implied.
    pub roots: Option<Vec<f64>>,
    /// `max_k |f_k| / (n ρ^k)` with `ρ = max(1, max |r_i|)`, the residual of
    /// the degree-`k` equation relative to its natural size.
    pub residual_norm: f64,
    pub starts_tried: usize,
    /// All inputs were in `(0, 1)`.
    pub sigmas_in_unit_interval: bool,
}

/// Shared numeric interface of the real and complex iterations.
trait Field: ComplexField<RealField = f64> + Send + Sync {}
impl Field for f64 {}
impl Field for Complex {}

struct Problem<'a> {
    mults: &'a [f64],
    sigmas: &'a [f64],
    degree: f64,
}

impl Problem<'_> {
    fn full<T: Field>(&self, free: &[T]) -> Vec<T> {
        let mut full = Vec::with_capacity(free.len() + 2);
        full.push(T::from_f64(-1.0).unwrap());
        full.push(T::zero());
        full.extend_from_slice(free);
        full
    }

    fn rho<T: Field>(free: &[T]) -> f64 {
        free.iter().fold(1.0f64, |acc, x| acc.max(x.clone().modulus()))
    }

    fn raw<T: Field>(&self, free: &[T]) -> Vec<T> {
        residual_full(self.mults, &self.full(free), self.sigmas)
    }

    fn scaled_norm<T: Field>(&self, free: &[T]) -> f64 {
        let rho = Self::rho(free);
        self.raw(free)
            .into_iter()
            .enumerate()
            .map(|(k, f)| f.modulus() / (self.degree * rho.powi(k as i32 + 1)))
            .fold(0.0, f64::max)
    }

    fn weighted<T: Field>(&self, free: &[T], weights: &[f64]) -> DVector<T> {
        DVector::from_iterator(
            weights.len(),
            self.raw(free)
                .into_iter()
                .zip(weights)
                .map(|(f, w)| f * T::from_f64(*w).unwrap()),
        )
    }
}

struct RunOutcome<T> {
    free: Vec<T>,
    scaled: f64,
}

/// Damped Gauss–Newton with backtracking on the weighted residual.
fn gauss_newton<T: Field>(problem: &Problem, start: Vec<T>, cfg: &GeneralSolverConfig) -> RunOutcome<T> {
    let n_eq = problem.sigmas.len();
    let rho0 = Problem::rho(&start);
    let weights: Vec<f64> = (0..n_eq)
        .map(|k| 1.0 / (problem.degree * rho0.powi(k as i32 + 1)))
        .collect();
    let positions: Vec<usize> = (2..n_eq + 1).collect();
    let mut x = start;
    let mut f = problem.weighted(&x, &weights);
    let mut merit = f.norm_squared();

    for _ in 0..cfg.max_iter {
        if !merit.is_finite() || Problem::rho(&x) > 1e8 {
            break;
        }
        let rows = residual_jacobian(problem.mults, &problem.full(&x), problem.sigmas, &positions);
        let jac = DMatrix::from_fn(n_eq, x.len(), |i, j| {
            rows[i][j].clone() * T::from_f64(weights[i]).unwrap()
        });
        let rhs = -f.clone();
        let Ok(step) = jac.svd(true, true).solve(&rhs, 1e-14) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=cfg.max_backtracks {
            let trial: Vec<T> = x
                .iter()
                .zip(step.iter())
                .map(|(xi, di)| xi.clone() + di.clone() * T::from_f64(lambda).unwrap())
                .collect();
            let f_trial = problem.weighted(&trial, &weights);
            let m_trial = f_trial.norm_squared();
            if m_trial.is_finite() && m_trial < merit {
                accepted = Some((trial, f_trial, m_trial));
                break;
            }
            lambda *= 0.5;
        }
        let Some((trial, f_trial, m_trial)) = accepted else {
            break;
        };
        let small_gain = m_trial > 0.999 * merit;
        x = trial;
        f = f_trial;
        merit = m_trial;
        if merit == 0.0 || (small_gain && problem.scaled_norm(&x) <= cfg.tol) {
            break;
        }
    }
    let scaled = if Problem::rho(&x) > 1e8 {
        f64::INFINITY
    } else {
        problem.scaled_norm(&x)
    };
    RunOutcome { free: x, scaled }
}

/// Deterministic starting points `r_3 < r_4 < …` spread geometrically.
fn starting_points(unknowns: usize, count: usize) -> Vec<Vec<f64>> {
    const GROWTH: [f64; 8] = [1.0, 0.5, 2.0, 0.25, 4.0, 0.75, 1.5, 3.0];
    (0..count)
        .map(|i| {
            let first = 0.1 * 100f64.powf((i % 8) as f64 / 7.0) * 1.37f64.powi((i / 64) as i32);
            let growth = GROWTH[(i / 8) % 8];
            let mut roots = Vec::with_capacity(unknowns);
            let mut current = first;
            for j in 0..unknowns {
                if j > 0 {
                    current += first * growth.powi(j as i32);
                }
                roots.push(current);
            }
            roots
        })
        .collect()
}

fn is_ordered(free: &[f64]) -> bool {
    free.first().is_none_or(|&x| x > 0.0) && free.windows(2).all(|w| w[0] < w[1])
}

fn reduced(free: &[f64]) -> Vec<f64> {
    let mut roots = vec![-1.0];
    roots.extend_from_slice(free);
    roots
}

fn rank(status: SolveStatus, scaled: f64, free: &[f64]) -> (SolveStatus, f64, Vec<f64>) {
    (status, scaled, free.to_vec())
}

fn cmp_candidates(a: &(SolveStatus, f64, Vec<f64>), b: &(SolveStatus, f64, Vec<f64>)) -> std::cmp::Ordering {
    a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then_with(|| {
        a.2.iter()
            .zip(&b.2)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    })
}

fn check_inputs(mults: &[f64], sigmas: &[f64]) -> Result<()> {
    if mults.len() < 2 {
        return Err(Error::ArityTooSmall {
            min: 2,
            got: mults.len(),
        });
    }
    if sigmas.len() + 1 != mults.len() {
        return Err(Error::ArityMismatch {
            expected: mults.len() - 1,
            got: sigmas.len(),
        });
    }
    if let Some(index) = mults.iter().position(|m| !(*m > 0.0 && m.is_finite())) {
        return Err(Error::NonPositiveMultiplicity {
            index,
            value: mults[index],
        });
    }
    if sigmas.iter().any(|s| !s.is_finite()) {
        return Err(Error::DomainError("ratios must be finite".into()));
    }
    Ok(())
}

/// Solves for roots `(−1, 0, r_3, …, r_N)` with ratio vector `sigmas`.
///
/// ```
/// use ratiovec::{solve_system_general, GeneralSolverConfig, SolveStatus};
/// let res = solve_system_general(&[1.0, 1.0, 1.0], &[0.4, 1.0 / 1.8], &GeneralSolverConfig::default()).unwrap();
/// assert_eq!(res.status, SolveStatus::RealOrderedSolution);
/// assert!((res.roots.unwrap()[1] - 0.6).abs() < 1e-9);
/// ```
pub fn solve_system_general(
    mults: &[f64],
    sigmas: &[f64],
    cfg: &GeneralSolverConfig,
) -> Result<GeneralSolveResult> {
    check_inputs(mults, sigmas)?;
    cfg.validate()?;
    let problem = Problem {
        mults,
        sigmas,
        degree: mults.iter().sum(),
    };
    let sigmas_in_unit_interval = sigmas.iter().all(|s| *s > 0.0 && *s < 1.0);
    let unknowns = mults.len() - 2;

    if unknowns == 0 {
        let scaled = problem.scaled_norm::<f64>(&[]);
        let found = scaled <= cfg.tol;
        return Ok(GeneralSolveResult {
            status: if found {
                SolveStatus::RealOrderedSolution
            } else {
                SolveStatus::NoConvergence
            },
            roots: found.then(|| vec![-1.0]),
            residual_norm: scaled,
            starts_tried: 1,
            sigmas_in_unit_interval,
        });
    }

    let starts = starting_points(unknowns, cfg.starts);
    let runs: Vec<RunOutcome<f64>> = starts
        .par_iter()
        .map(|s| gauss_newton(&problem, s.clone(), cfg))
        .collect();
    let mut candidates: Vec<_> = runs
        .iter()
        .map(|run| {
            let status = if run.scaled > cfg.tol {
                SolveStatus::NoConvergence
            } else if is_ordered(&run.free) {
                SolveStatus::RealOrderedSolution
            } else {
                SolveStatus::RealUnorderedSolution
            };
            rank(status, run.scaled, &run.free)
        })
        .collect();
    candidates.sort_by(cmp_candidates);
    let best = &candidates[0];
    let mut starts_tried = starts.len();

    if best.0 != SolveStatus::NoConvergence {
        return Ok(GeneralSolveResult {
            status: best.0,
            roots: Some(reduced(&best.2)),
            residual_norm: best.1,
            starts_tried,
            sigmas_in_unit_interval,
        });
    }

    if cfg.complex_probe {
        let complex_runs: Vec<RunOutcome<Complex>> = starts
            .par_iter()
            .map(|s| {
                let start = s
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| Complex::new(x, if j % 2 == 0 { 0.3 } else { -0.3 } * x))
                    .collect();
                gauss_newton(&problem, start, cfg)
            })
            .collect();
        starts_tried += complex_runs.len();
        let mut converged: Vec<_> = complex_runs
            .iter()
            .filter(|run| run.scaled <= cfg.tol)
            .map(|run| {
                let rho = Problem::rho(&run.free);
                let imag = run.free.iter().fold(0.0f64, |a, z| a.max(z.im.abs()));
                let real: Vec<f64> = run.free.iter().map(|z| z.re).collect();
                let status = if imag > 1e-6 * rho {
                    SolveStatus::ComplexOnly
                } else if is_ordered(&real) {
                    SolveStatus::RealOrderedSolution
                } else {
                    SolveStatus::RealUnorderedSolution
                };
                rank(status, run.scaled, &real)
            })
            .collect();
        converged.sort_by(cmp_candidates);
        if let Some(found) = converged.first() {
            let real_roots = found.0 != SolveStatus::ComplexOnly;
            return Ok(GeneralSolveResult {
                status: found.0,
                roots: real_roots.then(|| reduced(&found.2)),
                residual_norm: found.1,
                starts_tried,
                sigmas_in_unit_interval,
            });
        }
    }

    Ok(GeneralSolveResult {
        status: SolveStatus::NoConvergence,
        roots: None,
        residual_norm: best.1,
        starts_tried,
        sigmas_in_unit_interval,
    })
}

/// True when the all-ones ratio vector admits no solution with `r_1 = −1`,
/// real or complex, from any start.
pub fn degenerate_check(mults: &[f64], cfg: &GeneralSolverConfig) -> Result<bool> {
    if mults.len() < 2 {
        return Err(Error::ArityTooSmall {
            min: 2,
            got: mults.len(),
        });
    }
    let ones = vec![1.0; mults.len() - 1];
    let res = solve_system_general(mults, &ones, cfg)?;
    Ok(res.status == SolveStatus::NoConvergence)
}

/// A polynomial in the ratios that vanishes on every ratio vector:
/// `n(1 − σ1)σ2 − m2` for three roots and `R(σ1, σ2, σ3)` for four.
pub fn q_eval(mults: &[f64], sigmas: &[f64]) -> Result<f64> {
    check_inputs(mults, sigmas)?;
    match mults.len() {
        3 => {
            let n: f64 = mults.iter().sum();
            Ok(n * (1.0 - sigmas[0]) * sigmas[1] - mults[1])
        }
        4 => {
            let c = N4Candidate::new(
                [mults[0], mults[1], mults[2], mults[3]],
                [sigmas[0], sigmas[1], sigmas[2]],
            )?;
            r_eval_n4(&c)
        }
        other => Err(Error::UnsupportedArity(other)),
    }
}
