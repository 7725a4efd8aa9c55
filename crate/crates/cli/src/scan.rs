//! Scan campaigns. Sample `i` draws from its own stream `rng_for(seed, i)`,
//! so rows do not depend on worker scheduling and `--skip` resumes exactly.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use ratiovec::sample::{random_mults, random_roots, rng_for, InstanceRanges};
use ratiovec::{
    check_bounds, h_poly_n3, is_ratio_vector_n3, monotonicity_classify_n3, ratio_vector, t4_monotone_sufficient,
    validate_instance, SolverConfig,
};

use crate::report::{join, Row};
use crate::{lib_err, CliError};

#[derive(Debug, Clone, Copy)]
pub struct ScanOpts {
    pub seed: u64,
    pub samples: usize,
    pub skip: usize,
    pub tol: f64,
}

fn sigmas(roots: &[f64], mults: &[f64]) -> Result<Vec<f64>, CliError> {
    let p = validate_instance(roots, mults).map_err(lib_err)?;
    Ok(ratio_vector(&p, &SolverConfig::default()).map_err(lib_err)?.sigmas)
}

fn run<R: Send>(range: std::ops::Range<usize>, f: impl Fn(usize) -> Result<R, CliError> + Sync + Send) -> Result<Vec<R>, CliError> {
    range.into_par_iter().map(f).collect()
}

#[derive(Debug, Serialize)]
pub struct BoundsRow {
    pub index: usize,
    pub roots: Vec<f64>,
    pub mults: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub inside: bool,
}

impl Row for BoundsRow {
    fn header() -> &'static [&'static str] {
        &["index", "roots", "mults", "sigmas", "lower", "upper", "inside"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            join(&self.roots),
            join(&self.mults),
            join(&self.sigmas),
            join(&self.lower),
            join(&self.upper),
            self.inside.to_string(),
        ]
    }
}

/// Random instances with `n_roots` roots checked against the ratio bounds.
pub fn bounds(n_roots: usize, o: &ScanOpts) -> Result<Vec<BoundsRow>, CliError> {
    if n_roots < 2 {
        return Err(CliError::Input(format!("bounds scan needs --n >= 2, got {n_roots}")));
    }
    let ranges = InstanceRanges::default();
    run(o.skip.min(o.samples)..o.samples, |index| {
        let mut rng = rng_for(o.seed, index as u64);
        let mults = random_mults(&mut rng, n_roots, &ranges);
        let roots = random_roots(&mut rng, n_roots, &ranges);
        let p = validate_instance(&roots, &mults).map_err(lib_err)?;
        let rv = ratio_vector(&p, &SolverConfig::default()).map_err(lib_err)?;
        let rep = check_bounds(&rv);
        Ok(BoundsRow {
            index,
            roots,
            mults,
            sigmas: rep.sigmas,
            lower: rep.lower,
            upper: rep.upper,
            inside: rep.all_strictly_inside,
        })
    })
}

#[derive(Debug, Serialize)]
pub struct MonotonicityRow {
    pub index: usize,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub r: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub h: f64,
    pub sigma1_lt_sigma2: bool,
    pub h_positive: bool,
    pub h_agrees: bool,
    pub always: bool,
    pub stated_rule: bool,
    /// False when the classifier promises `σ1 < σ2` and the sample breaks it.
    pub consistent: bool,
}

impl Row for MonotonicityRow {
    fn header() -> &'static [&'static str] {
        &[
            "index",
            "m1",
            "m2",
            "m3",
            "r",
            "sigma1",
            "sigma2",
            "h",
            "sigma1_lt_sigma2",
            "h_positive",
            "h_agrees",
            "always",
            "stated_rule",
            "consistent",
        ]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.m1.to_string(),
            self.m2.to_string(),
            self.m3.to_string(),
            self.r.to_string(),
            self.sigma1.to_string(),
            self.sigma2.to_string(),
            self.h.to_string(),
            self.sigma1_lt_sigma2.to_string(),
            self.h_positive.to_string(),
            self.h_agrees.to_string(),
            self.always.to_string(),
            self.stated_rule.to_string(),
            self.consistent.to_string(),
        ]
    }
}

/// Multiplicities on the grid `{1, …, max_mult}³`, `per_point` random
/// `r > 1` each, roots `(0, 1, r)`. `r − 1` is log-uniform in `[1e−3, 1e3]`.
pub fn monotonicity(max_mult: u32, per_point: usize, o: &ScanOpts) -> Result<Vec<MonotonicityRow>, CliError> {
    if max_mult == 0 || per_point == 0 {
        return Err(CliError::Input("monotonicity scan needs --max-mult >= 1 and --samples >= 1".into()));
    }
    let side = max_mult as usize;
    let total = side.pow(3) * per_point;
    run(o.skip.min(total)..total, |index| {
        let cell = index / per_point;
        let m = [
            (cell / (side * side) + 1) as f64,
            (cell / side % side + 1) as f64,
            (cell % side + 1) as f64,
        ];
        let mut rng = rng_for(o.seed, index as u64);
        let r = 1.0 + 10f64.powf(rng.gen_range(-3.0..3.0));
        let s = sigmas(&[0.0, 1.0, r], &m)?;
        let h = h_poly_n3(m, r).map_err(lib_err)?;
        let verdict = monotonicity_classify_n3(m).map_err(lib_err)?;
        let lt = s[0] < s[1];
        Ok(MonotonicityRow {
            index,
            m1: m[0],
            m2: m[1],
            m3: m[2],
            r,
            sigma1: s[0],
            sigma2: s[1],
            h,
            sigma1_lt_sigma2: lt,
            h_positive: h > 0.0,
            h_agrees: lt == (h > 0.0),
            always: verdict.always_sigma1_lt_sigma2,
            stated_rule: verdict.stated_rule,
            consistent: !verdict.always_sigma1_lt_sigma2 || lt,
        })
    })
}

#[derive(Debug, Serialize)]
pub struct T4Row {
    pub index: usize,
    pub mults: Vec<f64>,
    pub roots: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub monotone: bool,
}

impl Row for T4Row {
    fn header() -> &'static [&'static str] {
        &["index", "mults", "roots", "sigmas", "monotone"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            join(&self.mults),
            join(&self.roots),
            join(&self.sigmas),
            self.monotone.to_string(),
        ]
    }
}

/// Four-root instances whose multiplicities satisfy the monotone sufficient
/// condition (rejection sampled), with random roots.
pub fn t4(o: &ScanOpts) -> Result<Vec<T4Row>, CliError> {
    let ranges = InstanceRanges::default();
    run(o.skip.min(o.samples)..o.samples, |index| {
        let mut rng = rng_for(o.seed, index as u64);
        let mults = loop {
            let m = random_mults(&mut rng, 4, &ranges);
            if t4_monotone_sufficient([m[0], m[1], m[2], m[3]]) {
                break m;
            }
        };
        let roots = random_roots(&mut rng, 4, &ranges);
        let s = sigmas(&roots, &mults)?;
        Ok(T4Row {
            index,
            monotone: s[0] < s[1] && s[1] < s[2],
            mults,
            roots,
            sigmas: s,
        })
    })
}

#[derive(Debug, Serialize)]
pub struct T1Row {
    pub index: usize,
    pub roots: Vec<f64>,
    pub mults: Vec<f64>,
    pub sigmas: Vec<f64>,
    /// `|n(1 − σ1)σ2 − m2| / n`.
    pub relation_residual: f64,
    pub member: bool,
}

impl Row for T1Row {
    fn header() -> &'static [&'static str] {
        &["index", "roots", "mults", "sigmas", "relation_residual", "member"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            join(&self.roots),
            join(&self.mults),
            join(&self.sigmas),
            self.relation_residual.to_string(),
            self.member.to_string(),
        ]
    }
}

/// Random three-root instances checked against the three-root relation.
pub fn t1(o: &ScanOpts) -> Result<Vec<T1Row>, CliError> {
    let ranges = InstanceRanges::default();
    run(o.skip.min(o.samples)..o.samples, |index| {
        let mut rng = rng_for(o.seed, index as u64);
        let mults = random_mults(&mut rng, 3, &ranges);
        let roots = random_roots(&mut rng, 3, &ranges);
        let s = sigmas(&roots, &mults)?;
        let m = [mults[0], mults[1], mults[2]];
        let verdict = is_ratio_vector_n3(m, s[0], s[1], o.tol).map_err(lib_err)?;
        let n: f64 = mults.iter().sum();
        Ok(T1Row {
            index,
            relation_residual: verdict.relation_residual.abs() / n,
            member: verdict.is_ratio_vector,
            roots,
            mults,
            sigmas: s,
        })
    })
}
