//! Domain types, validation, normalizations and the residuals of the
//! root/ratio equation system.

use nalgebra::ComplexField;
use serde::{Deserialize, Serialize};

use crate::elemsym::{elem_sym_skipping, elem_sym_upto};
use crate::error::{Error, Result};

/// Default minimum absolute distance between consecutive roots.
pub const DEFAULT_MIN_GAP: f64 = 1e-9;

/// Raw instance as it appears on disk: `{"roots": [...], "mults": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub roots: Vec<f64>,
    pub mults: Vec<f64>,
}

impl Instance {
    pub fn validate(&self) -> Result<PolyLike> {
        validate_instance(&self.roots, &self.mults)
    }
}

/// A polynomial-like function `Π (x − r_k)^{m_k}` with strictly increasing
/// real roots and positive real multiplicities.
///
/// The function itself is never evaluated. Everything goes through the
/// logarithmic derivative, which stays real for non-integer multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyLike {
    roots: Vec<f64>,
    mults: Vec<f64>,
    degree: f64,
    min_gap: f64,
}

impl PolyLike {
    /// Validates with an explicit minimum root gap.
    pub fn with_min_gap(roots: &[f64], mults: &[f64], min_gap: f64) -> Result<Self> {
        if !(min_gap >= 0.0 && min_gap.is_finite()) {
            return Err(Error::ConfigInvalid(format!("minimum gap {min_gap}")));
        }
        if roots.len() != mults.len() {
            return Err(Error::LengthMismatch {
                roots: roots.len(),
                mults: mults.len(),
            });
        }
        if roots.len() < 2 {
            return Err(Error::TooFewRoots(roots.len()));
        }
        if let Some(index) = roots.iter().position(|r| !r.is_finite()) {
            return Err(Error::NonFiniteRoot { index });
        }
        for (index, &value) in mults.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveMultiplicity { index, value });
            }
        }
        for (index, w) in roots.windows(2).enumerate() {
            if w[1] <= w[0] + min_gap {
                return Err(Error::NonIncreasingRoots {
                    index,
                    left: w[0],
                    right: w[1],
                    gap: min_gap,
                });
            }
        }
        Ok(Self {
            roots: roots.to_vec(),
            mults: mults.to_vec(),
            degree: mults.iter().sum(),
            min_gap,
        })
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn mults(&self) -> &[f64] {
        &self.mults
    }

    /// Number of distinct roots `N`.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Sum of the multiplicities.
    pub fn degree(&self) -> f64 {
        self.degree
    }

    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    pub fn to_instance(&self) -> Instance {
        Instance {
            roots: self.roots.clone(),
            mults: self.mults.clone(),
        }
    }

    /// Applies `x ↦ (x − shift) / scale` to every root. `scale` must be
    /// positive so the root order, and hence the ratio vector, is kept.
    pub fn affine(&self, shift: f64, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite() && shift.is_finite()) {
            return Err(Error::DomainError(format!(
                "affine map needs finite shift and positive scale, got ({shift}, {scale})"
            )));
        }
        let roots: Vec<f64> = self.roots.iter().map(|r| (r - shift) / scale).collect();
        Self::with_min_gap(&roots, &self.mults, self.min_gap / scale)
    }
}

/// Validates raw roots and multiplicities with the default gap. Roots are
/// never reordered.
pub fn validate_instance(roots: &[f64], mults: &[f64]) -> Result<PolyLike> {
    PolyLike::with_min_gap(roots, mults, DEFAULT_MIN_GAP)
}

/// Affine normalizations that leave the ratio vector unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// Translate so that the second root is 0.
    Translate2,
    /// Three roots mapped to `0, 1, r`.
    N3Canonical,
    /// Four roots mapped to `-1, 0, r, s`.
    N4Canonical,
}

impl Normalization {
    fn name(self) -> &'static str {
        match self {
            Normalization::Translate2 => "Translate2",
            Normalization::N3Canonical => "N3Canonical",
            Normalization::N4Canonical => "N4Canonical",
        }
    }
}

pub fn normalize(p: &PolyLike, scheme: Normalization) -> Result<PolyLike> {
    let need = |expected: usize| {
        if p.len() == expected {
            Ok(())
        } else {
            Err(Error::SchemeArityMismatch {
                scheme: scheme.name(),
                expected,
                got: p.len(),
            })
        }
    };
    let r = p.roots();
    match scheme {
        Normalization::Translate2 => p.affine(r[1], 1.0),
        Normalization::N3Canonical => {
            need(3)?;
            p.affine(r[0], r[1] - r[0])
        }
        Normalization::N4Canonical => {
            need(4)?;
            p.affine(r[1], r[1] - r[0])
        }
    }
}

/// Ratio vector of a [`PolyLike`] together with the critical points that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioVector {
    pub sigmas: Vec<f64>,
    pub critical_points: Vec<f64>,
    pub source: PolyLike,
}

/// Residuals of the `N − 1` equations linking roots and ratios.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemResidual {
    pub values: Vec<f64>,
    pub norm: f64,
}

impl SystemResidual {
    fn new(values: Vec<f64>) -> Self {
        let norm = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        Self { values, norm }
    }
}

/// Inserts the implied `r_2 = 0` into `(r_1, r_3, …, r_N)`.
pub(crate) fn expand_reduced<T: ComplexField>(reduced: &[T]) -> Vec<T> {
    let mut full = Vec::with_capacity(reduced.len() + 1);
    full.push(reduced[0].clone());
    full.push(T::zero());
    full.extend(reduced[1..].iter().cloned());
    full
}

/// The candidate critical points `x_k = (1 − σ_k) r_k + σ_k r_{k+1}`.
pub(crate) fn interior_points<T: ComplexField>(full: &[T], sigmas: &[f64]) -> Vec<T> {
    sigmas
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            full[k].clone() * T::from_f64(1.0 - s).unwrap()
                + full[k + 1].clone() * T::from_f64(s).unwrap()
        })
        .collect()
}

/// `f_k = Σ_j m_j e_k(roots without r_j) − n e_k(x_1, …, x_{N−1})` for
/// `k = 1 … N−1`, over the full root list (which contains `r_2 = 0`).
///
/// With `r_2 = 0` the last equation is the product equation
/// `m_2 r_1 r_3 ⋯ r_N = n x_1 ⋯ x_{N−1}`.
pub(crate) fn residual_full<T: ComplexField>(mults: &[f64], full: &[T], sigmas: &[f64]) -> Vec<T> {
    let top = full.len() - 1;
    let degree: f64 = mults.iter().sum();
    let xs = interior_points(full, sigmas);
    let ex = elem_sym_upto(xs, top);
    let mut out: Vec<T> = ex[1..]
        .iter()
        .map(|e| -(e.clone() * T::from_f64(degree).unwrap()))
        .collect();
    for (j, &m) in mults.iter().enumerate() {
        let deleted = elem_sym_upto(
            full.iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, v)| v.clone()),
            top,
        );
        for k in 1..=top {
            out[k - 1] += deleted[k].clone() * T::from_f64(m).unwrap();
        }
    }
    out
}

/// Jacobian of [`residual_full`] with respect to the roots at positions
/// `free` (row `k − 1`, column = position in `free`).
pub(crate) fn residual_jacobian<T: ComplexField>(
    mults: &[f64],
    full: &[T],
    sigmas: &[f64],
    free: &[usize],
) -> Vec<Vec<T>> {
    let top = full.len() - 1;
    let degree: f64 = mults.iter().sum();
    let xs = interior_points(full, sigmas);
    let mut jac = vec![vec![T::zero(); free.len()]; top];
    for (col, &i) in free.iter().enumerate() {
        for k in 1..=top {
            let mut acc = T::zero();
            for (j, &m) in mults.iter().enumerate() {
                if j != i {
                    acc += elem_sym_skipping(full, k - 1, &[i, j]) * T::from_f64(m).unwrap();
                }
            }
            // x_i depends on r_i with weight 1 − σ_i, x_{i−1} with weight σ_{i−1}.
            if i < sigmas.len() {
                acc -= elem_sym_skipping(&xs, k - 1, &[i])
                    * T::from_f64(degree * (1.0 - sigmas[i])).unwrap();
            }
            if i >= 1 {
                acc -= elem_sym_skipping(&xs, k - 1, &[i - 1])
                    * T::from_f64(degree * sigmas[i - 1]).unwrap();
            }
            jac[k - 1][col] = acc;
        }
    }
    jac
}

/// Residuals of the system at the reduced roots `(r_1, r_3, …, r_N)` (with
/// `r_2 = 0` implied) and ratios `σ_1 … σ_{N−1}`. An exact zero means the
/// pair solves the system.
///
/// ```
/// use ratiovec::system_residual;
/// // roots (-1, 0, 1) with unit multiplicities have σ = (1 − 1/√3, 1/√3)
/// let s = 1.0 / 3f64.sqrt();
/// let res = system_residual(&[1.0, 1.0, 1.0], &[-1.0, 1.0], &[1.0 - s, s]).unwrap();
/// assert!(res.norm < 1e-14);
/// ```
pub fn system_residual(mults: &[f64], reduced_roots: &[f64], sigmas: &[f64]) -> Result<SystemResidual> {
    let n_roots = mults.len();
    if n_roots < 2 {
        return Err(Error::ArityTooSmall {
            min: 2,
            got: n_roots,
        });
    }
    if reduced_roots.len() != n_roots - 1 {
        return Err(Error::ArityMismatch {
            expected: n_roots - 1,
            got: reduced_roots.len(),
        });
    }
    if sigmas.len() != n_roots - 1 {
        return Err(Error::ArityMismatch {
            expected: n_roots - 1,
            got: sigmas.len(),
        });
    }
    let full = expand_reduced(reduced_roots);
    Ok(SystemResidual::new(residual_full(mults, &full, sigmas)))
}
