//! Four roots.
//!
//! Normalizing to roots `-1, 0, r, s` with `0 < r < s`, write
//! `(u, v, w) = (σ1, σ2, σ3)`. Two of the three equations relating roots and
//! ratios are linear in `(r, s)`, so Cramer's rule gives `r = D1/D`,
//! `s = D2/D`. Substituting into the remaining quadratic equation and
//! clearing denominators yields a polynomial identity whose left side factors
//! as `(nu − m1)(nv(1 − u) − m2) · R(u, v, w)` with `R` of degree 7.
//!
//! `(u, v, w)` is a ratio vector exactly when `0 < D1 < D2`, `D > 0` and
//! `R = 0`; the roots are then unique.

mod poly;

pub use poly::{Monomial, Poly3};

use serde::Serialize;

use crate::error::{Error, Result};

/// Default tolerance on the scale-normalized `|R|`.
pub const MEMBERSHIP_TOL: f64 = 1e-7;

/// Denominator factors closer to zero than this (relative to `n`) are
/// treated as degenerate.
const DEGENERACY_TOL: f64 = 1e-12;

/// A candidate ratio triple together with its multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct N4Candidate {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub m: [f64; 4],
}

impl N4Candidate {
    pub fn new(m: [f64; 4], sigmas: [f64; 3]) -> Result<Self> {
        if let Some(index) = m.iter().position(|x| !(*x > 0.0 && x.is_finite())) {
            return Err(Error::NonPositiveMultiplicity {
                index,
                value: m[index],
            });
        }
        Ok(Self {
            u: sigmas[0],
            v: sigmas[1],
            w: sigmas[2],
            m,
        })
    }

    pub fn n(&self) -> f64 {
        self.m.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Determinants {
    pub d: f64,
    pub d1: f64,
    pub d2: f64,
}

/// `D`, `D1`, `D2` of the linear part of the system.
pub fn dets_n4(c: &N4Candidate) -> Determinants {
    let N4Candidate { u, v, w, m } = *c;
    let [m1, m2, m3, m4] = m;
    let n = c.n();
    let d = (n * (w - v) - m3) * (n * (u - 1.0) * v * w + m2)
        - (n * (1.0 - w) - m4) * (n * (u - 1.0) * v * (1.0 - w));
    let d1 = (n * u - m1) * (m2 - n * v * w * (1.0 - u));
    let d2 = (n * u - m1) * n * v * (1.0 - u) * (1.0 - w);
    Determinants { d, d1, d2 }
}

/// The cleared quadratic equation evaluated at `r = D1/D`, `s = D2/D`
/// (multiplied through by `D²`).
pub fn elimination_lhs(c: &N4Candidate) -> f64 {
    let N4Candidate { u, v, w, m } = *c;
    let [m1, m2, m3, m4] = m;
    let n = c.n();
    let Determinants { d, d1, d2 } = dets_n4(c);
    n * v * (1.0 - w) * d1 * d1
        + (n * v * w - m1 - m2) * d1 * d2
        + (n * (1.0 - u) * (w - v - 1.0) + m2 + m4) * d1 * d
        + (n * w * (u - 1.0) + m2 + m3) * d2 * d
}

/// `(nu − m1)(nv(1 − u) − m2)`, the factor split off [`elimination_lhs`].
pub fn elimination_factor(c: &N4Candidate) -> f64 {
    let n = c.n();
    (n * c.u - c.m[0]) * (n * c.v * (1.0 - c.u) - c.m[1])
}

/// `R(u, v, w)` evaluated as the quotient [`elimination_lhs`] / [`elimination_factor`].
pub fn r_eval_n4(c: &N4Candidate) -> Result<f64> {
    let n = c.n();
    let f1 = n * c.u - c.m[0];
    let f2 = n * c.v * (1.0 - c.u) - c.m[1];
    for f in [f1, f2] {
        if f.abs() <= DEGENERACY_TOL * n {
            return Err(Error::DegenerateDenominator(f));
        }
    }
    Ok(elimination_lhs(c) / (f1 * f2))
}

/// `R` expanded into an explicit polynomial in `(u, v, w)` for the given
/// multiplicities, by exact division of the expanded numerator.
pub fn r_polynomial(m: [f64; 4]) -> Result<Poly3> {
    N4Candidate::new(m, [0.0; 3])?;
    let [m1, m2, m3, m4] = m;
    let n: f64 = m.iter().sum();
    let (u, v, w) = (Poly3::u(), Poly3::v(), Poly3::w());
    let one = Poly3::constant(1.0);
    let k = Poly3::constant;

    let one_m_u = &one - &u;
    let one_m_w = &one - &w;
    let u_m_1 = &u - &one;
    let vw = &v * &w;
    let nu_m1 = &(&u * n) - &k(m1);

    let d = &(&(&(&(&w - &v) * n) - &k(m3)) * &(&(&(&u_m_1 * &vw) * n) + &k(m2)))
        - &(&(&(&one_m_w * n) - &k(m4)) * &(&(&(&u_m_1 * &v) * &one_m_w) * n));
    let d1 = &nu_m1 * &(&k(m2) - &(&(&vw * &one_m_u) * n));
    let d2 = &nu_m1 * &(&(&(&v * &one_m_u) * &one_m_w) * n);

    let c1 = &(&v * &one_m_w) * n;
    let c2 = &(&(&vw * n) - &k(m1)) - &k(m2);
    let c3 = &(&(&one_m_u * &(&(&w - &v) - &one)) * n) + &k(m2 + m4);
    let c4 = &(&(&w * &u_m_1) * n) + &k(m2 + m3);

    let numerator = &(&(&(&c1 * &(&d1 * &d1)) + &(&c2 * &(&d1 * &d2))) + &(&c3 * &(&d1 * &d)))
        + &(&c4 * &(&d2 * &d));
    let factor = &nu_m1 * &(&(&(&v * &one_m_u) * n) - &k(m2));
    let (quotient, remainder) = numerator.div_exact(&factor);
    let noise = remainder.max_abs_coeff();
    if noise > 1e-9 * numerator.max_abs_coeff() {
        return Err(Error::DomainError(format!(
            "numerator not divisible: remainder coefficient {noise}"
        )));
    }
    Ok(quotient)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReportN4 {
    pub d: f64,
    pub d1: f64,
    pub d2: f64,
    /// `R(u, v, w)`; absent when a denominator factor vanishes.
    pub r_value: Option<f64>,
    /// `|R| / max(1, |D| · max(|D1|, |D2|))`.
    pub r_scaled: Option<f64>,
    /// The bounds on `(u, v, w)` implied by the multiplicities. Diagnostic only.
    pub bounds_ok: bool,
    /// `0 < D1 < D2` and `D > 0`.
    pub order_ok: bool,
    pub r: Option<f64>,
    pub s: Option<f64>,
    pub verdict: bool,
}

fn bounds_hold(c: &N4Candidate) -> bool {
    let [m1, m2, m3, m4] = c.m;
    let n = c.n();
    m1 / n < c.u
        && c.u < m1 / (m1 + m2)
        && m2 / (m2 + m3 + m4) < c.v
        && c.v < (m1 + m2) / (m1 + m2 + m3)
        && m3 / (m3 + m4) < c.w
        && c.w < (m1 + m2 + m3) / n
}

/// Membership test for four roots.
///
/// ```
/// use ratiovec::{membership_n4, N4Candidate, MEMBERSHIP_TOL};
/// let c = N4Candidate::new([1.0; 4], [0.3, 0.5, 0.9]).unwrap();
/// assert!(!membership_n4(&c, MEMBERSHIP_TOL).verdict);
/// ```
pub fn membership_n4(c: &N4Candidate, tol: f64) -> MembershipReportN4 {
    let Determinants { d, d1, d2 } = dets_n4(c);
    let order_ok = d > 0.0 && 0.0 < d1 && d1 < d2;
    let r_value = r_eval_n4(c).ok();
    let r_scaled = r_value.map(|r| r.abs() / (d.abs() * d1.abs().max(d2.abs())).max(1.0));
    let verdict = order_ok && r_scaled.is_some_and(|x| x <= tol);
    MembershipReportN4 {
        d,
        d1,
        d2,
        r_value,
        r_scaled,
        bounds_ok: bounds_hold(c),
        order_ok,
        r: verdict.then(|| d1 / d),
        s: verdict.then(|| d2 / d),
        verdict,
    }
}

/// The unique `0 < r < s` such that `(x+1)^{m1} x^{m2} (x−r)^{m3} (x−s)^{m4}`
/// has ratio vector `(u, v, w)`.
pub fn reconstruct_roots_n4(c: &N4Candidate) -> Result<(f64, f64)> {
    let report = membership_n4(c, MEMBERSHIP_TOL);
    match (report.r, report.s) {
        (Some(r), Some(s)) => Ok((r, s)),
        _ => Err(Error::NotAMember),
    }
}

/// Left-hand sides (minus right-hand sides) of the three normalized
/// equations at `(r, s, u, v, w)`: the linear one, the quadratic one and the
/// product one, in that order.
pub fn system_residual_n4(r: f64, s: f64, c: &N4Candidate) -> [f64; 3] {
    let N4Candidate { u, v, w, m } = *c;
    let [m1, m2, m3, m4] = m;
    let n = c.n();
    let linear = (n * (w - v) - m3) * r + (n * (1.0 - w) - m4) * s - (n * u - m1);
    let quadratic = n * v * (1.0 - w) * r * r
        + (n * v * w - m1 - m2) * r * s
        + (n * (1.0 - u) * (w - v - 1.0) + m2 + m4) * r
        + (n * w * (u - 1.0) + m2 + m3) * s;
    let product = n * v * (u - 1.0) * (1.0 - w) * r + (n * v * w * (u - 1.0) + m2) * s;
    [linear, quadratic, product]
}

/// Sufficient condition for `σ1 < σ2 < σ3`:
/// `m1 + m4 ≤ min(3 m2 − m3, 3 m3 − m2)`.
pub fn t4_monotone_sufficient(m: [f64; 4]) -> bool {
    let [m1, m2, m3, m4] = m;
    m1 + m4 <= (3.0 * m2 - m3).min(3.0 * m3 - m2)
}
