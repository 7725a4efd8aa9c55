//! Ratio vectors of polynomial-like functions.
//!
//! For `p(x) = (x − r_1)^{m_1} ⋯ (x − r_N)^{m_N}` with increasing real roots
//! and positive real multiplicities, `p'` has exactly one zero `x_k` in each
//! interval `(r_k, r_{k+1})`. The ratio vector collects the relative
//! positions `σ_k = (x_k − r_k) / (r_{k+1} − r_k)`.
//!
//! This crate computes ratio vectors, checks them against
//! multiplicity-dependent bounds, decides membership exactly for three and
//! four roots, and solves the root/ratio equation system numerically for any
//! number of roots.
//!
//! ```
//! use ratiovec::{ratio_vector, validate_instance, SolverConfig};
//!
//! let r = (13f64.sqrt() - 1.0) / 2.0;
//! let p = validate_instance(&[0.0, 1.0, r], &[4.0, 3.0, 6.0])?;
//! let rv = ratio_vector(&p, &SolverConfig::default())?;
//! let expected = 0.5 - 13f64.sqrt() / 26.0;
//! assert!((rv.sigmas[0] - expected).abs() < 1e-12);
//! assert!((rv.sigmas[1] - expected).abs() < 1e-12);
//! # Ok::<(), ratiovec::Error>(())
//! ```
//!
//! The guide in `book/` walks through the mathematics; its code listings are
//! compiled and run as doctests of this crate.

pub mod bounds;
pub mod conjecture;
pub mod critical;
mod elemsym;
pub mod error;
pub mod general;
pub mod model;
pub mod n3;
pub mod n4;
pub mod sample;

pub use bounds::{check_bounds, ratio_bounds, BoundsReport};
pub use conjecture::{conjecture_search, ConjectureSearchReport};
pub use critical::{
    critical_points, drag_compare, log_deriv, log_deriv_slope, ratio_vector, DragComparison, SolverConfig,
};
pub use elemsym::{elem_sym, elem_sym_deleted};
pub use error::{Error, Result};
pub use general::{
    degenerate_check, q_eval, solve_system_general, GeneralSolveResult, GeneralSolverConfig, SolveStatus,
};
pub use model::{
    normalize, system_residual, validate_instance, Instance, Normalization, PolyLike, RatioVector,
    SystemResidual, DEFAULT_MIN_GAP,
};
pub use n3::{
    closed_form_ratios_n3, find_order_violation_n3, h_poly_n3, is_ratio_vector_n3, monotonicity_classify_n3,
    roots_from_sigma1_n3, sigma2_from_sigma1, ClosedFormN3, MonotonicityVerdict, N3Verdict,
};
pub use n4::{
    dets_n4, elimination_factor, elimination_lhs, membership_n4, r_eval_n4, r_polynomial, reconstruct_roots_n4,
    system_residual_n4, t4_monotone_sufficient, Determinants, MembershipReportN4, N4Candidate, Poly3,
    MEMBERSHIP_TOL,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/ratio-vectors.md")]
    mod ratio_vectors {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/three-roots.md")]
    mod three_roots {}
    #[doc = include_str!("../../../book/src/four-roots.md")]
    mod four_roots {}
    #[doc = include_str!("../../../book/src/general.md")]
    mod general {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
