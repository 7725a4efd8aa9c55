mod common;

use common::oracle_sigmas;
use rand::Rng;
use ratiovec::sample::{random_instance, random_mults, random_roots, rng_for, InstanceRanges};
use ratiovec::{
    dets_n4, elimination_factor, elimination_lhs, membership_n4, normalize, r_eval_n4, r_polynomial, reconstruct_roots_n4,
    system_residual_n4, t4_monotone_sufficient, Error, N4Candidate, Normalization, MEMBERSHIP_TOL,
};

fn candidate(roots: &[f64], mults: [f64; 4]) -> N4Candidate {
    let s = oracle_sigmas(roots, &mults);
    N4Candidate::new(mults, [s[0], s[1], s[2]]).unwrap()
}

#[test]
fn equal_multiplicities_reconstruct() {
    let c = candidate(&[-1.0, 0.0, 2.0, 4.0], [1.0; 4]);
    let (r, s) = reconstruct_roots_n4(&c).unwrap();
    assert!((r - 2.0).abs() < 1e-9 && (s - 4.0).abs() < 1e-9);
    let res = system_residual_n4(r, s, &c);
    assert!(res.iter().all(|x| x.abs() < 1e-9), "{res:?}");
}

#[test]
fn unequal_multiplicities_reconstruct() {
    let c = candidate(&[-1.0, 0.0, 1.0, 9.0], [2.0, 1.0, 1.0, 3.0]);
    let (r, s) = reconstruct_roots_n4(&c).unwrap();
    assert!((r - 1.0).abs() < 1e-9 && (s - 9.0).abs() < 1e-8);
}

#[test]
fn non_monotone_instance() {
    let c = candidate(&[-1.0, 0.0, 4.0, 6.0], [1.5, 1.0, 2f64.sqrt(), 2.0]);
    assert!(c.u > c.w && c.w > c.v);
    assert!(membership_n4(&c, MEMBERSHIP_TOL).verdict);
}

#[test]
fn system_residual_vanishes_only_at_the_roots() {
    let c = candidate(&[-1.0, 0.0, 2.0, 4.0], [1.0; 4]);
    assert!(system_residual_n4(2.0, 4.0, &c).iter().all(|x| x.abs() < 1e-9));
    assert!(system_residual_n4(2.1, 4.0, &c).iter().any(|x| x.abs() > 1e-3));
}

/// Ratios are taken from the canonical instance: reconstructing `r` amplifies
/// ratio errors by about `r`, and ratios of a badly scaled raw instance
/// already carry errors of `eps · span / gap`.
#[test]
fn membership_round_trip_on_random_instances() {
    let ranges = InstanceRanges::default();
    for i in 0..500 {
        let p = random_instance(&mut rng_for(301, i), 4, &ranges);
        let m = [p.mults()[0], p.mults()[1], p.mults()[2], p.mults()[3]];
        let q = normalize(&p, Normalization::N4Canonical).unwrap();
        let c = candidate(q.roots(), m);
        let rep = membership_n4(&c, MEMBERSHIP_TOL);
        assert!(rep.verdict && rep.bounds_ok, "{p:?} {rep:?}");
        let (r, s) = (rep.r.unwrap(), rep.s.unwrap());
        assert!(((r - q.roots()[2]) / q.roots()[2]).abs() < 1e-8);
        assert!(((s - q.roots()[3]) / q.roots()[3]).abs() < 1e-8);
        assert!(c.v * (1.0 - c.u) > m[1] / c.n());
    }
}

#[test]
fn perturbed_candidates_are_rejected() {
    let ranges = InstanceRanges::default();
    let mut rejected = 0;
    for i in 0..500 {
        let p = random_instance(&mut rng_for(302, i), 4, &ranges);
        let m = [p.mults()[0], p.mults()[1], p.mults()[2], p.mults()[3]];
        let mut c = candidate(p.roots(), m);
        c.w *= 1.0 + 1e-3;
        if !membership_n4(&c, MEMBERSHIP_TOL).verdict {
            rejected += 1;
        }
    }
    // R is a single polynomial condition; a generic perturbation breaks it
    assert!(rejected >= 495, "{rejected}");
}

#[test]
fn explicit_polynomial_matches_quotient() {
    let mut rng = rng_for(303, 0);
    for _ in 0..200 {
        let mults = random_mults(&mut rng, 4, &InstanceRanges::default());
        let m = [mults[0], mults[1], mults[2], mults[3]];
        let poly = r_polynomial(m).unwrap();
        assert!(poly.total_degree() <= 7);
        let c = N4Candidate::new(m, [rng.gen(), rng.gen(), rng.gen()]).unwrap();
        let lhs = elimination_lhs(&c);
        let rhs = elimination_factor(&c) * poly.eval(c.u, c.v, c.w);
        assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
        if let Ok(q) = r_eval_n4(&c) {
            let p = poly.eval(c.u, c.v, c.w);
            assert!((q - p).abs() <= 1e-6 * p.abs().max(1.0), "{q} vs {p}");
        }
    }
}

#[test]
fn determinants_are_cramer_numerators() {
    let c = candidate(&[-1.0, 0.0, 1.5, 2.5], [1.0, 2.0, 3.0, 0.5]);
    let d = dets_n4(&c);
    assert!(d.d > 0.0 && 0.0 < d.d1 && d.d1 < d.d2);
    assert!((d.d1 / d.d - 1.5).abs() < 1e-9 && (d.d2 / d.d - 2.5).abs() < 1e-9);
}

#[test]
fn non_members_do_not_reconstruct() {
    let c = N4Candidate::new([1.0; 4], [0.3, 0.5, 0.9]).unwrap();
    assert!(matches!(reconstruct_roots_n4(&c), Err(Error::NotAMember)));
}

#[test]
fn sufficient_condition_gives_monotone_ratios() {
    let ranges = InstanceRanges::default();
    let mut checked = 0;
    for i in 0..20_000 {
        let mut rng = rng_for(304, i);
        let mults = random_mults(&mut rng, 4, &ranges);
        let m = [mults[0], mults[1], mults[2], mults[3]];
        if !t4_monotone_sufficient(m) {
            continue;
        }
        for _ in 0..10 {
            let roots = random_roots(&mut rng, 4, &ranges);
            let s = oracle_sigmas(&roots, &mults);
            assert!(s[0] < s[1] && s[1] < s[2], "{m:?} {roots:?} {s:?}");
        }
        checked += 1;
    }
    assert!(checked > 50, "{checked}");
    assert!(t4_monotone_sufficient([1.0; 4]));
    assert!(!t4_monotone_sufficient([1.5, 1.0, 2f64.sqrt(), 2.0]));
}
