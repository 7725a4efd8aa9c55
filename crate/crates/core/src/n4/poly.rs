//! Sparse polynomials in `(u, v, w)` with `f64` coefficients, just enough to
//! expand the four-root membership polynomial.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponents of `(u, v, w)`. The derived order is lexicographic with
/// `u > v > w`, which is the monomial order used by [`Poly3::div_exact`].
pub type Monomial = [u32; 3];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly3 {
    terms: BTreeMap<Monomial, f64>,
}

impl Poly3 {
    pub fn constant(c: f64) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exp: Monomial, c: f64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0.0 {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn u() -> Self {
        Self::monomial([1, 0, 0], 1.0)
    }

    pub fn v() -> Self {
        Self::monomial([0, 1, 0], 1.0)
    }

    pub fn w() -> Self {
        Self::monomial([0, 0, 1], 1.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &f64)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }

    pub fn eval(&self, u: f64, v: f64, w: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * u.powi(e[0] as i32) * v.powi(e[1] as i32) * w.powi(e[2] as i32))
            .sum()
    }

    fn leading(&self) -> Option<(Monomial, f64)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, *c))
    }

    fn add_term(&mut self, exp: Monomial, c: f64) {
        let entry = self.terms.entry(exp).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            self.terms.remove(&exp);
        }
    }

    /// Drops coefficients below `rel · max|coeff|`.
    fn prune(&mut self, rel: f64) {
        let cutoff = rel * self.max_abs_coeff();
        self.terms.retain(|_, c| c.abs() > cutoff);
    }

    /// Division by a single divisor in lex order. Returns `(quotient,
    /// remainder)`; for an exact divisor the remainder is rounding noise.
    pub fn div_exact(&self, divisor: &Poly3) -> (Poly3, Poly3) {
        let (lead_exp, lead_c) = divisor.leading().expect("division by the zero polynomial");
        let scale = self.max_abs_coeff().max(f64::MIN_POSITIVE);
        let mut rest = self.clone();
        let mut quotient = Poly3::default();
        let mut remainder = Poly3::default();
        while let Some((exp, c)) = rest.leading() {
            if c.abs() <= 1e-13 * scale {
                rest.terms.remove(&exp);
                remainder.add_term(exp, c);
                continue;
            }
            if exp.iter().zip(&lead_exp).all(|(a, b)| a >= b) {
                let q_exp = [exp[0] - lead_exp[0], exp[1] - lead_exp[1], exp[2] - lead_exp[2]];
                let q_c = c / lead_c;
                quotient.add_term(q_exp, q_c);
                for (d_exp, d_c) in &divisor.terms {
                    let e = [q_exp[0] + d_exp[0], q_exp[1] + d_exp[1], q_exp[2] + d_exp[2]];
                    rest.add_term(e, -q_c * d_c);
                }
                // the leading monomial cancels exactly in exact arithmetic
                rest.terms.remove(&exp);
            } else {
                rest.terms.remove(&exp);
                remainder.add_term(exp, c);
            }
        }
        quotient.prune(1e-15);
        (quotient, remainder)
    }
}

impl Add for &Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

impl Sub for &Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -*c);
        }
        out
    }
}

impl Mul for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

impl Mul<f64> for &Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: f64) -> Poly3 {
        let mut out = Poly3::default();
        for (e, c) in &self.terms {
            out.add_term(*e, c * rhs);
        }
        out
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        self * -1.0
    }
}
