//! Weyl polynomial systems: `e(P(n))` as an orbit observable of the affine
//! map `(x_1, ..., x_d) -> (x_1 + alpha, x_1 + x_2, ..., x_{d-1} + x_d)` on
//! `T^d`, with `alpha = d! a_d`.

use num::complex::Complex64;
use num::Zero;

use super::observable::e;
use super::{AffineSystem, Observable};
use crate::lie::{library, Derivation, Matrix};
use crate::nilmanifold::{GroupPoint, Nilmanifold};
use crate::scalar::{dyadic, int, Rational, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct WeylSystem {
    coeffs: Vec<Rational>,
    alpha: Rational,
    skew: Vec<Rational>,
    system: AffineSystem,
    start: GroupPoint<Rational>,
}

/// Stirling numbers of the second kind `S(i, j)` for `i, j <= d`.
fn stirling2(d: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; d + 1]; d + 1];
    s[0][0] = 1;
    for i in 1..=d {
        for j in 1..=i {
            s[i][j] = j as i64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s
}

fn binomial(n: i64, k: usize) -> Rational {
    let mut acc = int(1);
    for i in 0..k as i64 {
        acc = acc * int(n - i) / int(i + 1);
    }
    acc
}

/// Builds the system for `P(x) = a_0 + a_1 x + ... + a_d x^d` from float
/// coefficients (taken at their exact dyadic values).
pub fn weyl_system(coeffs: &[f64]) -> Result<WeylSystem> {
    let exact = coeffs.iter().map(|&c| dyadic(c)).collect::<Result<Vec<_>>>()?;
    WeylSystem::new(exact)
}

impl WeylSystem {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let d = coeffs.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
            Error::InvalidArgument("Weyl system needs a polynomial of degree at least 1".into())
        })?;
        if coeffs[d].is_zero() {
            return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()));
        }
        if d > 6 {
            return Err(Error::InvalidArgument(format!("degree {d} above the supported 6")));
        }
        // P(n) = sum_j c_j C(n, j) with c_j = j! sum_i a_i S(i, j).
        let s = stirling2(d);
        let c: Vec<Rational> = (0..=d)
            .map(|j| {
                let fact: i64 = (1..=j as i64).product();
                let sum = (j..=d).fold(int(0), |acc, i| acc + &coeffs[i] * int(s[i][j]));
                sum * int(fact)
            })
            .collect();
        let alpha = c[d].clone();
        let skew: Vec<Rational> = (1..=d).map(|i| c[d - i].clone()).collect();

        let nm = Nilmanifold::new(library::abelian(d))?;
        let mut shift = Matrix::identity(d);
        for i in 1..d {
            shift.set(i, i - 1, int(1));
        }
        let b = Derivation::log_of_unipotent(&shift)?;
        let mut u = vec![int(0); d];
        u[0] = alpha.clone();
        let system = AffineSystem::new(nm, GroupPoint::from_first(u), b)?;
        let start = GroupPoint::from_first(skew.clone());
        let w = WeylSystem { coeffs, alpha, skew, system, start };
        for n in 0..=(2 * d as i64 + 2) {
            let lhs = w.exact_phase(n);
            let rhs = (0..=d).fold(int(0), |acc, j| acc + binomial(n, j) * &c[j]);
            if !(lhs - rhs).is_integer() {
                return Err(Error::Algebra(format!("binomial-basis solve disagrees with P at n = {n}")));
            }
        }
        Ok(w)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `d! a_d`.
    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// `x_1, ..., x_d`.
    pub fn skew_coordinates(&self) -> &[Rational] {
        &self.skew
    }

    pub fn system(&self) -> &AffineSystem {
        &self.system
    }

    pub fn start(&self) -> &GroupPoint<Rational> {
        &self.start
    }

    /// The character of the last coordinate: `f(phi^n x) = e(P(n))`.
    pub fn observable(&self) -> Observable {
        let mut m = vec![0; self.degree()];
        m[self.degree() - 1] = 1;
        Observable::torus(m)
    }

    /// `P(n)` exactly, from the monomial coefficients.
    pub fn exact_phase(&self, n: i64) -> Rational {
        let x = int(n);
        self.coeffs.iter().rev().fold(int(0), |acc, a| acc * &x + a)
    }

    /// Reference value `e(P(n))` using the exact fractional part of `P(n)`.
    pub fn reference(&self, n: i64) -> Complex64 {
        e(Scalar::frac(&self.exact_phase(n)).as_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn stirling_table() {
        let s = stirling2(4);
        assert_eq!(s[4], vec![0, 1, 7, 6, 1]);
    }

    #[test]
    fn quadratic_example() {
        let r2 = 2f64.sqrt();
        let w = weyl_system(&[0.0, 0.0, r2]).unwrap();
        assert_eq!(w.alpha(), &(dyadic(r2).unwrap() * int(2)));
        // P(n) = a2 n^2 = 2 a2 C(n,2) + a2 n
        assert_eq!(w.skew_coordinates(), &[dyadic(r2).unwrap(), int(0)]);
    }

    #[test]
    fn linear_case() {
        let w = WeylSystem::new(vec![rational(1, 3), rational(2, 7)]).unwrap();
        assert_eq!(w.alpha(), &rational(2, 7));
        assert_eq!(w.skew_coordinates(), &[rational(1, 3)]);
        assert!(WeylSystem::new(vec![int(1), int(0)]).is_err());
    }
}
