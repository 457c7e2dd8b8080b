use std::fmt::Debug;

use crate::scalar::{Rational, Scalar};

/// The value groups of cocycles: `Z`, `R` (float or exact) and `T^d`.
pub trait AbelianGroup: Clone + PartialEq + Debug {
    fn identity_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;

    /// `n`-fold sum, by doubling.
    fn times(&self, n: i64) -> Self {
        let base = if n < 0 { self.negate() } else { self.clone() };
        let (mut acc, mut sq, mut k) = (self.identity_like(), base, n.unsigned_abs());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.plus(&sq);
            }
            sq = sq.plus(&sq);
            k >>= 1;
        }
        acc
    }
}

impl AbelianGroup for i64 {
    fn identity_like(&self) -> Self {
        0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl AbelianGroup for f64 {
    fn identity_like(&self) -> Self {
        0.0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl AbelianGroup for Rational {
    fn identity_like(&self) -> Self {
        num::Zero::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn negate(&self) -> Self {
        -self
    }
}

/// A point of `T^d = R^d / Z^d`, kept in `[0, 1)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Torus<S>(Vec<S>);

impl<S: Scalar> Torus<S> {
    pub fn new(v: Vec<S>) -> Self {
        Torus(v.iter().map(Scalar::frac).collect())
    }

    pub fn zero(d: usize) -> Self {
        Torus(vec![S::zero(); d])
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }
}

impl<S: Scalar> AbelianGroup for Torus<S> {
    fn identity_like(&self) -> Self {
        Torus::zero(self.0.len())
    }
    fn plus(&self, o: &Self) -> Self {
        assert_eq!(self.0.len(), o.0.len(), "torus dimensions differ");
        Torus(self.0.iter().zip(&o.0).map(|(a, b)| (a.clone() + b.clone()).frac()).collect())
    }
    fn negate(&self) -> Self {
        Torus(self.0.iter().map(|a| (-a.clone()).frac()).collect())
    }
}
