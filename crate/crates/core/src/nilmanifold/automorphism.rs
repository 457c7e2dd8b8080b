use super::{GroupPoint, Nilmanifold};
use crate::lie::{Derivation, Matrix};
use crate::scalar::{int, Rational, Scalar};
use crate::{Error, Result};

/// `A = exp(B)` for a nilpotent derivation `B` with `A(Gamma) = Gamma`.
#[derive(Debug, Clone)]
pub struct Automorphism {
    log: Derivation,
    matrix: Matrix,
    inverse: Matrix,
}

impl Automorphism {
    /// Checks the Leibniz rule, nilpotency, and that both `A` and `A^-1`
    /// send every lattice generator `exp(X_i)` into `Gamma`. Generators
    /// suffice because `A` is a homomorphism.
    pub fn new(nm: &Nilmanifold, log: Derivation) -> Result<Self> {
        log.check(nm.algebra())?;
        let matrix = log.exp(&int(1));
        let inverse = log.exp(&int(-1));
        for (name, m) in [("A", &matrix), ("A^-1", &inverse)] {
            for i in 0..nm.dim() {
                let image = GroupPoint::from_first(m.apply(&nm.algebra().basis_vector::<Rational>(i)));
                if !nm.lattice_member(&image)? {
                    return Err(Error::Lattice(format!("{name} maps exp(X{i}) outside the lattice")));
                }
            }
        }
        Ok(Automorphism { log, matrix, inverse })
    }

    pub fn identity(nm: &Nilmanifold) -> Self {
        Automorphism::new(nm, Derivation::zero(nm.dim())).expect("identity preserves every lattice")
    }

    pub fn log(&self) -> &Derivation {
        &self.log
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }

    /// `A^k` as a coordinate matrix.
    pub fn power(&self, k: i64) -> Matrix {
        self.log.exp(&int(k))
    }

    pub fn apply<S: Scalar>(&self, g: &GroupPoint<S>) -> GroupPoint<S> {
        GroupPoint::from_first(self.matrix.apply(g.first()))
    }

    pub fn apply_inverse<S: Scalar>(&self, g: &GroupPoint<S>) -> GroupPoint<S> {
        GroupPoint::from_first(self.inverse.apply(g.first()))
    }
}
