//! Nilpotent Lie groups in exponential and Malcev coordinates, affine
//! unipotent dynamics on nilmanifolds, segmented Moebius/Liouville sieves,
//! and the statistics used to test Moebius orthogonality of nilsequences
//! numerically: short-interval averages, bilinear prime-pair sums, joining
//! invariants and cocycle identities.
//!
//! Module map:
//!
//! * [`lie`]: exact rational kernel (brackets, central series, BCH, derivations).
//! * [`nilmanifold`]: lattices, coset reduction, fibrations, suspensions.
//! * [`dynamics`]: affine systems, observables, orbits and signal series.
//! * [`arith`]: segmented sieves and multiplicative weights.
//! * [`stats`]: the verification functionals.
//! * [`skewprod`]: cocycles, group extensions, selector cocycles, character lattices.
//! * [`harness`]: named experiments, configs and run records.

pub mod arith;
pub mod dynamics;
pub mod harness;
pub mod lie;
pub mod nilmanifold;
pub mod scalar;
pub mod skewprod;
pub mod stats;

pub use scalar::{Coords, Number, Rational, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },
    #[error("invalid algebra: {0}")]
    Algebra(String),
    #[error("not nilpotent within {0} steps")]
    NotNilpotent(usize),
    #[error("declared class {declared} exceeded: central series has class {actual}")]
    ClassExceeded { declared: usize, actual: usize },
    #[error("Leibniz rule fails on basis pair ({0}, {1})")]
    NotDerivation(usize, usize),
    #[error("basis is not a strong Malcev basis: {0}")]
    NotMalcev(String),
    #[error("lattice check failed: {0}")]
    Lattice(String),
    #[error("wrong numeric flavor: {0}")]
    Flavor(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series too short: need indices up to {needed}, have up to {have}")]
    InsufficientLength { needed: u64, have: u64 },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
