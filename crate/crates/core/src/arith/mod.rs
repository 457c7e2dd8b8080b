//! Segmented sieves for the Möbius and Liouville functions and bounded
//! multiplicative weights, exposed as [`SignalSeries`](crate::dynamics::SignalSeries).

mod cache;
mod sieve;
mod weight;

pub use cache::{cached_segment, read_segment, write_segment};
pub use sieve::{
    base_primes, liouville_segment, mobius_segment, trial_liouville, trial_mobius, Sieve, SieveKind,
    SieveSegment, DEFAULT_MAX_LEN, MAX_HI,
};
pub use weight::{weight_eval, MultiplicativeWeight, WeightSpec};
