//! Verification functionals: short-interval averages, bilinear sums,
//! Birkhoff means, joining and stabilizer probes, multicorrelations.
//!
//! Sums of complex terms are accumulated in exact fixed point (each term
//! rounded once), so results do not depend on evaluation order or thread
//! count; outer sums of moduli use Neumaier summation in a fixed order.

mod averages;
mod fixed;
mod joining;
mod multicorrelation;
mod report;
mod short_interval;
mod stabilizer;

pub use averages::{
    arithmetic_progression_avg, birkhoff_mean, is_prime, equidistribution_check, kbsz_bilinear, BilinearReport,
    EquidistributionReport, Product,
};
pub use joining::{joining_support_probe, JoiningProbe};
pub use multicorrelation::{multicorrelation_series, Multicorrelation};
pub use report::StatRecord;
pub use short_interval::{
    short_interval_avg, short_interval_avg_naive, short_interval_avg_with, Progression, ShortIntervalReport,
};
pub use stabilizer::{stabilizer_translation_test, StabilizerReport, StabilizerSetup};
