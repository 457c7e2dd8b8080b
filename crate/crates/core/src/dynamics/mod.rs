//! Affine unipotent maps `x -> u A(x)` on nilmanifolds, their orbits and
//! suspensions, observables, and the complex sequences fed to `stats`.

mod dump;
mod observable;
mod series;
mod suspension;
mod system;
mod weyl;

pub use dump::write_orbit_csv;
pub use observable::{e, plateau, Observable, DEFAULT_DELTA};
pub(crate) use series::fill_chunked;
pub use series::{
    orbit_series, require_len, CombinedOrbit, Dilated, subsampled_orbit, Cursor, FnSeries, Orbit, OrbitSeries, SignalSeries,
    SubsampledOrbit, VecSeries, DEFAULT_BLOCK,
};
pub use suspension::{discrete_suspension, suspension_flow_sample, DiscreteSuspension};
pub use system::{point_from_numbers, reduced_floats, AffinePower, AffineSystem};
pub use weyl::{weyl_system, WeylSystem};
