//! Cocycles over invertible maps, group extensions, selector cocycles for
//! `Z < R` and `kZ < Z`, suspension flows over a map, and the character
//! lattices `A_{k,r,s}`.

mod cocycle;
mod group;
mod lattice;
mod selector;

pub use cocycle::{
    cocycle_sum, extension_iterate, extension_step, lifted_cocycle, suspension_flow_over_map, Cocycle, Map,
};
pub use group::{AbelianGroup, Torus};
pub use lattice::{akrs_lattice, CharacterLattice};
pub use selector::{selector_theta, selector_theta_generic, GroupPair};
