// Dumps the first orbit points of a Heisenberg affine map with the values
// of a central character, as CSV on stdout.

use nilorth::dynamics::{write_orbit_csv, AffineSystem, Observable, Orbit};
use nilorth::lie::{library, Derivation};
use nilorth::nilmanifold::Nilmanifold;
use nilorth::scalar::{dyadic, int, rational};

fn main() -> nilorth::Result<()> {
    let nm = Nilmanifold::new(library::heisenberg())?;
    let b = Derivation::sparse(3, &[(0, 1, int(1)), (2, 1, rational(1, 2))])?;
    let u = nm.from_second(&[dyadic(5f64.sqrt())?, int(0), dyadic(0.1)?])?;
    let sys = AffineSystem::new(nm.clone(), u, b)?;
    let x = nm.from_second(&[rational(2, 3), rational(1, 9), int(0)])?;
    let orbit = Orbit::new(&sys, &x)?;
    write_orbit_csv(std::io::stdout().lock(), &orbit, &Observable::central(1), 0, 10)
}
