// Two consequences of joinings of powers: the torus invariant
// `s t1 - r t2` and the stabilizer translation of a correlation.

use nilorth::dynamics::{AffineSystem, Observable};
use nilorth::lie::library;
use nilorth::nilmanifold::Nilmanifold;
use nilorth::scalar::{dyadic, int, rational};
use nilorth::stats::{joining_support_probe, stabilizer_translation_test, StabilizerSetup};

fn main() -> nilorth::Result<()> {
    let alpha = [2f64.sqrt() - 1.0, 3f64.sqrt() - 1.0];
    for (r, s) in [(1, 2), (2, 3), (3, 7)] {
        let p = joining_support_probe(&alpha, r, s, (&[0.1, 0.2], &[0.5, 0.9]), 10_000)?;
        println!("r = {r}, s = {s}: invariant {:?}, drift {:.1e}", p.invariant, p.drift);
    }

    let nm = Nilmanifold::new(library::heisenberg())?;
    let u = nm.from_second(&[dyadic(2f64.sqrt())?, dyadic(3f64.sqrt())?, int(0)])?;
    let setup = StabilizerSetup {
        system: AffineSystem::translation(nm.clone(), u)?,
        x: nm.from_second(&[rational(1, 3), rational(1, 5), rational(1, 7)])?,
        y: nm.from_second(&[rational(2, 7), rational(5, 11), rational(3, 13)])?,
        f1: Observable::central(1),
        f2: Observable::central(1),
        r: 2,
        s: 3,
        k: 2,
        c: rational(1, 10),
    };
    let rep = stabilizer_translation_test(&setup, 100_000)?;
    println!("expected factor {:?}, observed ratio {:?}", rep.expected, rep.ratio);
    println!("|after - expected * before| = {:.1e}, |correlation| = {:.3e}", rep.ratio_error, rep.correlation);
    Ok(())
}
