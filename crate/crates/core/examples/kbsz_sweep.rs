// Bilinear sums `(1/N) sum a(pn) conj(a(qn))` over prime pairs for a
// Heisenberg nilsequence.

use nilorth::dynamics::{orbit_series, AffineSystem, Observable};
use nilorth::lie::library;
use nilorth::nilmanifold::Nilmanifold;
use nilorth::scalar::{dyadic, int};
use nilorth::stats::{is_prime, kbsz_bilinear};

fn main() -> nilorth::Result<()> {
    let nm = Nilmanifold::new(library::heisenberg())?;
    let u = nm.from_second(&[dyadic(2f64.sqrt())?, dyadic(3f64.sqrt())?, int(0)])?;
    let sys = AffineSystem::translation(nm.clone(), u)?;
    let a = orbit_series(&sys, &nm.identity(), Observable::central(1))?;
    let primes: Vec<u64> = (2..20).filter(|&p| is_prime(p)).collect();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let rep = kbsz_bilinear(&a, p, q, 100_000)?;
            println!("p = {p:>2}, q = {q:>2}: |B| = {:.3e}", rep.modulus);
        }
    }
    Ok(())
}
