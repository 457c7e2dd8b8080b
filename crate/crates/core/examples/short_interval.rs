// The short-interval statistic for a Heisenberg nilsequence against mu,
// next to the no-cancellation control `a = u = mu`.

use nilorth::arith::MultiplicativeWeight;
use nilorth::dynamics::{orbit_series, AffineSystem, Observable};
use nilorth::lie::library;
use nilorth::nilmanifold::Nilmanifold;
use nilorth::scalar::{dyadic, int};
use nilorth::stats::short_interval_avg;

fn main() -> nilorth::Result<()> {
    let nm = Nilmanifold::new(library::heisenberg())?;
    let u = nm.from_second(&[dyadic(2f64.sqrt())?, dyadic(3f64.sqrt())?, int(0)])?;
    let sys = AffineSystem::translation(nm.clone(), u)?;
    let a = orbit_series(&sys, &nm.identity(), Observable::central(1))?;
    let mu = MultiplicativeWeight::Mobius;
    println!("{:>5} {:>9} {:>10} {:>10}", "H", "M", "A(f)", "A(mu)");
    for h in [10u64, 30, 100] {
        let m = 100 * h * h;
        let nil = short_interval_avg(&a, &mu, m, h)?.value;
        let control = short_interval_avg(&mu, &mu, m, h)?.value;
        println!("{h:>5} {m:>9} {nil:>10.6} {control:>10.6}");
    }
    Ok(())
}
