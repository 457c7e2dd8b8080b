// `e(sqrt(2) n^2)` as an orbit of an affine map on the 2-torus.

use nilorth::dynamics::{weyl_system, SignalSeries};
use nilorth::dynamics::orbit_series;

fn main() -> nilorth::Result<()> {
    let w = weyl_system(&[0.0, 0.0, 2f64.sqrt()])?;
    let a = orbit_series(w.system(), w.start(), w.observable())?;
    let vals = a.values(0, 1_000_001);
    let worst = vals.iter().enumerate().map(|(n, z)| (w.reference(n as i64) - z).norm()).fold(0.0, f64::max);
    for (n, z) in vals.iter().enumerate().take(5) {
        println!("n = {n}: orbit {z:.6}, e(P(n)) {:.6}", w.reference(n as i64));
    }
    println!("max |orbit - e(P(n))| over n <= 1e6: {worst:.2e}");
    Ok(())
}
