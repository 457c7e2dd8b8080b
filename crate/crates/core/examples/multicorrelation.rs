// A polynomial multicorrelation sequence in closed form, checked against a
// Monte Carlo average over a rotation orbit.

use nilorth::stats::multicorrelation_series;

fn main() -> nilorth::Result<()> {
    let alpha = 2f64.sqrt() - 1.0;
    // integral of e(x + h^2 a) e(-(x + h a))
    let d = multicorrelation_series(alpha, &[1, -1], &[vec![0, 0, 1], vec![0, 1]])?;
    for h in 0..6 {
        let exact = d.value(h);
        let mc = d.monte_carlo(h, 0.123, 100_000)?;
        println!("h = {h}: closed form {exact:.6}, orbit average {mc:.6}");
    }
    Ok(())
}
