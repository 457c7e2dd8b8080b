// Cocycle sums over a circle rotation, the selector cocycle of `Z < R`,
// and the character lattice `A_{2,2,3}`.

use nilorth::scalar::{format_rational, rational, Rational, Scalar};
use nilorth::skewprod::{akrs_lattice, cocycle_sum, extension_iterate, selector_theta, Cocycle, GroupPair, Map, Torus};

fn main() -> nilorth::Result<()> {
    let alpha = rational(3, 8);
    let a = alpha.clone();
    let rotation = Map::invertible(move |x: &Rational| (x + &alpha).frac(), move |x: &Rational| (x - &a).frac());
    let c = Cocycle::new(rotation, Torus::zero(1), |x: &Rational| Torus::new(vec![x.clone()]));
    let x = rational(1, 5);
    for n in [-3, 0, 1, 5] {
        let s = cocycle_sum(&c, &x, n)?;
        println!("phi^({n})(1/5) = {}", format_rational(&s.coords()[0]));
    }
    let (y, k) = extension_iterate(&c, &(x, Torus::zero(1)), 8);
    println!("T_phi^8 (1/5, 0) = ({}, {})", format_rational(&y), format_rational(&k.coords()[0]));

    let pair = GroupPair::parse("Z<R")?;
    println!("theta(17/10, 1/2) = {}", selector_theta(&pair, &rational(17, 10), &rational(1, 2))?);

    let lat = akrs_lattice(2, 2, 3, 1)?;
    println!("(4, 9) in A: {}, (2, 3) in A: {}", lat.member(&[4], &[9]), lat.member(&[2], &[3]));
    for (x, y) in lat.annihilator_sample(3, 10, 1) {
        println!("annihilator point x = {}, y = {}", format_rational(&x[0]), format_rational(&y[0]));
    }
    Ok(())
}
