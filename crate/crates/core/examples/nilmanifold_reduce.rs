// Fundamental-domain reduction and the suspension of an affine map.

use nilorth::dynamics::{suspension_flow_sample, AffineSystem};
use nilorth::lie::{library, Derivation};
use nilorth::nilmanifold::{build_suspension, GroupPoint, Nilmanifold};
use nilorth::scalar::{format_rational, int, rational};
use nilorth::Rational;

fn show(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn main() -> nilorth::Result<()> {
    let nm = Nilmanifold::new(library::heisenberg())?;
    let g = nm.from_second(&[rational(7, 3), rational(-5, 2), rational(9, 4)])?;
    let red = nm.reduce(&g);
    println!("g         second kind ({})", show(&nm.second(&g)));
    println!("reduce(g) second kind ({})", show(&nm.second(&red)));
    println!("g^-1 reduce(g) in lattice: {}", nm.lattice_member(&nm.mul(&nm.inverse(&g), &red))?);

    // x -> u A(x) with A(X2) = X1 + X2 + X3 / 2
    let b = Derivation::sparse(3, &[(0, 1, int(1)), (2, 1, rational(1, 2))])?;
    let u = GroupPoint::from_first([rational(1, 5), rational(2, 7), int(0)]);
    let sys = AffineSystem::new(nm.clone(), u.clone(), b.clone())?;
    let susp = build_suspension(&nm, b)?;
    let v: Vec<Rational> = u.first().to_vec();
    for t in [rational(1, 4), rational(1, 2), int(1)] {
        let y = suspension_flow_sample(&susp, &v, &susp.lift(&red), &t)?;
        println!("t = {:>3}: fiber {}, base ({})", format_rational(&t), format_rational(&susp.fiber(&y)), show(&nm.second(&susp.to_base(&y))));
    }
    println!("phi(x)        base ({})", show(&nm.second(&sys.step(&red))));
    Ok(())
}
