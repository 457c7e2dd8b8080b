#![allow(dead_code)]

use nilorth::lie::{library, LieAlgebra};
use nilorth::scalar::rational;
use nilorth::{Coords, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random rational with numerator in `[-6, 6]` and denominator in `1..=4`.
pub fn small_rational(r: &mut impl Rng) -> Rational {
    rational(r.gen_range(-6..=6), r.gen_range(1..=4))
}

pub fn random_vector(r: &mut impl Rng, n: usize) -> Coords<Rational> {
    (0..n).map(|_| small_rational(r)).collect()
}

/// Filiform algebra of class 4: `[X1, Xi] = X(i+1)` for `i = 2, 3, 4`.
pub fn filiform4() -> LieAlgebra {
    use nilorth::scalar::int;
    LieAlgebra::new(5, vec![(0, 1, 2, int(1)), (0, 2, 3, int(1)), (0, 3, 4, int(1))], 4).unwrap()
}

/// Every bundled algebra plus the class-4 filiform test algebra.
pub fn all_algebras() -> Vec<(String, LieAlgebra)> {
    let mut v: Vec<(String, LieAlgebra)> =
        library::NAMES.iter().map(|n| (n.to_string(), library::by_name(n).unwrap())).collect();
    v.push(("filiform4".into(), filiform4()));
    v
}

pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
