//! Bundled algebras. Indices below are 0-based; `X1` in the comments is
//! index 0.

use super::LieAlgebra;
use crate::scalar::int;

/// Abelian algebra R^d.
pub fn abelian(d: usize) -> LieAlgebra {
    LieAlgebra::new(d, Vec::new(), 1).expect("abelian algebra is valid")
}

/// Heisenberg algebra: `[X1, X2] = X3`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(3, vec![(0, 1, 2, int(1))], 2).expect("Heisenberg algebra is valid")
}

/// Free 3-step nilpotent algebra on two generators:
/// `X3 = [X1, X2]`, `X4 = [X1, X3]`, `X5 = [X2, X3]`.
pub fn free_class3() -> LieAlgebra {
    LieAlgebra::new(5, vec![(0, 1, 2, int(1)), (0, 2, 3, int(1)), (1, 2, 4, int(1))], 3)
        .expect("free class-3 algebra is valid")
}

/// The free class-3 algebra in the rescaled basis `X4 = [X1, X3] / 2`,
/// `X5 = [X2, X3] / 2`. With unit constants the integer Malcev products do
/// not close up (`exp(X1) exp(X2)` has a `1/6` coordinate); with these they
/// form a lattice.
pub fn free_class3_lattice() -> LieAlgebra {
    LieAlgebra::new(5, vec![(0, 1, 2, int(1)), (0, 2, 3, int(2)), (1, 2, 4, int(2))], 3)
        .expect("rescaled free class-3 algebra is valid")
}

/// Looks up a bundled algebra by name: `abelian1` .. `abelian6`,
/// `heisenberg`, `free3`, `free3z` (the lattice-compatible basis).
pub fn by_name(name: &str) -> Option<LieAlgebra> {
    match name {
        "heisenberg" => Some(heisenberg()),
        "free3" | "free_class3" => Some(free_class3()),
        "free3z" => Some(free_class3_lattice()),
        _ => {
            let d: usize = name.strip_prefix("abelian")?.parse().ok()?;
            (1..=6).contains(&d).then(|| abelian(d))
        }
    }
}

pub const NAMES: &[&str] = &["abelian1", "abelian2", "abelian3", "heisenberg", "free3", "free3z"];

/// Bundled algebras whose integer Malcev products form a lattice.
pub const LATTICE_NAMES: &[&str] = &["abelian1", "abelian2", "abelian3", "heisenberg", "free3z"];
