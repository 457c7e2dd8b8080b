//! Exact kernel for nilpotent Lie algebras given by rational structure
//! constants.
//!
//! First-kind (exponential) coordinates are the canonical representation of
//! group elements; second-kind (Malcev) coordinates are a conversion layer
//! available when the basis is a strong Malcev basis.

mod algebra;
pub mod bch;
mod derivation;
mod fast;
pub mod library;
mod subspace;

pub use algebra::{LieAlgebra, StructConst, MAX_CLASS};
pub use derivation::{Derivation, Matrix};
pub use fast::{FloatLaw, FloatPoint, FAST_DIM};
pub use subspace::{rank, unit, Subspace};

use num::Zero;

use crate::scalar::{Coords, Rational, Scalar};
use crate::{Error, Result};

/// Right-nested product `[S_{i1}, [S_{i2}, ..., [S_{i(k-1)}, S_{ik}]...]]`.
pub fn kfold_product<S: Scalar>(indices: &[usize], gens: &[Coords<S>], alg: &LieAlgebra) -> Result<Coords<S>> {
    if indices.len() < 2 {
        return Err(Error::InvalidArgument("k-fold product needs at least two indices".into()));
    }
    for &i in indices {
        if i >= gens.len() {
            return Err(Error::Index { index: i, dim: gens.len() });
        }
    }
    for g in gens {
        alg.check_len(g)?;
    }
    let (&last, rest) = indices.split_last().expect("at least two indices");
    let mut acc = gens[last].clone();
    for &i in rest.iter().rev() {
        acc = alg.bracket_unchecked(&gens[i], &acc);
    }
    Ok(acc)
}

/// `V_k(S)`: span of all `k`-fold products of elements of `gens` (for
/// `k = 1`, the span of `gens` itself), and whether it equals `g^(k)`.
pub fn vk_span(gens: &[Coords<Rational>], k: usize, alg: &LieAlgebra) -> Result<(Subspace, bool)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    for g in gens {
        alg.check_len(g)?;
    }
    let n = alg.dim();
    let mut span = Subspace::zero(n);
    if k == 1 {
        for g in gens {
            span.insert(g.to_vec());
        }
    } else {
        // Right-nested products of length k are brackets of a generator with
        // a (k-1)-fold product; iterate level by level over distinct values.
        let mut level: Vec<Coords<Rational>> = gens.to_vec();
        for _ in 1..k {
            let mut next: Vec<Coords<Rational>> = Vec::new();
            for g in gens {
                for inner in &level {
                    let v = alg.bracket_unchecked(g, inner);
                    if !v.iter().all(Zero::is_zero) && !next.contains(&v) {
                        next.push(v);
                    }
                }
            }
            level = next;
        }
        for v in level {
            span.insert(v.into_vec());
        }
    }
    let equal = span == alg.series_term(k);
    Ok((span, equal))
}

/// True iff the images of `gens` in `g / [g, g]` form a basis of that
/// quotient, i.e. `gens` is a minimal generating set.
pub fn minimal_generators_check(gens: &[Coords<Rational>], alg: &LieAlgebra) -> bool {
    if gens.iter().any(|g| g.len() != alg.dim()) {
        return false;
    }
    let derived = alg.series_term(2);
    let quotient_dim = alg.dim() - derived.dim();
    if gens.len() != quotient_dim {
        return false;
    }
    let mut span = derived;
    gens.iter().all(|g| span.insert(g.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn e(alg: &LieAlgebra, i: usize) -> Coords<Rational> {
        alg.basis_vector(i)
    }

    #[test]
    fn kfold_examples() {
        let h = library::heisenberg();
        let s = vec![e(&h, 0), e(&h, 1)];
        assert_eq!(kfold_product(&[0, 1], &s, &h).unwrap(), e(&h, 2));
        assert!(kfold_product(&[0, 0], &s, &h).unwrap().iter().all(Zero::is_zero));
        assert!(matches!(kfold_product(&[0, 2], &s, &h), Err(Error::Index { .. })));
        assert!(kfold_product(&[0], &s, &h).is_err());
        let f = library::free_class3();
        let s = vec![e(&f, 0), e(&f, 1)];
        assert_eq!(kfold_product(&[0, 0, 1], &s, &f).unwrap(), e(&f, 3));
    }

    #[test]
    fn vk_span_examples() {
        let h = library::heisenberg();
        let (span, eq) = vk_span(&[e(&h, 0), e(&h, 1)], 2, &h).unwrap();
        assert!(eq);
        assert_eq!(span, Subspace::span(3, vec![unit(3, 2)]));
        let f = library::free_class3();
        let (span, eq) = vk_span(&[e(&f, 0), e(&f, 1)], 3, &f).unwrap();
        assert!(eq);
        assert_eq!(span.dim(), 2);
        let a = library::abelian(2);
        assert!(vk_span(&[e(&a, 0), e(&a, 1)], 1, &a).unwrap().1);
        assert!(!vk_span(&[e(&a, 0)], 1, &a).unwrap().1);
    }

    #[test]
    fn minimal_generators() {
        let h = library::heisenberg();
        assert!(minimal_generators_check(&[e(&h, 0), e(&h, 1)], &h));
        assert!(!minimal_generators_check(&[e(&h, 0), e(&h, 1), e(&h, 2)], &h));
        assert!(!minimal_generators_check(&[e(&h, 0)], &h));
        // X1 + X3, X2 - 2 X3 still generate
        let mut a = e(&h, 0);
        a[2] = int(1);
        let mut b = e(&h, 1);
        b[2] = int(-2);
        assert!(minimal_generators_check(&[a, b], &h));
        // X1, X1 + X3 do not
        let mut c = e(&h, 0);
        c[2] = int(1);
        assert!(!minimal_generators_check(&[e(&h, 0), c], &h));
    }
}
