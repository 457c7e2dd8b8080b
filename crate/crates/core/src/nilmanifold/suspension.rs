//! The suspension group `G~ = G x| {A^t}` with Lie algebra `g~ = g x| R B^`,
//! `[B^, X] = B(X)`, and lattice `Gamma~ = Gamma x| Z`.

use super::{Automorphism, GroupPoint, Nilmanifold};
use crate::lie::{Derivation, LieAlgebra};
use crate::scalar::{Coords, Rational, Scalar};
use crate::{Error, Result};

/// `g x| R B^` in the raw basis order `(B^, X_0, ..., X_{n-1})`. No lattice
/// or Malcev requirement.
pub fn suspension_algebra(alg: &LieAlgebra, b: &Derivation) -> Result<LieAlgebra> {
    let identity: Vec<usize> = (0..alg.dim()).collect();
    extended(alg, b, &identity)
}

/// Extended algebra with basis `(B^, X_{order[0]}, ..., X_{order[n-1]})`.
fn extended(alg: &LieAlgebra, b: &Derivation, order: &[usize]) -> Result<LieAlgebra> {
    b.check(alg)?;
    let n = alg.dim();
    let mut slot = vec![0; n];
    for (pos, &j) in order.iter().enumerate() {
        slot[j] = pos + 1;
    }
    let mut entries = Vec::new();
    for sc in alg.structure_constants() {
        entries.push((slot[sc.i], slot[sc.j], slot[sc.k], sc.c.exact.clone()));
    }
    let m = b.matrix();
    for j in 0..n {
        for k in 0..n {
            let c = m.get(k, j);
            if *c != Rational::from_integer(0.into()) {
                entries.push((0, slot[j], slot[k], c.clone()));
            }
        }
    }
    LieAlgebra::new(n + 1, entries, n + 1)
}

/// Cheap necessary condition for a strong Malcev basis under `order`:
/// every bracket lands strictly after both of its inputs.
fn triangular(alg: &LieAlgebra, b: &Derivation, order: &[usize]) -> bool {
    let n = alg.dim();
    let mut pos = vec![0; n];
    for (p, &j) in order.iter().enumerate() {
        pos[j] = p + 1;
    }
    let zero = Rational::from_integer(0.into());
    alg.structure_constants().iter().all(|sc| pos[sc.k] > pos[sc.i].max(pos[sc.j]))
        && (0..n).all(|j| (0..n).all(|k| *b.matrix().get(k, j) == zero || pos[k] > pos[j]))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists past i");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// The suspension of an affine map's automorphism part, with its lattice.
#[derive(Debug, Clone)]
pub struct SuspensionContext {
    base: Nilmanifold,
    ext: Nilmanifold,
    auto: Automorphism,
    order: Vec<usize>,
    slot: Vec<usize>,
}

/// Builds `G~ / Gamma~`. The base basis is reordered behind `B^` when the
/// raw order is not a strong Malcev basis of `g~` (for `R^2` with
/// `B(X2) = X1` the adapted order is `(B^, X2, X1)`); the first
/// permutation in lexicographic order whose integer products close up is used.
pub fn build_suspension(base: &Nilmanifold, b: Derivation) -> Result<SuspensionContext> {
    let auto = Automorphism::new(base, b.clone())?;
    let alg = base.algebra();
    let n = alg.dim();
    let mut order: Vec<usize> = (0..n).collect();
    let mut last_err = None;
    loop {
        if triangular(alg, &b, &order) {
            match extended(alg, &b, &order).and_then(Nilmanifold::new) {
                Ok(ext) => {
                    let mut slot = vec![0; n];
                    for (pos, &j) in order.iter().enumerate() {
                        slot[j] = pos + 1;
                    }
                    return Ok(SuspensionContext { base: base.clone(), ext, auto, order, slot });
                }
                Err(e) => last_err = Some(e),
            }
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::NotMalcev("no basis order of the suspension algebra is triangular".into())
    }))
}

impl SuspensionContext {
    pub fn base(&self) -> &Nilmanifold {
        &self.base
    }

    pub fn extended(&self) -> &Nilmanifold {
        &self.ext
    }

    pub fn automorphism(&self) -> &Automorphism {
        &self.auto
    }

    /// Base basis indices in extended order (extended index `p + 1` holds `X_{order[p]}`).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `g -> g~`, zero `B^` component.
    pub fn embed<S: Scalar>(&self, v: &[S]) -> Coords<S> {
        let mut out: Coords<S> = (0..=v.len()).map(|_| S::zero()).collect();
        for (j, x) in v.iter().enumerate() {
            out[self.slot[j]] = x.clone();
        }
        out
    }

    /// Base coordinates of a vector of `g~`, dropping the `B^` component.
    pub fn restrict<S: Scalar>(&self, a: &[S]) -> Coords<S> {
        self.slot.iter().map(|&p| a[p].clone()).collect()
    }

    pub fn lift<S: Scalar>(&self, x: &GroupPoint<S>) -> GroupPoint<S> {
        GroupPoint::from_first(self.embed(x.first()))
    }

    /// `log(u~)` for `u~ = u A`, `u = exp(v)`: then `u~ x Gamma~ = u A(x) Gamma~`
    /// for `x` in `G`, so the time-one map on the fiber over `0` is `phi`.
    pub fn generator<S: Scalar>(&self, v: &[S]) -> Coords<S> {
        let mut b_hat = self.ext.algebra().zero_vector::<S>();
        b_hat[0] = S::one();
        self.ext.algebra().bch_unchecked(&self.embed(v), &b_hat)
    }

    /// `p(g Gamma~)`: the `B^` second-kind coordinate of the reduced point, in `[0, 1)`.
    pub fn fiber<S: Scalar>(&self, g: &GroupPoint<S>) -> S {
        self.ext.reduced_second(g.first())[0].clone()
    }

    /// `u~^t g Gamma~`, reduced.
    pub fn flow<S: Scalar>(&self, generator: &[S], g: &GroupPoint<S>, t: &S) -> GroupPoint<S> {
        let scaled: Coords<S> = generator.iter().map(|c| c.clone() * t.clone()).collect();
        self.ext.reduce(&GroupPoint::from_first(self.ext.algebra().bch_unchecked(&scaled, g.first())))
    }

    /// Identifies a reduced point on the fiber over `0` with a point of `M`.
    pub fn to_base<S: Scalar>(&self, g: &GroupPoint<S>) -> GroupPoint<S> {
        let reduced = self.ext.reduce(g);
        self.base.reduce(&GroupPoint::from_first(self.restrict(reduced.first())))
    }
}
