use num::Zero;

use crate::lie::{Derivation, FloatLaw, FloatPoint, Matrix, FAST_DIM};
use crate::nilmanifold::{Automorphism, GroupPoint, Nilmanifold, SystemDescription};
use crate::scalar::{Coords, Number, Rational, Scalar};
use crate::{Error, Result};

/// `phi(x Gamma) = u A(x) Gamma` with `A = exp(B)`, `A(Gamma) = Gamma`.
///
/// `u` is held exactly. Float inputs are converted to the dyadic rational
/// they denote, so exact anchoring of float orbits is well defined.
#[derive(Debug, Clone)]
pub struct AffineSystem {
    nm: Nilmanifold,
    u: GroupPoint<Rational>,
    auto: Automorphism,
    u_f: Coords<f64>,
    u_p: FloatPoint,
    a_f: Option<Vec<f64>>,
}

/// `sum_c row[c] x[c]` over the nonzero products, in column order.
#[inline]
fn dense_row(row: &[f64], x: &[f64]) -> f64 {
    let mut s = 0.0;
    for (a, v) in row.iter().zip(x) {
        let p = a * v;
        if p != 0.0 {
            s += p;
        }
    }
    s
}

/// `phi^n = x -> w A^n(x)`, exactly.
#[derive(Debug, Clone)]
pub struct AffinePower {
    pub w: GroupPoint<Rational>,
    pub a: Matrix,
}

impl AffineSystem {
    pub fn new(nm: Nilmanifold, u: GroupPoint<Rational>, b: Derivation) -> Result<Self> {
        nm.check(&u)?;
        let auto = Automorphism::new(&nm, b)?;
        let u_f: Coords<f64> = u.first().iter().map(Scalar::as_f64).collect();
        let mut u_p = [0.0; FAST_DIM];
        if u_f.len() <= FAST_DIM {
            u_p[..u_f.len()].copy_from_slice(&u_f);
        }
        let a_f = (!auto.is_identity()).then(|| {
            let m = auto.matrix();
            let n = m.size();
            (0..n * n).map(|i| m.get(i / n, i % n).as_f64()).collect()
        });
        Ok(AffineSystem { nm, u, auto, u_f, u_p, a_f })
    }

    /// Pure nil-translation `l_u`.
    pub fn translation(nm: Nilmanifold, u: GroupPoint<Rational>) -> Result<Self> {
        let n = nm.dim();
        AffineSystem::new(nm, u, Derivation::zero(n))
    }

    pub fn from_float(nm: Nilmanifold, u: &GroupPoint<f64>, b: Derivation) -> Result<Self> {
        AffineSystem::new(nm, u.to_exact()?, b)
    }

    /// System and start point from a description; `u` and `start` are
    /// second-kind coordinates.
    pub fn from_description(desc: &SystemDescription) -> Result<(Self, GroupPoint<Rational>)> {
        let nm = Nilmanifold::new(desc.algebra()?)?;
        let n = nm.dim();
        let u = point_from_numbers(&nm, &desc.translation(n)?)?;
        let x = point_from_numbers(&nm, &desc.start_point(n)?)?;
        let b = desc.derivation_matrix(n)?;
        Ok((AffineSystem::new(nm, u, b)?, x))
    }

    pub fn nilmanifold(&self) -> &Nilmanifold {
        &self.nm
    }

    pub fn u(&self) -> &GroupPoint<Rational> {
        &self.u
    }

    pub fn automorphism(&self) -> &Automorphism {
        &self.auto
    }

    pub fn is_translation(&self) -> bool {
        self.auto.is_identity()
    }

    /// `reduce(u * A(x))`.
    pub fn step<S: Scalar>(&self, x: &GroupPoint<S>) -> GroupPoint<S> {
        let u = GroupPoint::from_first(self.u.first().iter().map(S::from_rational));
        self.nm.reduce(&self.nm.mul(&u, &self.auto.apply(x)))
    }

    /// Float step on reduced second-kind coordinates.
    pub fn step_reduced(&self, t: &[f64]) -> Coords<f64> {
        let n = self.nm.dim();
        match self.nm.float_law() {
            Some(law) => self.step_point(law, &law.point(t))[..n].iter().copied().collect(),
            None => self.step_reduced_generic(t),
        }
    }

    /// [`AffineSystem::step_reduced`] on padded arrays; the orbit hot path.
    #[inline]
    pub fn step_point(&self, law: &FloatLaw, t: &FloatPoint) -> FloatPoint {
        let mut x = law.second_to_first(t);
        if let Some(a) = &self.a_f {
            let n = law.dim();
            let mut y = [0.0; FAST_DIM];
            for (r, yr) in y.iter_mut().enumerate().take(n) {
                *yr = dense_row(&a[r * n..(r + 1) * n], &x[..n]);
            }
            x = y;
        }
        law.reduced_second(&law.bch(&self.u_p, &x))
    }

    pub(crate) fn step_reduced_generic(&self, t: &[f64]) -> Coords<f64> {
        let alg = self.nm.algebra();
        let mut x = alg.second_to_first_unchecked(t);
        if let Some(a) = &self.a_f {
            let n = x.len();
            x = (0..n).map(|r| dense_row(&a[r * n..(r + 1) * n], &x)).collect();
        }
        self.nm.reduced_second(&alg.bch_unchecked(&self.u_f, &x))
    }

    /// Exact `phi^n` for any integer `n`, by repeated squaring in the
    /// affine group (or `exp(n log u)` for translations).
    pub fn power(&self, n: i64) -> AffinePower {
        let alg = self.nm.algebra();
        if self.is_translation() {
            return AffinePower { w: self.nm.pow(&self.u, n), a: Matrix::identity(alg.dim()) };
        }
        let base = if n >= 0 {
            AffinePower { w: self.u.clone(), a: self.auto.matrix().clone() }
        } else {
            let w = self.auto.apply_inverse(&self.nm.inverse(&self.u));
            AffinePower { w, a: self.auto.inverse_matrix().clone() }
        };
        let mut k = n.unsigned_abs();
        let mut acc = AffinePower { w: self.nm.identity(), a: Matrix::identity(alg.dim()) };
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.compose(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.compose(&sq, &sq);
            }
        }
        acc
    }

    /// `(w1, C1) o (w2, C2) = (w1 C1(w2), C1 C2)`.
    fn compose(&self, f: &AffinePower, g: &AffinePower) -> AffinePower {
        let moved = GroupPoint::from_first(f.a.apply(g.w.first()));
        AffinePower { w: self.nm.mul(&f.w, &moved), a: f.a.mul(&g.a) }
    }

    /// `reduce(phi^n(x))`, exactly.
    pub fn apply_power(&self, p: &AffinePower, x: &GroupPoint<Rational>) -> GroupPoint<Rational> {
        let moved = GroupPoint::from_first(p.a.apply(x.first()));
        self.nm.reduce(&self.nm.mul(&p.w, &moved))
    }

    /// `phi^-1 = (A^-1(u^-1), A^-1)`.
    pub fn inverse(&self) -> Result<AffineSystem> {
        let w = self.auto.apply_inverse(&self.nm.inverse(&self.u));
        let b = Derivation::new(self.auto.log().matrix().scale(&Rational::from_integer((-1).into())));
        AffineSystem::new(self.nm.clone(), w, b)
    }

    /// `phi^k` as a system in its own right, for any integer `k`.
    pub fn iterate_system(&self, k: i64) -> Result<AffineSystem> {
        let p = self.power(k);
        let b = Derivation::new(self.auto.log().matrix().scale(&Rational::from_integer(k.into())));
        AffineSystem::new(self.nm.clone(), p.w, b)
    }

    /// `phi^2 = (u A(u), A^2)`.
    pub fn square(&self) -> Result<AffineSystem> {
        let w = self.nm.mul(&self.u, &self.auto.apply(&self.u));
        let b = Derivation::new(self.auto.log().matrix().scale(&Rational::from_integer(2.into())));
        AffineSystem::new(self.nm.clone(), w, b)
    }
}

/// A group point from second-kind numbers: exact when every entry is exact,
/// otherwise through the float path and its dyadic value.
pub fn point_from_numbers(nm: &Nilmanifold, t: &[Number]) -> Result<GroupPoint<Rational>> {
    if t.len() != nm.dim() {
        return Err(Error::Dimension { expected: nm.dim(), got: t.len() });
    }
    if let Some(exact) = t.iter().map(|x| x.exact().cloned()).collect::<Option<Vec<Rational>>>() {
        return nm.from_second(&exact);
    }
    let f: Vec<f64> = t.iter().map(Number::to_f64).collect();
    nm.from_second(&f)?.to_exact()
}

/// Reduced second-kind coordinates of an exact point, as floats in `[0, 1)`.
pub fn reduced_floats(nm: &Nilmanifold, x: &GroupPoint<Rational>) -> Coords<f64> {
    nm.reduced_second(x.first())
        .iter()
        .map(|q| {
            let v = q.as_f64();
            if v >= 1.0 {
                1.0 - f64::EPSILON / 2.0
            } else if q.is_zero() {
                0.0
            } else {
                v
            }
        })
        .collect()
}
