//! Compact nilmanifolds `M = G / Gamma` where `Gamma` is the lattice
//! `{exp(n_1 X_1) ... exp(n_n X_n) : n_i in Z}` of a strong Malcev basis.
//!
//! Points are stored in first-kind coordinates; the fundamental domain is
//! second-kind coordinates in `[0, 1)^n`.

mod automorphism;
mod certificate;
mod description;
mod suspension;

use std::sync::Arc;

use num::Zero;

pub use automorphism::Automorphism;
pub use certificate::{ergodicity_certificate, Certificate, DEFAULT_SEARCH_CAP};
pub use description::SystemDescription;
pub use suspension::{build_suspension, suspension_algebra, SuspensionContext};

use crate::lie::{FloatLaw, LieAlgebra};
use crate::scalar::{Coords, Rational, Scalar};
use crate::{Error, Result};

/// A group element in first-kind (exponential) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPoint<S> {
    first: Coords<S>,
}

impl<S: Scalar> GroupPoint<S> {
    pub fn from_first(first: impl IntoIterator<Item = S>) -> Self {
        GroupPoint { first: first.into_iter().collect() }
    }

    pub fn first(&self) -> &[S] {
        &self.first
    }

    pub fn into_first(self) -> Coords<S> {
        self.first
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    pub fn is_finite(&self) -> bool {
        self.first.iter().all(|c| c.as_f64().is_finite())
    }

    pub fn to_f64(&self) -> GroupPoint<f64> {
        GroupPoint { first: self.first.iter().map(Scalar::as_f64).collect() }
    }
}

impl GroupPoint<f64> {
    /// The exact dyadic rational point with the same coordinates.
    pub fn to_exact(&self) -> Result<GroupPoint<Rational>> {
        Ok(GroupPoint { first: self.first.iter().map(|&x| crate::scalar::dyadic(x)).collect::<Result<_>>()? })
    }
}

/// `G / Gamma` for a strong Malcev basis whose integer products close up
/// into a lattice. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Nilmanifold {
    alg: Arc<LieAlgebra>,
    law: Option<Arc<FloatLaw>>,
}

impl Nilmanifold {
    /// Validates the strong Malcev conditions and lattice closure: for all
    /// generator pairs, `exp(+-X_i) exp(+-X_j)` has integer second-kind
    /// coordinates.
    pub fn new(alg: LieAlgebra) -> Result<Self> {
        alg.malcev_check()?;
        let n = alg.dim();
        let one = Rational::from_integer(1.into());
        for i in 0..n {
            for j in 0..n {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut a = alg.zero_vector::<Rational>();
                    let mut b = alg.zero_vector::<Rational>();
                    a[i] = if si > 0 { one.clone() } else { -one.clone() };
                    b[j] = if sj > 0 { one.clone() } else { -one.clone() };
                    let t = alg.first_to_second_unchecked(&alg.bch_unchecked(&a, &b));
                    if !t.iter().all(Scalar::is_integer) {
                        return Err(Error::Lattice(format!(
                            "exp({}X{i}) exp({}X{j}) leaves the integer lattice",
                            si, sj
                        )));
                    }
                }
            }
        }
        let law = FloatLaw::new(&alg).map(Arc::new);
        Ok(Nilmanifold { alg: Arc::new(alg), law })
    }

    /// Fixed-array float group law, present for dimension at most `FAST_DIM`.
    pub fn float_law(&self) -> Option<&FloatLaw> {
        self.law.as_deref()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Dimension `d1` of the torus factor `M^(1)`.
    pub fn torus_dim(&self) -> usize {
        self.alg.abelian_rank()
    }

    pub fn identity<S: Scalar>(&self) -> GroupPoint<S> {
        GroupPoint { first: self.alg.zero_vector() }
    }

    pub fn check<S: Scalar>(&self, g: &GroupPoint<S>) -> Result<()> {
        self.alg.check_len(&g.first)
    }

    pub fn from_second<S: Scalar>(&self, t: &[S]) -> Result<GroupPoint<S>> {
        self.alg.check_len(t)?;
        Ok(GroupPoint { first: self.alg.second_to_first_unchecked(t) })
    }

    pub fn second<S: Scalar>(&self, g: &GroupPoint<S>) -> Coords<S> {
        self.alg.first_to_second_unchecked(&g.first)
    }

    pub fn mul<S: Scalar>(&self, g: &GroupPoint<S>, h: &GroupPoint<S>) -> GroupPoint<S> {
        GroupPoint { first: self.alg.bch_unchecked(&g.first, &h.first) }
    }

    pub fn inverse<S: Scalar>(&self, g: &GroupPoint<S>) -> GroupPoint<S> {
        GroupPoint { first: g.first.iter().map(|c| -c.clone()).collect() }
    }

    /// `g^k = exp(k log g)`.
    pub fn pow<S: Scalar>(&self, g: &GroupPoint<S>, k: i64) -> GroupPoint<S> {
        let k = S::from_i64(k);
        GroupPoint { first: g.first.iter().map(|c| c.clone() * k.clone()).collect() }
    }

    /// Canonical representative of `g Gamma`: second-kind coordinates in `[0, 1)^n`.
    pub fn reduce<S: Scalar>(&self, g: &GroupPoint<S>) -> GroupPoint<S> {
        let t = self.reduced_second(&g.first);
        GroupPoint { first: self.alg.second_to_first_unchecked(&t) }
    }

    /// Second-kind coordinates of the canonical representative of `exp(a) Gamma`.
    ///
    /// Peels `X_0, X_1, ...` in order. Writing `g = exp(t_i X_i) h` with `h`
    /// in the ideal spanned by the later basis vectors, right multiplication
    /// by `exp(-m X_i)` turns `h` into `exp(m X_i) h exp(-m X_i)`, which stays
    /// in the ideal and leaves the earlier coordinates alone; one pass suffices.
    pub fn reduced_second<S: Scalar>(&self, a: &[S]) -> Coords<S> {
        let alg = &*self.alg;
        let n = alg.dim();
        let mut t = alg.zero_vector::<S>();
        if alg.is_abelian() {
            for i in 0..n {
                t[i] = frac_in_unit(&a[i]).0;
            }
            return t;
        }
        let mut h: Coords<S> = a.iter().cloned().collect();
        for i in 0..n {
            let ti = h[i].clone();
            let (r, m) = frac_in_unit(&ti);
            t[i] = r;
            if i + 1 == n {
                break;
            }
            if !ti.is_zero() {
                let mut peel = alg.zero_vector::<S>();
                peel[i] = -ti;
                h = alg.bch_unchecked(&peel, &h);
                h[i] = S::zero();
            }
            if !m.is_zero() {
                h = self.conjugate_by_generator(i, &m, &h);
            }
        }
        t
    }

    /// `Ad(exp(m X_i)) h = sum_j (m ad X_i)^j h / j!`.
    fn conjugate_by_generator<S: Scalar>(&self, i: usize, m: &S, h: &[S]) -> Coords<S> {
        let alg = &*self.alg;
        let mut x = alg.zero_vector::<S>();
        x[i] = m.clone();
        let mut out: Coords<S> = h.iter().cloned().collect();
        let mut term: Coords<S> = out.clone();
        for j in 1..alg.class() {
            term = alg.bracket_unchecked(&x, &term);
            if term.iter().all(Zero::is_zero) {
                break;
            }
            let inv = S::from_coeff(alg.recip(j));
            for v in term.iter_mut() {
                *v = v.clone() * inv.clone();
            }
            for (o, v) in out.iter_mut().zip(&term) {
                *o = o.clone() + v.clone();
            }
        }
        out
    }

    /// True iff `g` lies in `Gamma`. Exact flavor only.
    pub fn lattice_member<S: Scalar>(&self, g: &GroupPoint<S>) -> Result<bool> {
        if !S::EXACT {
            return Err(Error::Flavor("lattice membership needs exact coordinates".into()));
        }
        self.check(g)?;
        Ok(self.second(g).iter().all(Scalar::is_integer))
    }

    /// The quotient nilmanifold `M^(i) = G / G^(i+1) Gamma` for `1 <= i < class`.
    pub fn quotient(&self, level: usize) -> Result<Nilmanifold> {
        let keep = self.quotient_dim(level)?;
        let alg = &*self.alg;
        let entries = alg
            .structure_constants()
            .iter()
            .filter(|sc| sc.k < keep)
            .map(|sc| (sc.i, sc.j, sc.k, sc.c.exact.clone()))
            .collect::<Vec<_>>();
        Nilmanifold::new(LieAlgebra::new(keep, entries, level)?)
    }

    fn quotient_dim(&self, level: usize) -> Result<usize> {
        if level == 0 || level >= self.alg.class().max(2) {
            return Err(Error::InvalidArgument(format!(
                "fibration level {level} outside 1..{}",
                self.alg.class().max(2)
            )));
        }
        self.alg.series_offset(level + 1)
    }

    /// Image of `g` in `M^(i)`, reduced. Since `g^(i+1)` is a coordinate
    /// tail, the projection truncates first-kind coordinates.
    pub fn project_fibration<S: Scalar>(&self, g: &GroupPoint<S>, level: usize) -> Result<GroupPoint<S>> {
        self.check(g)?;
        let q = self.quotient(level)?;
        let keep = q.dim();
        Ok(q.reduce(&GroupPoint { first: g.first[..keep].iter().cloned().collect() }))
    }

    /// Point of the torus factor `R^{d1} / Z^{d1}`.
    pub fn abelianization<S: Scalar>(&self, g: &GroupPoint<S>) -> Coords<S> {
        g.first[..self.torus_dim()].iter().map(|c| frac_in_unit(c).0).collect()
    }

    /// Rotation vector of the translation by `u` on the torus factor.
    pub fn rotation_vector<S: Scalar>(&self, u: &GroupPoint<S>) -> Coords<S> {
        self.abelianization(u)
    }
}

/// `(x - m, m)` with `m = floor(x)` and `x - m` in `[0, 1)`, guarding the
/// float case where `x - floor(x)` rounds up to `1`.
pub(crate) fn frac_in_unit<S: Scalar>(x: &S) -> (S, S) {
    let mut m = x.floor();
    let mut r = x.clone() - m.clone();
    if r >= S::one() {
        r = r - S::one();
        m = m + S::one();
    }
    if r < S::zero() {
        r = S::zero();
    }
    (r, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::library;
    use crate::scalar::{int, rational};

    #[test]
    fn heisenberg_reduce_example() {
        let nm = Nilmanifold::new(library::heisenberg()).unwrap();
        let g = nm.from_second(&[1.5, 0.0, 0.25]).unwrap();
        let t = nm.second(&nm.reduce(&g));
        assert!((t[0] - 0.5).abs() < 1e-15 && t[1].abs() < 1e-15 && (t[2] - 0.25).abs() < 1e-15);
        let g = nm.from_second(&[int(2), int(-1), int(3)]).unwrap();
        assert!(nm.lattice_member(&g).unwrap());
        assert!(nm.second(&nm.reduce(&g)).iter().all(Zero::is_zero));
        let h = nm.from_second(&[rational(1, 2), int(0), int(0)]).unwrap();
        assert!(!nm.lattice_member(&h).unwrap());
        assert!(matches!(nm.lattice_member(&h.to_f64()), Err(Error::Flavor(_))));
    }

    #[test]
    fn bundled_lattices_close() {
        for name in library::LATTICE_NAMES {
            assert!(Nilmanifold::new(library::by_name(name).unwrap()).is_ok(), "{name}");
        }
        assert!(matches!(Nilmanifold::new(library::free_class3()), Err(Error::Lattice(_))));
    }

    #[test]
    fn fibration_of_heisenberg() {
        let nm = Nilmanifold::new(library::heisenberg()).unwrap();
        let g = nm.from_second(&[rational(7, 3), rational(-1, 4), rational(5, 2)]).unwrap();
        let p = nm.project_fibration(&g, 1).unwrap();
        assert_eq!(p.first().to_vec(), vec![rational(1, 3), rational(3, 4)]);
        assert!(nm.project_fibration(&g, 2).is_err());
        assert_eq!(nm.torus_dim(), 2);
    }

    #[test]
    fn rotation_vector_example() {
        let nm = Nilmanifold::new(library::heisenberg()).unwrap();
        let u = GroupPoint::from_first([2f64.sqrt(), 3f64.sqrt(), 0.0]);
        let a = nm.rotation_vector(&u);
        assert!((a[0] - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((a[1] - (3f64.sqrt() - 1.0)).abs() < 1e-15);
    }
}
