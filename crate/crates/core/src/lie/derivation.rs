//! Derivations and the automorphisms `exp(tB)` they generate.

use num::{One, Zero};

use super::LieAlgebra;
use crate::scalar::{int, Coeff, Coords, Rational, Scalar};
use crate::{Error, Result};

/// Square rational matrix acting on basis coordinates. Column `j` holds the
/// image of `X_j`: `(M x)_k = sum_j M[k][j] x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Coeff>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension { expected: n, got: row.len() });
            }
            entries.extend(row.into_iter().map(Coeff::new));
        }
        Ok(Matrix { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        Matrix { n, entries: vec![Coeff::new(Rational::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Matrix with the given `(row, col, value)` entries.
    pub fn sparse(n: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut m = Self::zero(n);
        for (r, c, v) in entries {
            if *r >= n || *c >= n {
                return Err(Error::Index { index: (*r).max(*c), dim: n });
            }
            m.set(*r, *c, v.clone());
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.n + c].exact
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.n + c] = Coeff::new(v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.exact.is_zero())
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|r| (0..self.n).map(|c| self.get(r, c).clone()).collect()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Matrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (i, e) in out.entries.iter_mut().enumerate() {
            *e = Coeff::new(&e.exact + &other.entries[i].exact);
        }
        out
    }

    pub fn scale(&self, t: &Rational) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(|e| Coeff::new(&e.exact * t)).collect() }
    }

    pub fn apply<S: Scalar>(&self, x: &[S]) -> Coords<S> {
        let n = self.n;
        (0..n)
            .map(|r| {
                let mut acc = S::zero();
                for (c, xc) in x.iter().enumerate() {
                    let e = &self.entries[r * n + c];
                    let nonzero = if S::EXACT { !e.exact.is_zero() } else { e.approx != 0.0 };
                    if nonzero && !xc.is_zero() {
                        acc = acc + S::from_coeff(e) * xc.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    /// Nilpotent iff `M^n = 0`.
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 1..self.n {
            p = p.mul(self);
        }
        p.is_zero()
    }

    /// All entries integers.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.exact.is_integer())
    }
}

/// A candidate derivation `B` of an algebra, as a coordinate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    matrix: Matrix,
}

impl Derivation {
    pub fn new(matrix: Matrix) -> Self {
        Derivation { matrix }
    }

    pub fn zero(n: usize) -> Self {
        Derivation { matrix: Matrix::zero(n) }
    }

    /// Derivation from `(row, col, value)` entries: `B(X_col)` has `X_row` coefficient `value`.
    pub fn sparse(n: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        Ok(Derivation { matrix: Matrix::sparse(n, entries)? })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply<S: Scalar>(&self, x: &[S]) -> Coords<S> {
        self.matrix.apply(x)
    }

    /// Checks the Leibniz rule `B[X_i, X_j] = [B X_i, X_j] + [X_i, B X_j]`
    /// on every basis pair and nilpotency of `B`, exactly.
    pub fn check(&self, alg: &LieAlgebra) -> Result<()> {
        let n = alg.dim();
        if self.matrix.size() != n {
            return Err(Error::Dimension { expected: n, got: self.matrix.size() });
        }
        for i in 0..n {
            for j in i + 1..n {
                let (xi, xj) = (alg.basis_vector::<Rational>(i), alg.basis_vector::<Rational>(j));
                let lhs = self.apply(&alg.bracket_unchecked(&xi, &xj));
                let r1 = alg.bracket_unchecked(&self.apply(&xi), &xj);
                let r2 = alg.bracket_unchecked(&xi, &self.apply(&xj));
                if (0..n).any(|k| lhs[k] != &r1[k] + &r2[k]) {
                    return Err(Error::NotDerivation(i, j));
                }
            }
        }
        if !self.matrix.is_nilpotent() {
            return Err(Error::Algebra("derivation is not nilpotent".into()));
        }
        Ok(())
    }

    pub fn is_derivation(&self, alg: &LieAlgebra) -> bool {
        self.check(alg).is_ok()
    }

    /// `exp(tB) = sum_{j<n} (tB)^j / j!`, exact because `B` is nilpotent.
    pub fn exp(&self, t: &Rational) -> Matrix {
        let n = self.matrix.size();
        let tb = self.matrix.scale(t);
        let mut out = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for j in 1..=n {
            term = term.mul(&tb).scale(&Rational::new(1.into(), (j as i64).into()));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        out
    }

    /// `log(A)` for a unipotent matrix `A`: `sum_{j>=1} (-1)^{j+1} (A - I)^j / j`.
    pub fn log_of_unipotent(a: &Matrix) -> Result<Derivation> {
        let n = a.size();
        let nil = a.add(&Matrix::identity(n).scale(&int(-1)));
        if !nil.is_nilpotent() {
            return Err(Error::InvalidArgument("matrix is not unipotent".into()));
        }
        let mut out = Matrix::zero(n);
        let mut power = Matrix::identity(n);
        for j in 1..=n {
            power = power.mul(&nil);
            if power.is_zero() {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rational::new(sign.into(), (j as i64).into())));
        }
        Ok(Derivation { matrix: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::library;
    use crate::scalar::rational;

    #[test]
    fn heisenberg_shear_is_a_derivation() {
        let h = library::heisenberg();
        // B(X2) = X1
        let b = Derivation::sparse(3, &[(0, 1, int(1))]).unwrap();
        assert!(b.is_derivation(&h));
        // B(X3) = X1 breaks Leibniz on (X1, X2)
        let bad = Derivation::sparse(3, &[(0, 2, int(1))]).unwrap();
        assert!(matches!(bad.check(&h), Err(Error::NotDerivation(0, 1))));
    }

    #[test]
    fn exp_group_law() {
        let b = Derivation::sparse(3, &[(0, 1, int(1)), (2, 0, rational(1, 2))]).unwrap();
        assert!(Derivation::zero(3).exp(&int(1)).is_identity());
        assert!(b.exp(&int(1)).mul(&b.exp(&int(-1))).is_identity());
        let s = rational(2, 3);
        let t = rational(-5, 4);
        assert_eq!(b.exp(&s).mul(&b.exp(&t)), b.exp(&(&s + &t)));
        let back = Derivation::log_of_unipotent(&b.exp(&int(1))).unwrap();
        assert_eq!(back, b);
    }
}
