use std::fmt;

use num::Zero;

use super::bch::{BchPlan, MAX_DEPTH};
use super::subspace::{unit, Subspace};
use crate::scalar::{format_rational, parse_rational, Coeff, Coords, Rational, Scalar};
use crate::{Error, Result};

/// Largest nilpotency class accepted for an algebra.
pub const MAX_CLASS: usize = 6;

/// One nonzero structure constant `[X_i, X_j] = c X_k + ...` with `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructConst {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Coeff,
}

/// Finite-dimensional nilpotent Lie algebra over Q given by structure
/// constants in a fixed basis `X_0, ..., X_{n-1}`.
///
/// Construction validates antisymmetry, the Jacobi identity (exactly), and
/// nilpotency within the declared class. The basis is additionally checked
/// against the strong Malcev conditions; algebras that fail those can still
/// be used for brackets and BCH but not for second-kind coordinates.
#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    declared_class: usize,
    consts: Vec<StructConst>,
    series: Vec<Subspace>,
    malcev: std::result::Result<Vec<usize>, String>,
    plan: BchPlan,
    recips: Vec<Coeff>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("dim", &self.dim)
            .field("class", &self.class())
            .field("consts", &self.consts.len())
            .finish()
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.declared_class == other.declared_class && self.consts == other.consts
    }
}

impl LieAlgebra {
    /// Builds an algebra from `(i, j, k, c)` quadruples meaning `[X_i, X_j]`
    /// has `X_k` coefficient `c` (0-based). Entries with `i > j` are folded by
    /// antisymmetry; contradictory duplicates are rejected.
    pub fn new<I>(dim: usize, entries: I, declared_class: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        if dim == 0 {
            return Err(Error::Algebra("dimension must be positive".into()));
        }
        if declared_class == 0 {
            return Err(Error::Algebra("declared class must be positive".into()));
        }
        let mut table = vec![Rational::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim * dim];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::Index { index: idx, dim });
                }
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::Algebra(format!("[X{i}, X{i}] must vanish")));
                }
                continue;
            }
            let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
            let slot = (a * dim + b) * dim + k;
            if seen[slot] && table[slot] != c {
                return Err(Error::Algebra(format!("antisymmetry violated at ({i}, {j}, {k})")));
            }
            seen[slot] = true;
            table[slot] = c;
        }
        let mut consts = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                for k in 0..dim {
                    let c = &table[(a * dim + b) * dim + k];
                    if !c.is_zero() {
                        consts.push(StructConst { i: a, j: b, k, c: Coeff::new(c.clone()) });
                    }
                }
            }
        }
        let mut alg = LieAlgebra {
            dim,
            declared_class,
            consts,
            series: Vec::new(),
            malcev: Err(String::new()),
            plan: BchPlan::new(1),
            recips: (1..=MAX_DEPTH as i64).map(|j| Coeff::new(Rational::new(1.into(), j.into()))).collect(),
        };
        alg.check_jacobi()?;
        alg.series = alg.compute_series()?;
        let class = alg.class();
        if class > declared_class {
            return Err(Error::ClassExceeded { declared: declared_class, actual: class });
        }
        if class > MAX_CLASS {
            return Err(Error::Algebra(format!("class {class} above supported maximum {MAX_CLASS}")));
        }
        alg.plan = BchPlan::new(class.clamp(1, MAX_DEPTH));
        alg.malcev = alg.check_malcev();
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn declared_class(&self) -> usize {
        self.declared_class
    }

    /// Nilpotency class: number of nonzero terms of the descending central series.
    pub fn class(&self) -> usize {
        self.series.len()
    }

    pub fn structure_constants(&self) -> &[StructConst] {
        &self.consts
    }

    /// Dense structure constant `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        if i == j {
            return Rational::zero();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.consts
            .iter()
            .find(|s| s.i == a && s.j == b && s.k == k)
            .map(|s| if sign > 0 { s.c.exact.clone() } else { -s.c.exact.clone() })
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn plan(&self) -> &BchPlan {
        &self.plan
    }

    /// `1/j` for `1 <= j <= MAX_DEPTH`, in both flavors.
    pub(crate) fn recip(&self, j: usize) -> &Coeff {
        &self.recips[j - 1]
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.is_empty()
    }

    pub fn basis_vector<S: Scalar>(&self, i: usize) -> Coords<S> {
        let mut v: Coords<S> = (0..self.dim).map(|_| S::zero()).collect();
        v[i] = S::one();
        v
    }

    pub fn zero_vector<S: Scalar>(&self) -> Coords<S> {
        (0..self.dim).map(|_| S::zero()).collect()
    }

    pub fn check_len<S>(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    /// `[x, y]` by bilinear extension of the structure constants.
    pub fn bracket<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<Coords<S>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked<S: Scalar>(&self, x: &[S], y: &[S]) -> Coords<S> {
        let mut out = self.zero_vector::<S>();
        for sc in &self.consts {
            let (xi, xj, yi, yj) = (&x[sc.i], &x[sc.j], &y[sc.i], &y[sc.j]);
            let a = if xi.is_zero() || yj.is_zero() { None } else { Some(xi.clone() * yj.clone()) };
            let b = if xj.is_zero() || yi.is_zero() { None } else { Some(xj.clone() * yi.clone()) };
            let w = match (a, b) {
                (None, None) => continue,
                (Some(a), None) => a,
                (None, Some(b)) => -b,
                (Some(a), Some(b)) => a - b,
            };
            out[sc.k] = out[sc.k].clone() + S::from_coeff(&sc.c) * w;
        }
        out
    }

    /// `log(exp a * exp b)` via the Dynkin series truncated at the class.
    pub fn bch<S: Scalar>(&self, a: &[S], b: &[S]) -> Result<Coords<S>> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.bch_unchecked(a, b))
    }

    pub(crate) fn bch_unchecked<S: Scalar>(&self, a: &[S], b: &[S]) -> Coords<S> {
        if self.consts.is_empty() {
            return a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect();
        }
        self.plan.eval(a, b, |x, y| self.bracket_unchecked(x, y))
    }

    /// Descending central series `g = g^(1) > g^(2) > ... > g^(k)`, zero term omitted.
    pub fn central_series(&self) -> &[Subspace] {
        &self.series
    }

    /// Dimensions of the central series including the final zero term.
    pub fn central_series_dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.series.iter().map(Subspace::dim).collect();
        d.push(0);
        d
    }

    /// `g^(i)` for `i >= 1`; zero subspace past the class.
    pub fn series_term(&self, i: usize) -> Subspace {
        assert!(i >= 1, "central series is indexed from 1");
        self.series.get(i - 1).cloned().unwrap_or_else(|| Subspace::zero(self.dim))
    }

    /// `[U, V]` for subspaces.
    pub fn bracket_subspaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.dim);
        for x in u.basis() {
            for y in v.basis() {
                out.insert(self.bracket_unchecked::<Rational>(x, y).into_vec());
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (xa, xb, xc) = (unit(n, a), unit(n, b), unit(n, c));
                    let t1 = self.bracket_unchecked(&xa, &self.bracket_unchecked(&xb, &xc));
                    let t2 = self.bracket_unchecked(&xb, &self.bracket_unchecked(&xc, &xa));
                    let t3 = self.bracket_unchecked(&xc, &self.bracket_unchecked(&xa, &xb));
                    if (0..n).any(|k| !(t1[k].clone() + t2[k].clone() + t3[k].clone()).is_zero()) {
                        return Err(Error::Algebra(format!("Jacobi identity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_series(&self) -> Result<Vec<Subspace>> {
        let full = Subspace::full(self.dim);
        let mut series = vec![full.clone()];
        loop {
            let next = self.bracket_subspaces(&full, series.last().unwrap());
            if next.is_zero() {
                return Ok(series);
            }
            if next.dim() == series.last().unwrap().dim() || series.len() > self.dim {
                return Err(Error::NotNilpotent(self.dim));
            }
            series.push(next);
        }
    }

    /// Strong Malcev conditions: each `span{X_i, ..., X_{n-1}}` is an ideal
    /// (so `[X_a, X_b]` only involves `X_k`, `k > max(a, b)`), and each
    /// central series term is a coordinate tail. Returns the tail offsets.
    fn check_malcev(&self) -> std::result::Result<Vec<usize>, String> {
        for sc in &self.consts {
            if sc.k <= sc.j {
                return Err(format!(
                    "[X{}, X{}] has a component on X{}, not below both indices",
                    sc.i, sc.j, sc.k
                ));
            }
        }
        let mut offsets = Vec::new();
        for (level, term) in self.series.iter().enumerate() {
            let from = self.dim - term.dim();
            if !term.is_coordinate_tail(from) {
                return Err(format!("central series term {} is not spanned by a basis tail", level + 1));
            }
            offsets.push(from);
        }
        Ok(offsets)
    }

    pub fn malcev_check(&self) -> Result<()> {
        self.malcev.as_ref().map(|_| ()).map_err(|e| Error::NotMalcev(e.clone()))
    }

    /// Index of the first basis vector of `g^(i)`; requires a Malcev basis.
    pub fn series_offset(&self, i: usize) -> Result<usize> {
        let offsets = self.malcev.as_ref().map_err(|e| Error::NotMalcev(e.clone()))?;
        Ok(offsets.get(i - 1).copied().unwrap_or(self.dim))
    }

    /// Dimension of the abelianization `g / [g, g]`.
    pub fn abelian_rank(&self) -> usize {
        self.dim - self.series_term(2).dim()
    }

    /// First-kind (exponential) to second-kind (Malcev) coordinates:
    /// `exp(a) = exp(t_0 X_0) ... exp(t_{n-1} X_{n-1})`.
    pub fn first_to_second<S: Scalar>(&self, a: &[S]) -> Result<Coords<S>> {
        self.malcev_check()?;
        self.check_len(a)?;
        Ok(self.first_to_second_unchecked(a))
    }

    pub(crate) fn first_to_second_unchecked<S: Scalar>(&self, a: &[S]) -> Coords<S> {
        if self.consts.is_empty() {
            return a.iter().cloned().collect();
        }
        let mut h: Coords<S> = a.iter().cloned().collect();
        let mut t = self.zero_vector::<S>();
        for i in 0..self.dim {
            let ti = h[i].clone();
            if !ti.is_zero() {
                let mut peel = self.zero_vector::<S>();
                peel[i] = -ti.clone();
                h = self.bch_unchecked(&peel, &h);
                h[i] = S::zero();
            }
            t[i] = ti;
        }
        t
    }

    /// Second-kind to first-kind coordinates.
    pub fn second_to_first<S: Scalar>(&self, t: &[S]) -> Result<Coords<S>> {
        self.malcev_check()?;
        self.check_len(t)?;
        Ok(self.second_to_first_unchecked(t))
    }

    pub(crate) fn second_to_first_unchecked<S: Scalar>(&self, t: &[S]) -> Coords<S> {
        if self.consts.is_empty() {
            return t.iter().cloned().collect();
        }
        let mut a = self.zero_vector::<S>();
        for (i, ti) in t.iter().enumerate() {
            if ti.is_zero() {
                continue;
            }
            let mut step = self.zero_vector::<S>();
            step[i] = ti.clone();
            a = self.bch_unchecked(&a, &step);
        }
        a
    }

    /// Canonical plain-text form; see [`LieAlgebra::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\nclass {}\n", self.dim, self.declared_class);
        for sc in &self.consts {
            s.push_str(&format!("{} {} {} {}\n", sc.i + 1, sc.j + 1, sc.k + 1, format_rational(&sc.c.exact)));
        }
        s
    }

    /// Parses the plain-text algebra schema:
    ///
    /// ```text
    /// # Heisenberg algebra
    /// dim 3
    /// class 2
    /// 1 2 3 1        # [X1, X2] = 1 * X3   (indices 1-based, value p/q)
    /// ```
    ///
    /// Blank lines and `#` comments are ignored. Only nonzero constants are
    /// listed; `[X_j, X_i]` follows by antisymmetry.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut class = None;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |m: &str| Error::Parse(format!("line {}: {m}: {raw:?}", lineno + 1));
            match toks.as_slice() {
                ["dim", n] => dim = Some(n.parse::<usize>().map_err(|_| err("bad dimension"))?),
                ["class", k] => class = Some(k.parse::<usize>().map_err(|_| err("bad class"))?),
                [i, j, k, c] => {
                    let idx = |s: &str| -> Result<usize> {
                        let v: usize = s.parse().map_err(|_| err("bad index"))?;
                        v.checked_sub(1).ok_or_else(|| err("indices are 1-based"))
                    };
                    entries.push((idx(i)?, idx(j)?, idx(k)?, parse_rational(c)?));
                }
                _ => return Err(err("expected `dim N`, `class K` or `i j k p/q`")),
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("missing `dim`".into()))?;
        let class = class.ok_or_else(|| Error::Parse("missing `class`".into()))?;
        LieAlgebra::new(dim, entries, class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::library;
    use crate::scalar::{int, rational};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn heisenberg_bracket() {
        let h = library::heisenberg();
        assert_eq!(h.bracket(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap().to_vec(), v(&[0, 0, 1]));
        assert_eq!(h.bracket(&v(&[2, 1, 0]), &v(&[0, 1, 0])).unwrap().to_vec(), v(&[0, 0, 2]));
        let x = v(&[3, -2, 7]);
        assert!(h.bracket(&x, &x).unwrap().iter().all(|c| c.is_zero()));
        assert!(matches!(h.bracket(&v(&[1, 0]), &x), Err(Error::Dimension { .. })));
    }

    #[test]
    fn rejects_bad_algebras() {
        // [X1,X2] = X1 is not nilpotent
        assert!(matches!(LieAlgebra::new(2, vec![(0, 1, 0, int(1))], 3), Err(Error::NotNilpotent(_))));
        // contradictory antisymmetric entries
        assert!(LieAlgebra::new(3, vec![(0, 1, 2, int(1)), (1, 0, 2, int(1))], 2).is_err());
        // Heisenberg declared abelian
        assert!(matches!(
            LieAlgebra::new(3, vec![(0, 1, 2, int(1))], 1),
            Err(Error::ClassExceeded { declared: 1, actual: 2 })
        ));
        // [X1,[X2,X3]] + [X2,[X3,X1]] + [X3,[X1,X2]] = -[X2,X4] = -X3
        let jac = LieAlgebra::new(4, vec![(0, 1, 2, int(1)), (0, 2, 3, int(1)), (1, 3, 2, int(1))], 3);
        assert!(matches!(jac, Err(Error::Algebra(m)) if m.contains("Jacobi")));
    }

    #[test]
    fn central_series_dims() {
        assert_eq!(library::heisenberg().central_series_dims(), vec![3, 1, 0]);
        assert_eq!(library::abelian(4).central_series_dims(), vec![4, 0]);
        assert_eq!(library::abelian(4).class(), 1);
        assert_eq!(library::free_class3().central_series_dims(), vec![5, 3, 2, 0]);
        assert_eq!(library::free_class3().class(), 3);
    }

    #[test]
    fn heisenberg_bch_matches_closed_form() {
        let h = library::heisenberg();
        let a = vec![rational(1, 2), int(3), rational(-1, 3)];
        let b = vec![int(-2), rational(5, 7), int(1)];
        let got = h.bch(&a, &b).unwrap();
        let z = &a[2] + &b[2] + (&a[0] * &b[1] - &a[1] * &b[0]) / int(2);
        assert_eq!(got.to_vec(), vec![&a[0] + &b[0], &a[1] + &b[1], z]);
        assert_eq!(h.bch(&a, &h.zero_vector::<Rational>()).unwrap().to_vec(), a);
        let neg: Vec<Rational> = a.iter().map(|x| -x.clone()).collect();
        assert!(h.bch(&a, &neg).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn heisenberg_second_kind() {
        let h = library::heisenberg();
        let a = vec![int(2), int(3), int(5)];
        // exp(aX+bY+cZ) = exp(aX) exp(bY) exp((c - ab/2) Z)
        assert_eq!(h.first_to_second(&a).unwrap().to_vec(), vec![int(2), int(3), rational(2, 1)]);
        assert!(h.first_to_second(&h.zero_vector::<Rational>()).unwrap().iter().all(|c| c.is_zero()));
        let back = h.second_to_first(&h.first_to_second(&a).unwrap()).unwrap();
        assert_eq!(back.to_vec(), a);
    }

    #[test]
    fn malcev_validation() {
        // [X2, X3] = X1 is a valid algebra but not adapted to the basis order
        let alg = LieAlgebra::new(3, vec![(1, 2, 0, int(1))], 2).unwrap();
        assert!(matches!(alg.first_to_second(&[int(1), int(0), int(0)]), Err(Error::NotMalcev(_))));
        assert!(library::heisenberg().malcev_check().is_ok());
        assert!(library::free_class3().malcev_check().is_ok());
    }

    #[test]
    fn text_round_trip() {
        let text = "dim 3\nclass 2\n1 2 3 -7/3\n";
        let alg = LieAlgebra::parse(text).unwrap();
        assert_eq!(alg.constant(1, 0, 2), rational(7, 3));
        assert_eq!(alg.to_text(), text);
        let noisy = "# comment\n dim 3 \n\nclass 2\n2 1 3 14/6  # reversed\n";
        assert_eq!(LieAlgebra::parse(noisy).unwrap().to_text(), text);
        assert!(LieAlgebra::parse("dim 3\n1 2 3 1\n").is_err());
        assert!(LieAlgebra::parse("dim 3\nclass 2\n0 2 3 1\n").is_err());
    }
}
