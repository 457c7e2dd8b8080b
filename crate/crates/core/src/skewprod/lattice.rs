use rand::{Rng, SeedableRng};

use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

/// `A_{k,r,s} = {(m, n) in Z^d x Z^d : s^k m = r^k n} = {(r^k j, s^k j)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterLattice {
    k: u32,
    r: i64,
    s: i64,
    d: usize,
    rk: i128,
    sk: i128,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn akrs_lattice(k: u32, r: i64, s: i64, d: usize) -> Result<CharacterLattice> {
    if k == 0 || d == 0 || r <= 0 || s <= 0 {
        return Err(Error::InvalidArgument(format!("A_(k,r,s) needs k, d >= 1 and r, s >= 1, got k = {k}, r = {r}, s = {s}, d = {d}")));
    }
    if gcd(r, s) != 1 {
        return Err(Error::InvalidArgument(format!("r = {r} and s = {s} are not coprime")));
    }
    let pow = |b: i64| (b as i128).checked_pow(k).filter(|v| v.unsigned_abs() < 1 << 62);
    let (rk, sk) = match (pow(r), pow(s)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidArgument(format!("{r}^{k} or {s}^{k} too large"))),
    };
    Ok(CharacterLattice { k, r, s, d, rk, sk })
}

impl CharacterLattice {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn powers(&self) -> (i128, i128) {
        (self.rk, self.sk)
    }

    pub fn params(&self) -> (u32, i64, i64) {
        (self.k, self.r, self.s)
    }

    /// `s^k m = r^k n`, exactly.
    pub fn member(&self, m: &[i64], n: &[i64]) -> bool {
        m.len() == self.d
            && n.len() == self.d
            && m.iter().zip(n).all(|(&a, &b)| self.sk * a as i128 == self.rk * b as i128)
    }

    /// `(r^k j, s^k j)`.
    pub fn generator(&self, j: &[i64]) -> (Vec<i128>, Vec<i128>) {
        (j.iter().map(|&x| self.rk * x as i128).collect(), j.iter().map(|&x| self.sk * x as i128).collect())
    }

    /// The `j` with `(m, n) = (r^k j, s^k j)`, if any.
    pub fn decompose(&self, m: &[i64], n: &[i64]) -> Option<Vec<i64>> {
        if m.len() != self.d || n.len() != self.d {
            return None;
        }
        m.iter()
            .zip(n)
            .map(|(&a, &b)| {
                let (a, b) = (a as i128, b as i128);
                (a % self.rk == 0 && a / self.rk * self.sk == b).then(|| (a / self.rk) as i64)
            })
            .collect()
    }

    /// Points `(x, y)` of `T^d x T^d` with `r^k x + s^k y = 0`: `x` random
    /// with denominator at most `den`, `y = (l - r^k x) / s^k` over random
    /// branches `l`.
    pub fn annihilator_sample(&self, count: usize, den: i64, seed: u64) -> Vec<(Vec<Rational>, Vec<Rational>)> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (rk, sk) = (Rational::from_integer(self.rk.into()), Rational::from_integer(self.sk.into()));
        (0..count)
            .map(|_| {
                let x: Vec<Rational> = (0..self.d)
                    .map(|_| {
                        let q = rng.gen_range(1..=den.max(1));
                        Rational::new(rng.gen_range(0..q).into(), q.into())
                    })
                    .collect();
                let y = x
                    .iter()
                    .map(|xi| {
                        let l = Rational::from_integer(rng.gen_range(0..self.sk as i64).into());
                        Scalar::frac(&((l - &rk * xi) / &sk))
                    })
                    .collect();
                (x, y)
            })
            .collect()
    }

    /// `m . x + n . y` mod 1, the phase of the character `(m, n)` at `(x, y)`.
    pub fn pairing(m: &[i128], n: &[i128], x: &[Rational], y: &[Rational]) -> Rational {
        let dot = |a: &[i128], b: &[Rational]| {
            a.iter().zip(b).fold(Rational::from_integer(0.into()), |acc, (&ai, bi)| acc + Rational::from_integer(ai.into()) * bi)
        };
        Scalar::frac(&(dot(m, x) + dot(n, y)))
    }
}
