use num::complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::fixed::{Fixed, FixedC};
use crate::dynamics::{orbit_series, require_len, AffineSystem, Dilated, Observable, SignalSeries};
use crate::nilmanifold::GroupPoint;
use crate::scalar::Rational;
use crate::{Error, Result};

const CHUNK: u64 = 1 << 16;

/// Exact fixed-point sum of `a_n conj(b_n)` (or `a_n` alone) over `[lo, hi)`.
fn fixed_sum(a: &dyn SignalSeries, b: Option<&dyn SignalSeries>, lo: u64, hi: u64) -> (Fixed, FixedC) {
    let bound = a.bound() * b.map_or(1.0, |b| b.bound());
    let fx = Fixed::for_sum(2.0 * bound, hi - lo);
    let starts: Vec<u64> = (lo..hi).step_by(CHUNK as usize).collect();
    let total = starts
        .par_iter()
        .map(|&s| {
            let len = CHUNK.min(hi - s) as usize;
            let av = a.values(s, len);
            let mut acc = FixedC::default();
            match b {
                Some(b) => {
                    let bv = b.values(s, len);
                    for (x, y) in av.iter().zip(&bv) {
                        acc += fx.quantize(x * y.conj());
                    }
                }
                None => {
                    for x in &av {
                        acc += fx.quantize(*x);
                    }
                }
            }
            acc
        })
        .reduce(FixedC::default, |mut x, y| {
            x += y;
            x
        });
    (fx, total)
}

/// `(1/N) sum_{n < N} a_n`, summed exactly.
pub fn birkhoff_mean(a: &dyn SignalSeries, n: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidArgument("Birkhoff mean needs N >= 1".into()));
    }
    require_len(a, n)?;
    let (fx, s) = fixed_sum(a, None, 0, n);
    Ok(fx.mean(s, n))
}

#[derive(Debug, Clone, Serialize)]
pub struct EquidistributionReport {
    pub n: u64,
    pub mean: [f64; 2],
    pub target: [f64; 2],
    pub residual: f64,
}

/// `|(1/N) sum_{n < N} f(phi^n x) - target|`.
pub fn equidistribution_check(
    sys: &AffineSystem,
    x: &GroupPoint<Rational>,
    f: &Observable,
    n: u64,
    target: Complex64,
) -> Result<EquidistributionReport> {
    let a = orbit_series(sys, x, f.clone())?;
    let mean = birkhoff_mean(&a, n)?;
    Ok(EquidistributionReport { n, mean: [mean.re, mean.im], target: [target.re, target.im], residual: (mean - target).norm() })
}

#[derive(Debug, Clone, Serialize)]
pub struct BilinearReport {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub value: [f64; 2],
    pub modulus: f64,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(1/N) sum_{1 <= n <= N} a_{pn} conj(a_{qn})` for distinct primes `p, q`.
pub fn kbsz_bilinear(a: &dyn SignalSeries, p: u64, q: u64, n: u64) -> Result<BilinearReport> {
    if p == q || !is_prime(p) || !is_prime(q) {
        return Err(Error::InvalidArgument(format!("bilinear sum needs distinct primes, got p = {p}, q = {q}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("bilinear sum needs N >= 1".into()));
    }
    require_len(a, p.max(q) * n + 1)?;
    let fast = (a.dilate(p), a.dilate(q));
    let (ap, aq): (&dyn SignalSeries, &dyn SignalSeries);
    let slow = (Dilated::new(a, p), Dilated::new(a, q));
    match &fast {
        (Some(x), Some(y)) => (ap, aq) = (x.as_ref(), y.as_ref()),
        _ => (ap, aq) = (&slow.0, &slow.1),
    }
    let (fx, s) = fixed_sum(ap, Some(aq), 1, n + 1);
    let v = fx.mean(s, n);
    Ok(BilinearReport { p, q, n, value: [v.re, v.im], modulus: v.norm() })
}

/// `(1/N) sum_{1 <= n <= N} a_n u(k n + j)`.
pub fn arithmetic_progression_avg(a: &dyn SignalSeries, u: &dyn SignalSeries, k: u64, j: u64, n: u64) -> Result<Complex64> {
    let b = super::Progression::new(u, k, j)?;
    if n == 0 {
        return Err(Error::InvalidArgument("progression average needs N >= 1".into()));
    }
    require_len(a, n + 1)?;
    require_len(u, k * n + j + 1)?;
    let prod = Product { a, b: &b };
    let (fx, s) = fixed_sum(&prod, None, 1, n + 1);
    Ok(fx.mean(s, n))
}

/// Pointwise product of two series.
pub struct Product<'a> {
    pub a: &'a dyn SignalSeries,
    pub b: &'a dyn SignalSeries,
}

impl SignalSeries for Product<'_> {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        self.a.fill(start, out);
        let bv = self.b.values(start, out.len());
        for (o, y) in out.iter_mut().zip(bv) {
            *o *= y;
        }
    }

    fn bound(&self) -> f64 {
        self.a.bound() * self.b.bound()
    }

    fn end(&self) -> Option<u64> {
        match (self.a.end(), self.b.end()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    fn label(&self) -> String {
        format!("{}*{}", self.a.label(), self.b.label())
    }
}
