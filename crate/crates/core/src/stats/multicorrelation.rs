use num::complex::Complex64;

use super::birkhoff_mean;
use crate::dynamics::{e, fill_chunked, FnSeries, SignalSeries};
use crate::scalar::frac_mul;
use crate::{Error, Result};

/// `d_h = int prod_i g_i(T^{p_i(h)} x) dx` for `g_i = e(m_i x)` and the
/// rotation `T x = x + alpha` on the circle. The integral is `0` unless
/// `sum m_i = 0`, and then equals `e(alpha sum_i m_i p_i(h))`.
#[derive(Debug, Clone)]
pub struct Multicorrelation {
    alpha: f64,
    m: Vec<i64>,
    /// Integer coefficients, constant term first.
    polys: Vec<Vec<i64>>,
}

pub fn multicorrelation_series(alpha: f64, m: &[i64], polys: &[Vec<i64>]) -> Result<Multicorrelation> {
    if m.is_empty() || m.len() != polys.len() {
        return Err(Error::InvalidArgument(format!(
            "need one polynomial per character, got {} characters and {} polynomials",
            m.len(),
            polys.len()
        )));
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("rotation {alpha} is not finite")));
    }
    Ok(Multicorrelation { alpha, m: m.to_vec(), polys: polys.to_vec() })
}

fn eval_poly(p: &[i64], h: i128) -> i128 {
    p.iter().rev().fold(0i128, |acc, &c| acc * h + c as i128)
}

impl Multicorrelation {
    /// `sum_i m_i p_i(h)`.
    pub fn exponent(&self, h: u64) -> i128 {
        self.m.iter().zip(&self.polys).map(|(&m, p)| m as i128 * eval_poly(p, h as i128)).sum()
    }

    pub fn value(&self, h: u64) -> Complex64 {
        if self.m.iter().sum::<i64>() != 0 {
            return Complex64::new(0.0, 0.0);
        }
        e(frac_mul(self.alpha, self.exponent(h)))
    }

    /// Birkhoff estimate of `d_h` from `n` orbit points of `x0`.
    pub fn monte_carlo(&self, h: u64, x0: f64, n: u64) -> Result<Complex64> {
        let shifts: Vec<i128> = self.polys.iter().map(|p| eval_poly(p, h as i128)).collect();
        let (alpha, m) = (self.alpha, self.m.clone());
        let a = FnSeries::new("multicorrelation-mc", 1.0, move |j| {
            let phase: f64 = m
                .iter()
                .zip(&shifts)
                .map(|(&mi, &s)| mi as f64 * (x0 + frac_mul(alpha, j as i128 + s)))
                .sum();
            e(phase)
        });
        birkhoff_mean(&a, n)
    }
}

impl SignalSeries for Multicorrelation {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        fill_chunked(start, out, |s, piece| {
            for (i, o) in piece.iter_mut().enumerate() {
                *o = self.value(s + i as u64);
            }
        });
    }

    fn bound(&self) -> f64 {
        1.0
    }

    fn label(&self) -> String {
        format!("multicorrelation[alpha={}, m={:?}, p={:?}]", self.alpha, self.m, self.polys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let one = multicorrelation_series(g, &[1], &[vec![0, 1]]).unwrap();
        assert!((0..50).all(|h| one.value(h) == Complex64::new(0.0, 0.0)));
        let two = multicorrelation_series(g, &[1, -1], &[vec![0, 0, 1], vec![0]]).unwrap();
        for h in 0..50u64 {
            let want = e(frac_mul(g, (h * h) as i128));
            assert_eq!(two.value(h), want);
        }
        assert!(multicorrelation_series(g, &[1, 1], &[vec![0]]).is_err());
    }
}
