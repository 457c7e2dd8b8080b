use num::complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::fixed::{Fixed, FixedC, Neumaier};
use crate::dynamics::{require_len, SignalSeries};
use crate::{Error, Result};

/// `A = (1/M) sum_{M <= m < 2M} |(1/H) sum_{m <= n < m+H} a_n u(n)|`.
#[derive(Debug, Clone, Serialize)]
pub struct ShortIntervalReport {
    pub m: u64,
    pub h: u64,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partials: Option<Vec<f64>>,
}

/// Outer indices per work unit; fixed by `H` alone so the reduction order
/// never depends on the thread count.
fn chunk_len(h: u64) -> u64 {
    (1u64 << 16).max(4 * h)
}

fn check(a: &dyn SignalSeries, u: &dyn SignalSeries, m: u64, h: u64) -> Result<Fixed> {
    if m == 0 || h == 0 {
        return Err(Error::InvalidArgument(format!("short-interval average needs M, H >= 1, got M = {m}, H = {h}")));
    }
    let needed = 2 * m + h - 1;
    require_len(a, needed)?;
    require_len(u, needed)?;
    Ok(Fixed::for_sum(2.0 * a.bound() * u.bound(), h))
}

fn products(a: &dyn SignalSeries, u: &dyn SignalSeries, fx: &Fixed, start: u64, len: usize) -> Vec<FixedC> {
    let av = a.values(start, len);
    let uv = u.values(start, len);
    av.iter().zip(&uv).map(|(x, y)| fx.quantize(x * y)).collect()
}

fn run<F>(a: &dyn SignalSeries, u: &dyn SignalSeries, m: u64, h: u64, keep: bool, windows: F) -> Result<ShortIntervalReport>
where
    F: Fn(&[FixedC], usize, &mut dyn FnMut(FixedC)) + Sync,
{
    let fx = check(a, u, m, h)?;
    let step = chunk_len(h);
    let starts: Vec<u64> = (m..2 * m).step_by(step as usize).collect();
    let parts: Vec<(Neumaier, Option<Vec<f64>>)> = starts
        .par_iter()
        .map(|&m0| {
            let count = step.min(2 * m - m0) as usize;
            let p = products(a, u, &fx, m0, count + h as usize - 1);
            let mut acc = Neumaier::default();
            let mut kept = keep.then(|| Vec::with_capacity(count));
            windows(&p, count, &mut |s| {
                let v = fx.to_complex(s).norm() / h as f64;
                acc.add(v);
                if let Some(k) = kept.as_mut() {
                    k.push(v);
                }
            });
            (acc, kept)
        })
        .collect();
    let mut total = Neumaier::default();
    let mut partials = keep.then(|| Vec::with_capacity(m as usize));
    for (acc, kept) in parts {
        total.add(acc.value());
        if let (Some(all), Some(k)) = (partials.as_mut(), kept) {
            all.extend(k);
        }
    }
    Ok(ShortIntervalReport { m, h, value: total.value() / m as f64, partials })
}

/// Sliding-window evaluation: `O(M + H)` products.
pub fn short_interval_avg(a: &dyn SignalSeries, u: &dyn SignalSeries, m: u64, h: u64) -> Result<ShortIntervalReport> {
    short_interval_avg_with(a, u, m, h, false)
}

/// As [`short_interval_avg`], optionally keeping the inner `|...|` per `m`.
pub fn short_interval_avg_with(
    a: &dyn SignalSeries,
    u: &dyn SignalSeries,
    m: u64,
    h: u64,
    keep_partials: bool,
) -> Result<ShortIntervalReport> {
    run(a, u, m, h, keep_partials, |p, count, emit| {
        let h = p.len() - count + 1;
        let mut s = FixedC::default();
        for x in &p[..h] {
            s += *x;
        }
        for i in 0..count {
            emit(s);
            if i + 1 < count {
                s += p[i + h];
                s -= p[i];
            }
        }
    })
}

/// Direct double loop, `O(M H)`; the reference for the sliding window.
pub fn short_interval_avg_naive(a: &dyn SignalSeries, u: &dyn SignalSeries, m: u64, h: u64) -> Result<ShortIntervalReport> {
    run(a, u, m, h, false, |p, count, emit| {
        let h = p.len() - count + 1;
        for i in 0..count {
            let mut s = FixedC::default();
            for x in &p[i..i + h] {
                s += *x;
            }
            emit(s);
        }
    })
}

/// `b_n = u(k n + j)`, the weight read along an arithmetic progression.
pub struct Progression<'a> {
    u: &'a dyn SignalSeries,
    k: u64,
    j: u64,
}

impl<'a> Progression<'a> {
    pub fn new(u: &'a dyn SignalSeries, k: u64, j: u64) -> Result<Self> {
        if k == 0 || j >= k {
            return Err(Error::InvalidArgument(format!("progression needs k >= 1 and 0 <= j < k, got k = {k}, j = {j}")));
        }
        Ok(Progression { u, k, j })
    }
}

impl SignalSeries for Progression<'_> {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        if out.is_empty() {
            return;
        }
        let k = self.k as usize;
        let span = (out.len() - 1) * k + 1;
        let v = self.u.values(self.k * start + self.j, span);
        for (i, o) in out.iter_mut().enumerate() {
            *o = v[i * k];
        }
    }

    fn bound(&self) -> f64 {
        self.u.bound()
    }

    fn end(&self) -> Option<u64> {
        self.u.end().map(|e| e.saturating_sub(self.j).div_ceil(self.k))
    }

    fn label(&self) -> String {
        format!("{}({}n+{})", self.u.label(), self.k, self.j)
    }
}
