//! Lazily evaluated complex sequences and float orbits with exact anchors.
//!
//! A float orbit point `phi^k(x)` is computed by stepping in float from the
//! exact point `phi^{bB}(x)`, `b = floor(|k| / B)`, reduced in rational
//! arithmetic (forward map for `k >= 0`, inverse map for `k < 0`). Exact
//! reduction is canonical on cosets, so the anchor does not depend on how it
//! was reached: every value is a pure function of `k`, bit for bit, whatever
//! window, thread count or access order produced it. Float error is bounded
//! by `B` steps instead of growing with `|k|`.

use std::sync::Arc;

use num::complex::Complex64;
use rayon::prelude::*;

use super::system::{reduced_floats, AffinePower, AffineSystem};
use super::Observable;
use crate::lie::{FloatPoint, FAST_DIM};
use crate::nilmanifold::GroupPoint;
use crate::scalar::{Coords, Rational};
use crate::{Error, Result};

/// Default anchor spacing in steps.
pub const DEFAULT_BLOCK: u64 = 4096;

/// Values per parallel work unit.
const CHUNK: u64 = 1 << 16;

/// A complex sequence `a_0, a_1, ...` evaluated on demand.
pub trait SignalSeries: Send + Sync {
    /// Writes `a_start, ..., a_{start + out.len() - 1}` into `out`.
    fn fill(&self, start: u64, out: &mut [Complex64]);

    /// Declared bound on `|a_n|`.
    fn bound(&self) -> f64;

    /// Exclusive end of the defined index range, `None` when unbounded.
    fn end(&self) -> Option<u64> {
        None
    }

    fn label(&self) -> String;

    /// `n -> a_{p n}` when the series can produce it without evaluating
    /// the skipped terms.
    fn dilate(&self, _p: u64) -> Option<Box<dyn SignalSeries>> {
        None
    }

    fn values(&self, start: u64, len: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        self.fill(start, &mut out);
        out
    }
}

/// Fails unless `a` is defined on `[0, needed)`.
pub fn require_len(a: &dyn SignalSeries, needed: u64) -> Result<()> {
    match a.end() {
        Some(end) if end < needed => Err(Error::InsufficientLength { needed, have: end }),
        _ => Ok(()),
    }
}

/// Splits `out` (covering absolute indices from `start`) at multiples of
/// `CHUNK` and runs `work` on the pieces in parallel.
pub(crate) fn fill_chunked<F>(start: u64, out: &mut [Complex64], work: F)
where
    F: Fn(u64, &mut [Complex64]) + Sync,
{
    let mut pieces = Vec::new();
    let mut rest = out;
    let mut at = start;
    while !rest.is_empty() {
        let room = (CHUNK - at % CHUNK).min(rest.len() as u64) as usize;
        let (head, tail) = rest.split_at_mut(room);
        pieces.push((at, head));
        at += room as u64;
        rest = tail;
    }
    pieces.into_par_iter().for_each(|(s, piece)| work(s, piece));
}

/// Exact-anchored float orbit of an affine system.
#[derive(Debug, Clone)]
pub struct Orbit {
    fwd: Arc<AffineSystem>,
    bwd: Arc<AffineSystem>,
    x0: GroupPoint<Rational>,
    block: u64,
    fwd_block: Arc<AffinePower>,
    bwd_block: Arc<AffinePower>,
}

impl Orbit {
    pub fn new(sys: &AffineSystem, x0: &GroupPoint<Rational>) -> Result<Self> {
        Orbit::with_block(sys, x0, DEFAULT_BLOCK)
    }

    pub fn with_block(sys: &AffineSystem, x0: &GroupPoint<Rational>, block: u64) -> Result<Self> {
        sys.nilmanifold().check(x0)?;
        if block == 0 {
            return Err(Error::InvalidArgument("anchor block must be positive".into()));
        }
        let bwd = sys.inverse()?;
        let x0 = sys.nilmanifold().reduce(x0);
        let fwd_block = Arc::new(sys.power(block as i64));
        let bwd_block = Arc::new(bwd.power(block as i64));
        Ok(Orbit { fwd: Arc::new(sys.clone()), bwd: Arc::new(bwd), x0, block, fwd_block, bwd_block })
    }

    pub fn system(&self) -> &AffineSystem {
        &self.fwd
    }

    pub fn start(&self) -> &GroupPoint<Rational> {
        &self.x0
    }

    /// Exact reduced `phi^k(x0)`.
    pub fn exact_point(&self, k: i64) -> GroupPoint<Rational> {
        let (sys, j) = if k >= 0 { (&self.fwd, k) } else { (&self.bwd, -k) };
        sys.apply_power(&sys.power(j), &self.x0)
    }

    pub fn cursor(&self) -> Cursor<'_> {
        Cursor { orbit: self, state: None }
    }

    /// Reduced second-kind float coordinates of `phi^k(x0)` for `k` in `range`.
    pub fn points(&self, start: i64, len: usize) -> Vec<Coords<f64>> {
        let mut c = self.cursor();
        (0..len as i64).map(|i| c.get(start + i).into()).collect()
    }
}

struct CursorState {
    backward: bool,
    block: u64,
    pos: u64,
    anchor: GroupPoint<Rational>,
    t: Coords<f64>,
    p: FloatPoint,
}

/// Sequential access to orbit points; cheap for non-decreasing `|k|` runs.
pub struct Cursor<'a> {
    orbit: &'a Orbit,
    state: Option<CursorState>,
}

impl Cursor<'_> {
    pub fn get(&mut self, k: i64) -> &[f64] {
        let o = self.orbit;
        let backward = k < 0;
        let j = k.unsigned_abs();
        let block = j / o.block;
        let (sys, block_power) = if backward { (&o.bwd, &o.bwd_block) } else { (&o.fwd, &o.fwd_block) };
        let reuse = matches!(&self.state, Some(s) if s.backward == backward && s.block == block && s.pos <= j);
        if !reuse {
            let anchor = match self.state.take() {
                Some(s) if s.backward == backward && s.block + 1 == block => sys.apply_power(block_power, &s.anchor),
                Some(s) if s.backward == backward && s.block == block => s.anchor,
                _ => sys.apply_power(&sys.power((block * o.block) as i64), &o.x0),
            };
            let t = reduced_floats(sys.nilmanifold(), &anchor);
            let mut p = [0.0; FAST_DIM];
            if t.len() <= FAST_DIM {
                p[..t.len()].copy_from_slice(&t);
            }
            self.state = Some(CursorState { backward, block, pos: block * o.block, anchor, t, p });
        }
        let s = self.state.as_mut().expect("state set above");
        let n = s.t.len();
        match sys.nilmanifold().float_law() {
            Some(law) => {
                while s.pos < j {
                    s.p = sys.step_point(law, &s.p);
                    s.pos += 1;
                }
                &s.p[..n]
            }
            None => {
                while s.pos < j {
                    s.t = sys.step_reduced(&s.t);
                    s.pos += 1;
                }
                &s.t
            }
        }
    }
}

/// `a_n = f(phi^n x)`.
#[derive(Debug, Clone)]
pub struct OrbitSeries {
    orbit: Orbit,
    f: Observable,
}

pub fn orbit_series(sys: &AffineSystem, x: &GroupPoint<Rational>, f: Observable) -> Result<OrbitSeries> {
    f.check(sys.nilmanifold())?;
    Ok(OrbitSeries { orbit: Orbit::new(sys, x)?, f })
}

impl OrbitSeries {
    pub fn from_orbit(orbit: Orbit, f: Observable) -> Result<Self> {
        f.check(orbit.system().nilmanifold())?;
        Ok(OrbitSeries { orbit, f })
    }

    pub fn orbit(&self) -> &Orbit {
        &self.orbit
    }

    pub fn observable(&self) -> &Observable {
        &self.f
    }
}

impl SignalSeries for OrbitSeries {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        fill_chunked(start, out, |s, piece| {
            let mut c = self.orbit.cursor();
            for (i, o) in piece.iter_mut().enumerate() {
                *o = self.f.eval(c.get((s + i as u64) as i64));
            }
        });
    }

    fn bound(&self) -> f64 {
        self.f.bound()
    }

    fn label(&self) -> String {
        format!("orbit[{}]", self.f.label())
    }

    fn dilate(&self, p: u64) -> Option<Box<dyn SignalSeries>> {
        let sys = self.orbit.system().iterate_system(p as i64).ok()?;
        let orbit = Orbit::with_block(&sys, &self.orbit.x0, self.orbit.block).ok()?;
        Some(Box::new(OrbitSeries { orbit, f: self.f.clone() }))
    }
}

/// `n -> a_{p n}` over any series, evaluating every term in between.
pub struct Dilated<'a> {
    inner: &'a dyn SignalSeries,
    p: u64,
}

impl<'a> Dilated<'a> {
    pub fn new(inner: &'a dyn SignalSeries, p: u64) -> Self {
        assert!(p >= 1, "dilation factor must be positive");
        Dilated { inner, p }
    }
}

impl SignalSeries for Dilated<'_> {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        const PIECE: usize = 4096;
        let p = self.p as usize;
        let mut buf = vec![Complex64::new(0.0, 0.0); (PIECE - 1) * p + 1];
        for (c, piece) in out.chunks_mut(PIECE).enumerate() {
            let s = start + (c * PIECE) as u64;
            let span = &mut buf[..(piece.len() - 1) * p + 1];
            self.inner.fill(s * self.p, span);
            for (i, o) in piece.iter_mut().enumerate() {
                *o = span[i * p];
            }
        }
    }

    fn bound(&self) -> f64 {
        self.inner.bound()
    }

    fn end(&self) -> Option<u64> {
        self.inner.end().map(|e| e.div_ceil(self.p))
    }

    fn label(&self) -> String {
        format!("dilate[{}]({})", self.p, self.inner.label())
    }
}

/// `a_n = f(phi^{floor(gamma n + rho)} x)`.
#[derive(Debug, Clone)]
pub struct SubsampledOrbit {
    orbit: Orbit,
    f: Observable,
    gamma: f64,
    rho: f64,
}

pub fn subsampled_orbit(
    sys: &AffineSystem,
    x: &GroupPoint<Rational>,
    f: Observable,
    gamma: f64,
    rho: f64,
) -> Result<SubsampledOrbit> {
    SubsampledOrbit::new(Orbit::new(sys, x)?, f, gamma, rho)
}

impl SubsampledOrbit {
    pub fn new(orbit: Orbit, f: Observable, gamma: f64, rho: f64) -> Result<Self> {
        if gamma == 0.0 || !gamma.is_finite() || !rho.is_finite() {
            return Err(Error::InvalidArgument(format!("subsampling needs finite nonzero gamma, got {gamma}")));
        }
        f.check(orbit.system().nilmanifold())?;
        Ok(SubsampledOrbit { orbit, f, gamma, rho })
    }

    /// `floor(gamma n + rho)`, a true floor for negative arguments.
    pub fn exponent(&self, n: u64) -> i64 {
        (self.gamma * n as f64 + self.rho).floor() as i64
    }
}

impl SignalSeries for SubsampledOrbit {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        fill_chunked(start, out, |s, piece| {
            let mut c = self.orbit.cursor();
            for (i, o) in piece.iter_mut().enumerate() {
                *o = self.f.eval(c.get(self.exponent(s + i as u64)));
            }
        });
    }

    fn bound(&self) -> f64 {
        self.f.bound()
    }

    fn label(&self) -> String {
        format!("subsampled[gamma={}, rho={}, {}]", self.gamma, self.rho, self.f.label())
    }
}

/// A series given by a pure function of the index.
pub struct FnSeries<F> {
    f: F,
    bound: f64,
    label: String,
}

impl<F: Fn(u64) -> Complex64 + Send + Sync> FnSeries<F> {
    pub fn new(label: impl Into<String>, bound: f64, f: F) -> Self {
        FnSeries { f, bound, label: label.into() }
    }
}

impl<F: Fn(u64) -> Complex64 + Send + Sync> SignalSeries for FnSeries<F> {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        fill_chunked(start, out, |s, piece| {
            for (i, o) in piece.iter_mut().enumerate() {
                *o = (self.f)(s + i as u64);
            }
        });
    }

    fn bound(&self) -> f64 {
        self.bound
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// A materialized series on `[0, values.len())`.
#[derive(Debug, Clone)]
pub struct VecSeries {
    values: Vec<Complex64>,
    bound: f64,
    label: String,
}

impl VecSeries {
    pub fn new(label: impl Into<String>, values: Vec<Complex64>) -> Self {
        let bound = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        VecSeries { values, bound, label: label.into() }
    }
}

impl SignalSeries for VecSeries {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        let s = start as usize;
        out.copy_from_slice(&self.values[s..s + out.len()]);
    }

    fn bound(&self) -> f64 {
        self.bound
    }

    fn end(&self) -> Option<u64> {
        Some(self.values.len() as u64)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// `a_n = sum_i c_i f_i(phi^n x)`, a finite combination of observables
/// along one orbit.
#[derive(Debug, Clone)]
pub struct CombinedOrbit {
    orbit: Orbit,
    terms: Vec<(f64, Observable)>,
}

impl CombinedOrbit {
    pub fn new(orbit: Orbit, terms: Vec<(f64, Observable)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("combination needs at least one observable".into()));
        }
        for (_, f) in &terms {
            f.check(orbit.system().nilmanifold())?;
        }
        Ok(CombinedOrbit { orbit, terms })
    }
}

impl SignalSeries for CombinedOrbit {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        fill_chunked(start, out, |s, piece| {
            let mut c = self.orbit.cursor();
            for (i, o) in piece.iter_mut().enumerate() {
                let t = c.get((s + i as u64) as i64);
                *o = self.terms.iter().map(|(w, f)| f.eval(t) * *w).sum();
            }
        });
    }

    fn bound(&self) -> f64 {
        self.terms.iter().map(|(w, f)| w.abs() * f.bound()).sum()
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|(w, f)| format!("{w}*{}", f.label())).collect();
        format!("orbit[{}]", parts.join(" + "))
    }
}
