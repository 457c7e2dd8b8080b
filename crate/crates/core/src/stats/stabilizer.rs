use num::complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::fixed::{Fixed, FixedC};
use crate::dynamics::{e, AffineSystem, Observable, Orbit};
use crate::nilmanifold::GroupPoint;
use crate::scalar::{int, Rational, Scalar};
use crate::{Error, Result};

const CHUNK: u64 = 1 << 14;

/// Empirical correlation of `f1 (x) conj(f2)` along the orbit of
/// `phi^r x phi^s` from `(x, y)`, before and after translating both orbits
/// by `(z^{r^k}, z^{s^k})` with `z = exp(c X_last)` central.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizerReport {
    pub r: u64,
    pub s: u64,
    pub k: u32,
    pub n: u64,
    pub c: String,
    pub before: [f64; 2],
    pub after: [f64; 2],
    /// `chi1^{r^k} chi2^{-s^k}(z)`.
    pub expected: [f64; 2],
    /// `after / before`.
    pub ratio: [f64; 2],
    /// `|after - expected * before|`.
    pub ratio_error: f64,
    pub correlation: f64,
}

#[derive(Debug, Clone)]
pub struct StabilizerSetup {
    pub system: AffineSystem,
    pub x: GroupPoint<Rational>,
    pub y: GroupPoint<Rational>,
    pub f1: Observable,
    pub f2: Observable,
    pub r: u64,
    pub s: u64,
    pub k: u32,
    pub c: Rational,
}

fn shift_last(t: &[f64], by: f64) -> Vec<f64> {
    let mut v = t.to_vec();
    let last = v.last_mut().expect("non-empty");
    *last += by;
    if *last >= 1.0 {
        *last -= 1.0;
    }
    v
}

pub fn stabilizer_translation_test(setup: &StabilizerSetup, n: u64) -> Result<StabilizerReport> {
    let StabilizerSetup { system, x, y, f1, f2, r, s, k, c } = setup;
    let nm = system.nilmanifold();
    f1.check(nm)?;
    f2.check(nm)?;
    let (m1, m2) = match (f1.central_frequency(nm), f2.central_frequency(nm)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidArgument("observables must be central-character equivariant".into())),
    };
    if n == 0 || *r == 0 || *s == 0 || *k == 0 {
        return Err(Error::InvalidArgument("stabilizer test needs n, r, s, k >= 1".into()));
    }
    let rk = (*r as i64).checked_pow(*k).ok_or_else(|| Error::InvalidArgument("r^k overflows".into()))?;
    let sk = (*s as i64).checked_pow(*k).ok_or_else(|| Error::InvalidArgument("s^k overflows".into()))?;
    let sx = Scalar::frac(&(c * int(rk))).as_f64();
    let sy = Scalar::frac(&(c * int(sk))).as_f64();
    let phase = Scalar::frac(&(c * int(m1 * rk - m2 * sk)));
    let expected = e(phase.as_f64());

    let ox = Orbit::new(&system.iterate_system(*r as i64)?, x)?;
    let oy = Orbit::new(&system.iterate_system(*s as i64)?, y)?;
    let fx = Fixed::for_sum(2.0 * f1.bound() * f2.bound(), n);
    let starts: Vec<u64> = (0..n).step_by(CHUNK as usize).collect();
    let (before, after) = starts
        .par_iter()
        .map(|&lo| {
            let (mut cx, mut cy) = (ox.cursor(), oy.cursor());
            let (mut b, mut a) = (FixedC::default(), FixedC::default());
            for i in lo..(lo + CHUNK).min(n) {
                let tx = cx.get(i as i64).to_vec();
                let ty = cy.get(i as i64);
                b += fx.quantize(f1.eval(&tx) * f2.eval(ty).conj());
                a += fx.quantize(f1.eval(&shift_last(&tx, sx)) * f2.eval(&shift_last(ty, sy)).conj());
            }
            (b, a)
        })
        .reduce(
            || (FixedC::default(), FixedC::default()),
            |mut p, q| {
                p.0 += q.0;
                p.1 += q.1;
                p
            },
        );
    let (before, after) = (fx.mean(before, n), fx.mean(after, n));
    let ratio = if before == Complex64::new(0.0, 0.0) { Complex64::new(f64::NAN, f64::NAN) } else { after / before };
    Ok(StabilizerReport {
        r: *r,
        s: *s,
        k: *k,
        n,
        c: crate::scalar::format_rational(c),
        before: [before.re, before.im],
        after: [after.re, after.im],
        expected: [expected.re, expected.im],
        ratio: [ratio.re, ratio.im],
        ratio_error: (after - expected * before).norm(),
        correlation: before.norm(),
    })
}
