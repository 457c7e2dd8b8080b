use serde::Serialize;

use crate::scalar::circle_dist;
use crate::{Error, Result};

/// Drift of the invariant `s t1 - r t2` along the orbit of
/// `(t1, t2) -> (t1 + r alpha, t2 + s alpha)` on `T^d x T^d`, together with
/// the intertwiner `I = a t1 + b t2` (`a r + b s = 1`), which should advance
/// by exactly `alpha` per step.
#[derive(Debug, Clone, Serialize)]
pub struct JoiningProbe {
    pub r: i64,
    pub s: i64,
    pub n: u64,
    pub start: (Vec<f64>, Vec<f64>),
    /// `s t1 - r t2` at the start, mod 1.
    pub invariant: Vec<f64>,
    pub drift: f64,
    pub intertwiner: (i64, i64),
    pub intertwiner_drift: f64,
}

/// `(g, a, b)` with `a x + b y = g = gcd(x, y)`.
pub(crate) fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        return if x < 0 { (-x, -1, 0) } else { (x, 1, 0) };
    }
    let (g, a, b) = ext_gcd(y, x.rem_euclid(y));
    (g, b, a - x.div_euclid(y) * b)
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

pub fn joining_support_probe(alpha: &[f64], r: i64, s: i64, start: (&[f64], &[f64]), n: u64) -> Result<JoiningProbe> {
    let d = alpha.len();
    if d == 0 || start.0.len() != d || start.1.len() != d {
        return Err(Error::Dimension { expected: d, got: start.0.len().min(start.1.len()) });
    }
    let (g, a, b) = ext_gcd(r, s);
    if r <= 0 || s <= 0 || g != 1 {
        return Err(Error::InvalidArgument(format!("joining probe needs coprime positive r, s, got ({r}, {s})")));
    }
    let (rf, sf, af, bf) = (r as f64, s as f64, a as f64, b as f64);
    let mut t1: Vec<f64> = start.0.iter().map(|&x| frac(x)).collect();
    let mut t2: Vec<f64> = start.1.iter().map(|&x| frac(x)).collect();
    let inv0: Vec<f64> = (0..d).map(|i| frac(sf * t1[i] - rf * t2[i])).collect();
    let int0: Vec<f64> = (0..d).map(|i| af * t1[i] + bf * t2[i]).collect();
    let (step1, step2): (Vec<f64>, Vec<f64>) = alpha.iter().map(|&x| (frac(rf * x), frac(sf * x))).unzip();
    let (mut drift, mut idrift) = (0.0f64, 0.0f64);
    for k in 1..=n {
        for i in 0..d {
            t1[i] = frac(t1[i] + step1[i]);
            t2[i] = frac(t2[i] + step2[i]);
            drift = drift.max(circle_dist(sf * t1[i] - rf * t2[i] - inv0[i]));
            let expect = int0[i] + crate::scalar::frac_mul(alpha[i], k as i128);
            idrift = idrift.max(circle_dist(af * t1[i] + bf * t2[i] - expect));
        }
    }
    Ok(JoiningProbe {
        r,
        s,
        n,
        start: (start.0.to_vec(), start.1.to_vec()),
        invariant: inv0,
        drift,
        intertwiner: (a, b),
        intertwiner_drift: idrift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout() {
        for (x, y) in [(2, 3), (3, 2), (7, 10), (1, 1), (9, 4)] {
            let (g, a, b) = ext_gcd(x, y);
            assert_eq!(g, 1);
            assert_eq!(a * x + b * y, 1);
        }
        assert_eq!(ext_gcd(4, 6).0, 2);
    }

    #[test]
    fn origin_stays_on_zero_coset() {
        let p = joining_support_probe(&[2f64.sqrt() - 1.0], 2, 3, (&[0.0], &[0.0]), 1000).unwrap();
        assert_eq!(p.invariant, vec![0.0]);
        assert!(p.drift < 1e-12);
        assert!(joining_support_probe(&[0.1], 2, 4, (&[0.0], &[0.0]), 10).is_err());
    }
}
