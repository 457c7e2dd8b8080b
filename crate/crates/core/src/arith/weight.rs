use std::fmt;
use std::sync::Arc;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sieve::{base_primes, isqrt, sieve_into, Sieve, SieveKind};
use crate::dynamics::{fill_chunked, SignalSeries};
use crate::Result;

type Seed = Arc<dyn Fn(u64) -> Complex64 + Send + Sync>;

/// A multiplicative `u: N -> C` with `|u| <= 1`. As a series it takes the
/// value `u(n)` at index `n >= 1` and `0` at index `0`.
#[derive(Clone)]
pub enum MultiplicativeWeight {
    Mobius,
    Liouville,
    ConstantOne,
    /// `n^{i tau}`, completely multiplicative and unimodular.
    Archimedean { tau: f64 },
    /// Completely multiplicative, determined by its values on primes.
    CompletelyMultiplicative { label: String, seed: Seed },
}

impl fmt::Debug for MultiplicativeWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Serializable subset of weights, used by configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    Mobius,
    Liouville,
    ConstantOne,
    Archimedean { tau: f64 },
}

impl From<&WeightSpec> for MultiplicativeWeight {
    fn from(s: &WeightSpec) -> Self {
        match *s {
            WeightSpec::Mobius => MultiplicativeWeight::Mobius,
            WeightSpec::Liouville => MultiplicativeWeight::Liouville,
            WeightSpec::ConstantOne => MultiplicativeWeight::ConstantOne,
            WeightSpec::Archimedean { tau } => MultiplicativeWeight::Archimedean { tau },
        }
    }
}

impl MultiplicativeWeight {
    /// Completely multiplicative weight from prime values; each is clamped
    /// into the closed unit disk.
    pub fn completely_multiplicative<F>(label: impl Into<String>, seed: F) -> Self
    where
        F: Fn(u64) -> Complex64 + Send + Sync + 'static,
    {
        let seed = move |p: u64| {
            let z = seed(p);
            if z.norm() > 1.0 {
                z / z.norm()
            } else {
                z
            }
        };
        MultiplicativeWeight::CompletelyMultiplicative { label: label.into(), seed: Arc::new(seed) }
    }

    pub fn label(&self) -> String {
        match self {
            MultiplicativeWeight::Mobius => "mobius".into(),
            MultiplicativeWeight::Liouville => "liouville".into(),
            MultiplicativeWeight::ConstantOne => "constant_one".into(),
            MultiplicativeWeight::Archimedean { tau } => format!("archimedean[tau={tau}]"),
            MultiplicativeWeight::CompletelyMultiplicative { label, .. } => format!("cm[{label}]"),
        }
    }

    /// Writes `u(start), ..., u(start + out.len() - 1)`, with `u(0) = 0`.
    fn fill_serial(&self, start: u64, out: &mut [Complex64]) {
        let (head, lo) = if start == 0 && !out.is_empty() {
            out[0] = Complex64::new(0.0, 0.0);
            (1, 1)
        } else {
            (0, start)
        };
        let out = &mut out[head..];
        if out.is_empty() {
            return;
        }
        let hi = lo + out.len() as u64;
        match self {
            MultiplicativeWeight::Mobius | MultiplicativeWeight::Liouville => {
                let kind =
                    if matches!(self, MultiplicativeWeight::Mobius) { SieveKind::Mobius } else { SieveKind::Liouville };
                let mut v = vec![0i8; out.len()];
                sieve_into(kind, lo, &mut v, &base_primes(isqrt(hi - 1)));
                for (o, x) in out.iter_mut().zip(v) {
                    *o = Complex64::new(x as f64, 0.0);
                }
            }
            MultiplicativeWeight::ConstantOne => out.fill(Complex64::new(1.0, 0.0)),
            MultiplicativeWeight::Archimedean { tau } => {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = Complex64::cis(tau * ((lo + i as u64) as f64).ln());
                }
            }
            MultiplicativeWeight::CompletelyMultiplicative { seed, .. } => {
                let mut rest: Vec<u64> = (lo..hi).collect();
                out.fill(Complex64::new(1.0, 0.0));
                for &p in base_primes(isqrt(hi - 1)).iter() {
                    let up = seed(p);
                    let mut i = (lo.div_ceil(p) * p - lo) as usize;
                    while i < out.len() {
                        while rest[i] % p == 0 {
                            rest[i] /= p;
                            out[i] *= up;
                        }
                        i += p as usize;
                    }
                }
                for (o, r) in out.iter_mut().zip(rest) {
                    if r > 1 {
                        *o *= seed(r);
                    }
                }
            }
        }
    }
}

impl SignalSeries for MultiplicativeWeight {
    fn fill(&self, start: u64, out: &mut [Complex64]) {
        fill_chunked(start, out, |s, piece| self.fill_serial(s, piece));
    }

    fn bound(&self) -> f64 {
        1.0
    }

    fn label(&self) -> String {
        MultiplicativeWeight::label(self)
    }
}

/// `u(lo), ..., u(hi - 1)` for `1 <= lo < hi`, subject to the sieve cap.
pub fn weight_eval(w: &MultiplicativeWeight, lo: u64, hi: u64) -> Result<Vec<Complex64>> {
    Sieve::default().check_range(lo, hi)?;
    Ok(w.values(lo, (hi - lo) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn weights() -> Vec<MultiplicativeWeight> {
        vec![
            MultiplicativeWeight::Mobius,
            MultiplicativeWeight::Liouville,
            MultiplicativeWeight::ConstantOne,
            MultiplicativeWeight::Archimedean { tau: 1.3 },
            MultiplicativeWeight::completely_multiplicative("half-turns", |p| Complex64::cis(p as f64)),
        ]
    }

    #[test]
    fn multiplicative_and_bounded() {
        for w in weights() {
            let v = weight_eval(&w, 1, 2001).unwrap();
            let u = |n: u64| v[(n - 1) as usize];
            assert!((u(1) - Complex64::new(1.0, 0.0)).norm() < 1e-15, "{}", w.label());
            assert!(v.iter().all(|z| z.norm() <= 1.0 + 1e-12));
            for m in 1..=40u64 {
                for n in 1..=40u64 {
                    if gcd(m, n) == 1 {
                        assert!((u(m * n) - u(m) * u(n)).norm() < 1e-12, "{} at ({m}, {n})", w.label());
                    }
                }
            }
        }
    }

    #[test]
    fn seeds_one_give_constant_one() {
        let w = MultiplicativeWeight::completely_multiplicative("one", |_| Complex64::new(1.0, 0.0));
        assert!(weight_eval(&w, 1, 5000).unwrap().iter().all(|z| *z == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn unimodular_seeds_stay_unimodular() {
        let tau = 2.5f64;
        let w = MultiplicativeWeight::completely_multiplicative("p^it", move |p| Complex64::cis(tau * (p as f64).ln()));
        let v = weight_eval(&w, 1, 10_000).unwrap();
        assert!(v.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
        let a = weight_eval(&MultiplicativeWeight::Archimedean { tau }, 1, 10_000).unwrap();
        assert!(v.iter().zip(&a).all(|(x, y)| (x - y).norm() < 1e-9));
    }

    #[test]
    fn series_index_zero_is_zero() {
        let v = MultiplicativeWeight::Mobius.values(0, 5);
        assert_eq!(v.iter().map(|z| z.re as i8).collect::<Vec<_>>(), vec![0, 1, -1, -1, 0]);
    }
}
