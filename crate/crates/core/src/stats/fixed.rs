//! Exact fixed-point accumulation of complex terms.
//!
//! Each term is rounded once to a multiple of `2^-frac` and summed in `i128`.
//! Integer sums do not depend on order, so sliding windows, direct sums and
//! any parallel split give the same result.

use num::complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Fixed {
    frac: i32,
    scale: f64,
    unscale: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct FixedC {
    pub re: i128,
    pub im: i128,
}

impl std::ops::AddAssign for FixedC {
    fn add_assign(&mut self, o: FixedC) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl std::ops::SubAssign for FixedC {
    fn sub_assign(&mut self, o: FixedC) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl Fixed {
    /// Scale leaving headroom for `count` terms of modulus at most `bound`.
    pub fn for_sum(bound: f64, count: u64) -> Self {
        let worst = (bound.max(f64::MIN_POSITIVE) * count.max(1) as f64).log2().ceil() as i32;
        let frac = (124 - worst.max(0)).min(100);
        Fixed { frac, scale: 2f64.powi(frac), unscale: 2f64.powi(-frac) }
    }

    #[inline]
    pub fn quantize(&self, z: Complex64) -> FixedC {
        FixedC { re: (z.re * self.scale).round() as i128, im: (z.im * self.scale).round() as i128 }
    }

    #[inline]
    pub fn to_complex(self, v: FixedC) -> Complex64 {
        Complex64::new(v.re as f64 * self.unscale, v.im as f64 * self.unscale)
    }

    /// `v / n`, correctly placing the remainder, so `n` copies of a
    /// representable constant average back to that constant.
    pub fn mean(&self, v: FixedC, n: u64) -> Complex64 {
        let div = |x: i128| {
            let (q, r) = (x.div_euclid(n as i128), x.rem_euclid(n as i128));
            (q as f64 + r as f64 / n as f64) * self.unscale
        };
        Complex64::new(div(v.re), div(v.im))
    }
}

/// Neumaier compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_mean_is_exact() {
        let f = Fixed::for_sum(1.0, 1000);
        let c = Complex64::new(0.3, -0.7);
        let mut acc = FixedC::default();
        for _ in 0..1000 {
            acc += f.quantize(c);
        }
        assert_eq!(f.mean(acc, 1000), c);
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        let mut s = Neumaier::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }
}
