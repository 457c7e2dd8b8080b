use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exclusive upper limit on sieved integers.
pub const MAX_HI: u64 = 1 << 50;

/// Default cap on a single segment, in values (one byte each).
pub const DEFAULT_MAX_LEN: u64 = 1 << 31;

/// Values per parallel work unit.
const BLOCK: usize = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SieveKind {
    Mobius,
    Liouville,
}

/// `mu` or `lambda` on `[lo, hi)` as signed bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveSegment {
    kind: SieveKind,
    lo: u64,
    values: Vec<i8>,
}

impl SieveSegment {
    pub(crate) fn from_parts(kind: SieveKind, lo: u64, values: Vec<i8>) -> Self {
        SieveSegment { kind, lo, values }
    }

    pub fn kind(&self) -> SieveKind {
        self.kind
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Value at `n`; panics outside `[lo, hi)`.
    pub fn get(&self, n: u64) -> i8 {
        assert!(n >= self.lo && n < self.hi(), "{n} outside [{}, {})", self.lo, self.hi());
        self.values[(n - self.lo) as usize]
    }
}

/// Segmented sieve with a configurable length cap.
#[derive(Debug, Clone, Copy)]
pub struct Sieve {
    max_len: u64,
}

impl Default for Sieve {
    fn default() -> Self {
        Sieve { max_len: DEFAULT_MAX_LEN }
    }
}

impl Sieve {
    pub fn with_cap(max_len: u64) -> Self {
        Sieve { max_len }
    }

    pub fn max_len(&self) -> u64 {
        self.max_len
    }

    pub fn check_range(&self, lo: u64, hi: u64) -> Result<()> {
        if lo < 1 || lo >= hi || hi > MAX_HI {
            return Err(Error::InvalidArgument(format!("sieve range [{lo}, {hi}) must satisfy 1 <= lo < hi <= 2^50")));
        }
        if hi - lo > self.max_len {
            return Err(Error::ResourceCap(format!("segment of {} values exceeds the cap of {}", hi - lo, self.max_len)));
        }
        Ok(())
    }

    pub fn segment(&self, kind: SieveKind, lo: u64, hi: u64) -> Result<SieveSegment> {
        self.check_range(lo, hi)?;
        let mut values = vec![0i8; (hi - lo) as usize];
        let primes = base_primes(isqrt(hi - 1));
        values.par_chunks_mut(BLOCK).enumerate().for_each(|(b, chunk)| {
            sieve_into(kind, lo + (b * BLOCK) as u64, chunk, &primes);
        });
        Ok(SieveSegment { kind, lo, values })
    }
}

pub fn mobius_segment(lo: u64, hi: u64) -> Result<SieveSegment> {
    Sieve::default().segment(SieveKind::Mobius, lo, hi)
}

pub fn liouville_segment(lo: u64, hi: u64) -> Result<SieveSegment> {
    Sieve::default().segment(SieveKind::Liouville, lo, hi)
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

static PRIMES: Mutex<Option<(u64, Arc<Vec<u64>>)>> = Mutex::new(None);

/// Primes `<= limit`, cached process-wide for the largest limit seen.
pub fn base_primes(limit: u64) -> Arc<Vec<u64>> {
    let mut guard = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((have, primes)) = guard.as_ref() {
        if *have >= limit {
            let end = primes.partition_point(|&p| p <= limit);
            return if end == primes.len() { primes.clone() } else { Arc::new(primes[..end].to_vec()) };
        }
    }
    let limit_run = limit.max(1 << 12);
    let primes = Arc::new(eratosthenes(limit_run));
    *guard = Some((limit_run, primes.clone()));
    drop(guard);
    base_primes(limit)
}

fn eratosthenes(limit: u64) -> Vec<u64> {
    let n = limit as usize + 1;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Fills `out[i]` with the value at `lo + i`. `primes` must cover
/// `sqrt(lo + out.len() - 1)`.
///
/// No divisions per entry: `acc[i]` collects the product of the sieved
/// prime factors (with multiplicity for `lambda`, distinct for `mu`). When it
/// falls short of `n` the cofactor is a single prime above the sieving bound.
pub(crate) fn sieve_into(kind: SieveKind, lo: u64, out: &mut [i8], primes: &[u64]) {
    let len = out.len() as u64;
    if len == 0 {
        return;
    }
    let hi = lo + len;
    let bound = isqrt(hi - 1);
    out.fill(1);
    let mut acc = vec![1u64; out.len()];
    for &p in primes.iter().take_while(|&&p| p <= bound) {
        let mut q = p;
        let mut first = true;
        loop {
            let start = lo.div_ceil(q) * q;
            if first || kind == SieveKind::Liouville {
                let mut i = start - lo;
                while i < len {
                    acc[i as usize] *= p;
                    out[i as usize] = -out[i as usize];
                    i += q;
                }
            } else {
                let mut i = start - lo;
                while i < len {
                    out[i as usize] = 0;
                    i += q;
                }
                break;
            }
            first = false;
            match q.checked_mul(p) {
                Some(next) if next < hi => q = next,
                _ => break,
            }
        }
    }
    for (i, (v, a)) in out.iter_mut().zip(&acc).enumerate() {
        if *v != 0 && *a != lo + i as u64 {
            *v = -*v;
        }
    }
}

/// `mu(n)` by trial division.
pub fn trial_mobius(mut n: u64) -> i8 {
    assert!(n >= 1);
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `lambda(n) = (-1)^Omega(n)` by trial division.
pub fn trial_liouville(mut n: u64) -> i8 {
    assert!(n >= 1);
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let mu = mobius_segment(1, 31).unwrap();
        assert_eq!((mu.get(1), mu.get(2), mu.get(4), mu.get(30)), (1, -1, 0, -1));
        let la = liouville_segment(1, 31).unwrap();
        assert_eq!((la.get(1), la.get(2), la.get(4), la.get(12)), (1, -1, 1, -1));
        for n in 1..31 {
            assert_eq!(mu.get(n), trial_mobius(n), "mu({n})");
            assert_eq!(la.get(n), trial_liouville(n), "lambda({n})");
        }
    }

    #[test]
    fn range_errors() {
        assert!(matches!(mobius_segment(0, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(mobius_segment(10, 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(Sieve::with_cap(100).segment(SieveKind::Mobius, 1, 1000), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn prime_powers_near_bound() {
        // 2^k and p^2 straddling the segment edge exercise the power loop
        let lo = (1u64 << 20) - 50;
        let s = liouville_segment(lo, lo + 100).unwrap();
        let m = mobius_segment(lo, lo + 100).unwrap();
        for n in lo..lo + 100 {
            assert_eq!(s.get(n), trial_liouville(n));
            assert_eq!(m.get(n), trial_mobius(n));
        }
    }
}
