use nilorth::arith::{
    cached_segment, liouville_segment, mobius_segment, read_segment, weight_eval, write_segment,
    MultiplicativeWeight, Sieve, SieveKind,
};
use nilorth::dynamics::SignalSeries;
use nilorth::Error;
use num::complex::Complex64;

/// Prime factorization exponents by trial division against a fixed prime list.
fn exponents(mut n: u64, primes: &[u64]) -> Vec<u32> {
    let mut out = Vec::new();
    for &p in primes {
        if p * p > n {
            break;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push(e);
        }
    }
    if n > 1 {
        out.push(1);
    }
    out
}

fn mu(n: u64, primes: &[u64]) -> i8 {
    let e = exponents(n, primes);
    if e.iter().any(|&x| x > 1) {
        0
    } else if e.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn lambda(n: u64, primes: &[u64]) -> i8 {
    if exponents(n, primes).iter().sum::<u32>() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

#[test]
fn sieve_matches_trial_division_up_to_a_million() {
    let primes = primes_up_to(1000);
    let m = mobius_segment(1, 1_000_001).unwrap();
    let l = liouville_segment(1, 1_000_001).unwrap();
    for n in 1..=1_000_000u64 {
        assert_eq!(m.get(n), mu(n, &primes), "mu({n})");
        assert_eq!(l.get(n), lambda(n, &primes), "lambda({n})");
    }
}

#[test]
fn sieve_matches_trial_division_near_a_billion() {
    let (lo, hi) = (1_000_000_000u64, 1_000_100_000u64);
    let primes = primes_up_to(31_623);
    let m = mobius_segment(lo, hi).unwrap();
    let l = liouville_segment(lo, hi).unwrap();
    assert_eq!((m.lo(), m.hi(), m.len()), (lo, hi, 100_000));
    for n in lo..hi {
        assert_eq!(m.get(n), mu(n, &primes), "mu({n})");
        assert_eq!(l.get(n), lambda(n, &primes), "lambda({n})");
    }
}

#[test]
fn squarefree_density_and_mertens() {
    let n = 1_000_000u64;
    let m = mobius_segment(1, n + 1).unwrap();
    let squarefree = m.values().iter().filter(|&&v| v != 0).count() as f64 / n as f64;
    let target = 6.0 / std::f64::consts::PI.powi(2);
    assert!((squarefree - target).abs() < 1e-3, "{squarefree}");
    let mertens: i64 = m.values().iter().map(|&v| v as i64).sum();
    assert!((mertens.abs() as f64) / (n as f64) < 0.01, "M(N) = {mertens}");
    // M(10^6) = 212 is tabulated.
    assert_eq!(mertens, 212);
}

#[test]
fn mobius_inverts_the_constant_function() {
    // sum_{d | n} mu(d) = [n = 1] and lambda(n) = sum_{d^2 | n} mu(n / d^2)
    let n = 20_000u64;
    let m = mobius_segment(1, n + 1).unwrap();
    let l = liouville_segment(1, n + 1).unwrap();
    for k in 1..=n {
        let s: i64 = (1..=k).filter(|d| k % d == 0).map(|d| m.get(d) as i64).sum();
        assert_eq!(s, (k == 1) as i64);
        let t: i64 = (1..).take_while(|d| d * d <= k).filter(|d| k % (d * d) == 0).map(|d| m.get(k / (d * d)) as i64).sum();
        assert_eq!(t, l.get(k) as i64);
    }
}

#[test]
fn segments_concatenate() {
    for kind in [SieveKind::Mobius, SieveKind::Liouville] {
        let s = Sieve::default();
        let whole = s.segment(kind, 999_000, 1_600_000).unwrap();
        let mut joined = Vec::new();
        for (a, b) in [(999_000, 1_000_001), (1_000_001, 1_262_144), (1_262_144, 1_600_000)] {
            joined.extend_from_slice(s.segment(kind, a, b).unwrap().values());
        }
        assert_eq!(joined, whole.values());
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let serial = pool.install(|| s.segment(kind, 999_000, 1_600_000).unwrap());
        assert_eq!(serial.values(), whole.values());
    }
}

#[test]
fn range_and_cap_errors() {
    assert!(matches!(mobius_segment(0, 10), Err(Error::InvalidArgument(_))));
    assert!(matches!(mobius_segment(10, 10), Err(Error::InvalidArgument(_))));
    assert!(matches!(mobius_segment(1, (1 << 50) + 1), Err(Error::InvalidArgument(_))));
    let small = Sieve::with_cap(1000);
    assert!(matches!(small.segment(SieveKind::Mobius, 1, 1002), Err(Error::ResourceCap(_))));
    assert!(small.segment(SieveKind::Mobius, 1, 1001).is_ok());
}

#[test]
fn cache_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lambda.bin");
    let s = Sieve::default();
    let first = cached_segment(&s, &path, SieveKind::Liouville, 5000, 90_000).unwrap();
    let again = cached_segment(&s, &path, SieveKind::Liouville, 5000, 90_000).unwrap();
    assert_eq!(first, again);
    let mut buf = Vec::new();
    write_segment(&mut buf, &first).unwrap();
    assert_eq!(read_segment(buf.as_slice()).unwrap(), first);
    // a different request rewrites the file
    let other = cached_segment(&s, &path, SieveKind::Mobius, 5000, 90_000).unwrap();
    assert_eq!(other.kind(), SieveKind::Mobius);
    assert!(read_segment(&b"NSIV"[..]).is_err());
}

#[test]
fn weights_agree_with_segments() {
    let (lo, hi) = (1u64, 50_001u64);
    let m = mobius_segment(lo, hi).unwrap();
    let l = liouville_segment(lo, hi).unwrap();
    let wm = weight_eval(&MultiplicativeWeight::Mobius, lo, hi).unwrap();
    let wl = weight_eval(&MultiplicativeWeight::Liouville, lo, hi).unwrap();
    for n in lo..hi {
        let i = (n - lo) as usize;
        assert_eq!(wm[i], Complex64::new(m.get(n) as f64, 0.0));
        assert_eq!(wl[i], Complex64::new(l.get(n) as f64, 0.0));
    }
    // the series view is offset so that index n holds u(n)
    let series = MultiplicativeWeight::Mobius.values(0, 10);
    assert_eq!(series[0], Complex64::new(0.0, 0.0));
    assert_eq!(series[6], Complex64::new(1.0, 0.0));
    assert_eq!(series[4], Complex64::new(0.0, 0.0));
    // completely multiplicative with lambda's prime values is lambda
    let cm = MultiplicativeWeight::completely_multiplicative("minus-one", |_| Complex64::new(-1.0, 0.0));
    assert_eq!(weight_eval(&cm, lo, hi).unwrap(), wl);
    // n^{i tau}
    let tau = 0.7;
    let a = weight_eval(&MultiplicativeWeight::Archimedean { tau }, 1, 200).unwrap();
    for (i, z) in a.iter().enumerate() {
        let n = (i + 1) as f64;
        assert!((z - Complex64::cis(tau * n.ln())).norm() < 1e-12);
    }
}
