// Segmented Moebius and Liouville sieves, with an on-disk cache.

use nilorth::arith::{cached_segment, liouville_segment, mobius_segment, Sieve, SieveKind};

fn main() -> nilorth::Result<()> {
    let n = 10_000_000;
    let mu = mobius_segment(1, n + 1)?;
    let mertens: i64 = mu.values().iter().map(|&v| v as i64).sum();
    let squarefree = mu.values().iter().filter(|&&v| v != 0).count() as f64 / n as f64;
    println!("M(1e7) = {mertens}, squarefree density {squarefree:.6} (6/pi^2 = {:.6})", 6.0 / std::f64::consts::PI.powi(2));

    let lo = 1_000_000_000_000;
    let lam = liouville_segment(lo, lo + 20)?;
    println!("lambda on [1e12, 1e12 + 20): {:?}", lam.values());

    let dir = std::env::temp_dir().join("nilorth-example-cache");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("mu_1e6.bin");
    let seg = cached_segment(&Sieve::default(), &path, SieveKind::Mobius, 1, 1_000_001)?;
    let again = cached_segment(&Sieve::default(), &path, SieveKind::Mobius, 1, 1_000_001)?;
    println!("cache at {} round-trips: {}", path.display(), seg.values() == again.values());
    Ok(())
}
