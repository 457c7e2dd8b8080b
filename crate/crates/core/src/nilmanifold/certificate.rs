use serde::Serialize;

/// Largest number of integer vectors `q` an ergodicity search may visit.
pub const DEFAULT_SEARCH_CAP: u64 = 50_000_000;

/// Outcome of a bounded search for rational relations among `1, a_1, ..., a_d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Certificate {
    /// Exhaustive search up to the bound found no relation.
    Certified { bound: u64, tol: f64 },
    /// `(q_0, q_1, ..., q_d)` with `|q_0 + q . a| < tol`.
    Refuted(Vec<i64>),
    /// The search was not run to completion.
    Unknown(String),
}

/// Searches all nonzero `q` in `[-Q, Q]^d` with first nonzero entry
/// positive, by increasing max-norm, for `|q_0 + q . alpha| < tol` where
/// `q_0 = -round(q . alpha)`. Floats cannot decide irrationality; a
/// certificate only covers the search actually performed.
pub fn ergodicity_certificate(alpha: &[f64], bound: u64, tol: f64, cap: u64) -> Certificate {
    if bound == 0 {
        return Certificate::Unknown("denominator bound must be at least 1".into());
    }
    if alpha.is_empty() {
        return Certificate::Unknown("empty rotation vector".into());
    }
    if !alpha.iter().all(|a| a.is_finite()) || !tol.is_finite() {
        return Certificate::Unknown("non-finite input".into());
    }
    let d = alpha.len() as u32;
    let visits = (1..=bound as u128).try_fold(0u128, |acc, k| (2 * k + 1).checked_pow(d).map(|c| acc + c));
    if visits.is_none_or(|v| v > cap as u128) {
        return Certificate::Unknown(format!("search of [-{bound}, {bound}]^{d} exceeds cap {cap}"));
    }
    let mut q = vec![0i64; alpha.len()];
    for norm in 1..=bound as i64 {
        let side = (2 * norm + 1) as u128;
        for idx in 0..side.pow(d) {
            let mut rest = idx;
            for x in q.iter_mut().rev() {
                *x = (rest % side) as i64 - norm;
                rest /= side;
            }
            let on_shell = q.iter().any(|x| x.abs() == norm);
            let first = q.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            if !on_shell || first <= 0 {
                continue;
            }
            let dot: f64 = q.iter().zip(alpha).map(|(&k, &a)| k as f64 * a).sum();
            let q0 = -dot.round();
            if (q0 + dot).abs() < tol {
                let mut w = vec![q0 as i64];
                w.extend_from_slice(&q);
                return Certificate::Refuted(w);
            }
        }
    }
    Certificate::Certified { bound, tol }
}
