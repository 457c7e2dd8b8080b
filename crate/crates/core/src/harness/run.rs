use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use serde_json::json;

use super::config::{number, ExperimentConfig, ExperimentKind};
use super::record::{config_hash, version_string, CheckOutcome, LadderRow, RunRecord};
use crate::arith::MultiplicativeWeight;
use crate::dynamics::{
    orbit_series, weyl_system, AffineSystem, CombinedOrbit, Orbit, SignalSeries, SubsampledOrbit,
};
use crate::nilmanifold::{ergodicity_certificate, GroupPoint, SystemDescription};
use crate::scalar::{Rational, Scalar};
use crate::stats::{
    arithmetic_progression_avg, joining_support_probe, kbsz_bilinear, multicorrelation_series, short_interval_avg,
    Progression, StatRecord,
};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Overrides the config seed.
    pub seed: Option<u64>,
    /// Evaluate the configured assertions.
    pub assert: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { threads: None, seed: None, assert: true }
    }
}

#[derive(Default)]
struct Outcome {
    records: Vec<StatRecord>,
    ladders: Vec<LadderRow>,
    drifts: Vec<(String, f64)>,
    moduli: Vec<(String, f64)>,
}

pub fn run(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunRecord> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let seed = opts.seed.unwrap_or(config.seed);
    let fixture = if opts.assert { load_fixture(config)? } else { None };
    let t0 = Instant::now();
    let mut out = pool.install(|| execute(config, seed))?;
    let wall = t0.elapsed().as_secs_f64();
    for r in &mut out.records {
        r.seed = seed;
        r.tolerances = serde_json::to_value(&config.tolerances).unwrap_or_default();
    }
    let checks = if opts.assert { check(config, fixture.as_ref(), &out) } else { Vec::new() };
    let passed = checks.iter().all(|c| c.passed);
    Ok(RunRecord {
        experiment: config.experiment.name().into(),
        config_hash: config_hash(&config.source),
        version: version_string(),
        wall_time_s: wall,
        threads: pool.current_num_threads(),
        seed,
        config: config.source.clone(),
        records: out.records,
        ladders: out.ladders,
        checks,
        passed,
    })
}

fn system_label(d: &SystemDescription) -> String {
    let alg = d.algebra.clone().unwrap_or_else(|| d.algebra_file.as_ref().map_or("?".into(), |p| p.display().to_string()));
    let mut s = format!("{alg} u={:?}", d.u);
    if !d.derivation.is_empty() {
        s.push_str(&format!(" B={:?}", d.derivation));
    }
    s
}

fn load_system(config: &ExperimentConfig) -> Result<(AffineSystem, GroupPoint<Rational>, String)> {
    let d = config.system.as_ref().ok_or_else(|| Error::Config("missing [system]".into()))?;
    let (sys, x) = AffineSystem::from_description(d)?;
    Ok((sys, x, system_label(d)))
}

/// Ergodicity evidence for nil-translations, from the rotation vector.
fn ergodicity_record(sys: &AffineSystem, label: &str) -> Option<StatRecord> {
    if !sys.is_translation() {
        return None;
    }
    let nm = sys.nilmanifold();
    let alpha: Vec<f64> = nm.rotation_vector(sys.u()).iter().map(Scalar::as_f64).collect();
    let (bound, tol) = (20, 1e-9);
    let cert = ergodicity_certificate(&alpha, bound, tol, crate::nilmanifold::DEFAULT_SEARCH_CAP);
    Some(StatRecord::new("ergodicity_certificate", label, 0, cert).params(json!({ "alpha": alpha, "bound": bound, "tol": tol })))
}

fn ladder(
    out: &mut Outcome,
    name: String,
    system: &str,
    a: &dyn SignalSeries,
    u: &dyn SignalSeries,
    rungs: &[(u64, u64)],
) -> Result<()> {
    for &(h, m) in rungs {
        let rep = short_interval_avg(a, u, m, h)?;
        out.ladders.push(LadderRow { statistic: name.clone(), m, h, value: rep.value });
        out.records.push(
            StatRecord::new("short_interval_avg", system, m, &rep)
                .params(json!({ "series": a.label(), "weight": u.label(), "M": m, "H": h, "ladder": name })),
        );
    }
    Ok(())
}

fn execute(config: &ExperimentConfig, seed: u64) -> Result<Outcome> {
    use ExperimentKind::*;
    let mut out = Outcome::default();
    let s = &config.statistic;
    let tag = config.experiment.short();
    let weight = MultiplicativeWeight::from(&config.weight_spec());
    match config.experiment {
        CorollaryCDecay => {
            let (sys, x, label) = load_system(config)?;
            out.records.extend(ergodicity_record(&sys, &label));
            let rungs = config.ladder()?;
            for f in &config.observables {
                let a = orbit_series(&sys, &x, f.clone())?;
                ladder(&mut out, format!("{tag}/{}", f.label()), &label, &a, &weight, &rungs)?;
            }
        }
        PropDPolynomial => {
            let coeffs: Vec<f64> = s
                .polynomial
                .iter()
                .flatten()
                .map(|c| number(c, "statistic.polynomial"))
                .collect::<Result<_>>()?;
            let gamma = s.gamma.as_deref().map_or(Ok(1.0), |g| number(g, "statistic.gamma"))?;
            let rho = s.rho.as_deref().map_or(Ok(0.0), |r| number(r, "statistic.rho"))?;
            let w = weyl_system(&coeffs)?;
            let label = format!("weyl P={:?}", s.polynomial.as_ref().expect("validated"));
            let orbit = Orbit::new(w.system(), w.start())?;
            let a = SubsampledOrbit::new(orbit, w.observable(), gamma, rho)?;
            let name = format!(
                "{tag}/P={:?},gamma={},rho={}",
                s.polynomial.as_ref().expect("validated"),
                s.gamma.as_deref().unwrap_or("1"),
                s.rho.as_deref().unwrap_or("0")
            );
            ladder(&mut out, name, &label, &a, &weight, &config.ladder()?)?;
        }
        TheoremENilsequence => {
            let (sys, x, label) = load_system(config)?;
            out.records.extend(ergodicity_record(&sys, &label));
            let coeffs = s.coefficients.clone().unwrap_or_else(|| vec![1.0; config.observables.len()]);
            let terms: Vec<_> = coeffs.into_iter().zip(config.observables.iter().cloned()).collect();
            let a = CombinedOrbit::new(Orbit::new(&sys, &x)?, terms)?;
            let name = format!("{tag}/{}", a.label());
            ladder(&mut out, name, &label, &a, &weight, &config.ladder()?)?;
        }
        CorollaryFMulticorrelation => {
            let alpha = number(&s.alpha.as_ref().expect("validated")[0], "statistic.alpha")?;
            let m = s.characters.clone().expect("validated");
            let p = s.polynomials.clone().expect("validated");
            let d = multicorrelation_series(alpha, &m, &p)?;
            let label = format!("circle rotation alpha={alpha}");
            ladder(&mut out, format!("{tag}/m={m:?},p={p:?}"), &label, &d, &weight, &config.ladder()?)?;
        }
        CorollaryHProgressions => {
            let (sys, x, label) = load_system(config)?;
            out.records.extend(ergodicity_record(&sys, &label));
            let f = config.observables[0].clone();
            let a = orbit_series(&sys, &x, f.clone())?;
            let n = s.n.expect("validated");
            let rungs = config.ladder()?;
            for &[k, j] in s.progressions.as_ref().expect("validated") {
                let v = arithmetic_progression_avg(&a, &weight, k, j, n)?;
                let key = format!("{tag}/avg k={k} j={j}");
                out.moduli.push((key.clone(), v.norm()));
                out.records.push(
                    StatRecord::new("arithmetic_progression_avg", &label, n, [v.re, v.im])
                        .params(json!({ "k": k, "j": j, "observable": f.label(), "weight": weight.label(), "modulus": v.norm() })),
                );
                let b = Progression::new(&weight, k, j)?;
                ladder(&mut out, format!("{tag}/{} k={k} j={j}", f.label()), &label, &a, &b, &rungs)?;
            }
        }
        JoiningProbe => {
            let alpha: Vec<f64> = s
                .alpha
                .iter()
                .flatten()
                .map(|a| number(a, "statistic.alpha"))
                .collect::<Result<_>>()?;
            let (n, r_max) = (s.n.expect("validated"), s.r_max.expect("validated"));
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let d = alpha.len();
            for r in 1..=r_max {
                for q in 1..=r_max {
                    if gcd(r, q) != 1 {
                        continue;
                    }
                    let t1: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
                    let t2: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
                    let p = joining_support_probe(&alpha, r, q, (&t1, &t2), n)?;
                    out.drifts.push((format!("{tag}/drift r={r} s={q}"), p.drift));
                    out.drifts.push((format!("{tag}/intertwiner r={r} s={q}"), p.intertwiner_drift));
                    out.records.push(StatRecord::new("joining_support_probe", format!("torus rotation {alpha:?}"), n, &p));
                }
            }
        }
        KbszSweep => {
            let (sys, x, label) = load_system(config)?;
            out.records.extend(ergodicity_record(&sys, &label));
            let f = config.observables[0].clone();
            let a = orbit_series(&sys, &x, f.clone())?;
            let n = s.n.expect("validated");
            let primes: Vec<u64> = (2..=s.p_max.expect("validated")).filter(|&p| crate::stats::is_prime(p)).collect();
            for (i, &p) in primes.iter().enumerate() {
                for &q in &primes[i + 1..] {
                    let rep = kbsz_bilinear(&a, p, q, n)?;
                    out.moduli.push((format!("{tag}/p={p} q={q}"), rep.modulus));
                    out.records.push(StatRecord::new("kbsz_bilinear", &label, n, &rep).params(json!({ "observable": f.label() })));
                }
            }
        }
    }
    Ok(out)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Frozen regression values for one experiment.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FixtureEntry {
    final_below: Option<f64>,
    max_modulus: Option<f64>,
    #[serde(default)]
    ladder: BTreeMap<String, Vec<f64>>,
    regression_tol: Option<f64>,
}

fn load_fixture(config: &ExperimentConfig) -> Result<Option<FixtureEntry>> {
    let Some(p) = &config.assertions.fixture else {
        return Ok(None);
    };
    let path = config.resolve(p);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Config(format!("fixture {}: {e}", path.display())))?;
    let mut table: BTreeMap<String, toml::Value> =
        toml::from_str(&text).map_err(|e| Error::Config(format!("fixture {}: {e}", path.display())))?;
    match table.remove(config.experiment.name()) {
        Some(v) => v.try_into().map(Some).map_err(|e| Error::Config(format!("fixture entry: {e}"))),
        None => Ok(None),
    }
}

fn groups(rows: &[LadderRow]) -> Vec<(String, Vec<&LadderRow>)> {
    let mut out: Vec<(String, Vec<&LadderRow>)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|(k, _)| *k == r.statistic) {
            Some((_, v)) => v.push(r),
            None => out.push((r.statistic.clone(), vec![r])),
        }
    }
    out
}

fn check(config: &ExperimentConfig, fixture: Option<&FixtureEntry>, out: &Outcome) -> Vec<CheckOutcome> {
    let a = &config.assertions;
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool, detail: String| checks.push(CheckOutcome { name, passed, detail });
    let final_below = a.final_below.or(fixture.and_then(|f| f.final_below));
    for (name, rows) in groups(&out.ladders) {
        let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
        if a.strictly_decreasing {
            let ok = values.windows(2).all(|w| w[1] < w[0]);
            push(format!("{name}: strictly decreasing"), ok, format!("{values:?}"));
        }
        if let Some(t) = final_below {
            let last = *values.last().expect("non-empty group");
            push(format!("{name}: final < {t}"), last < t, format!("final value {last}"));
        }
        if let Some([target, tol]) = a.value_near {
            let worst = values.iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
            push(format!("{name}: within {tol:e} of {target}"), worst <= tol, format!("max deviation {worst:e}"));
        }
        if let Some(frozen) = fixture.and_then(|f| f.ladder.get(&name)) {
            let tol = fixture.and_then(|f| f.regression_tol).unwrap_or(1e-9);
            let ok = frozen.len() == values.len()
                && frozen.iter().zip(&values).all(|(f, v)| (f - v).abs() <= tol * f.abs().max(1e-300));
            push(format!("{name}: matches frozen ladder (rel {tol:e})"), ok, format!("frozen {frozen:?}, got {values:?}"));
        }
    }
    if let Some(t) = a.max_drift {
        let worst = out.drifts.iter().map(|d| d.1).fold(0.0, f64::max);
        push(format!("max drift < {t:e}"), !out.drifts.is_empty() && worst < t, format!("worst {worst:e} over {} probes", out.drifts.len()));
    }
    if let Some(t) = a.max_modulus.or(fixture.and_then(|f| f.max_modulus)) {
        let worst = out.moduli.iter().fold((String::new(), 0.0f64), |acc, m| if m.1 > acc.1 { m.clone() } else { acc });
        push(format!("max modulus < {t}"), !out.moduli.is_empty() && worst.1 < t, format!("worst {} at {}", worst.1, worst.0));
    }
    checks
}

/// Exit status for a finished run or an error: `0` pass, `1` failed
/// assertions, `2` schema or input errors, `3` resource caps.
pub fn exit_code(result: &Result<RunRecord>) -> i32 {
    match result {
        Ok(r) if r.passed => 0,
        Ok(_) => 1,
        Err(Error::ResourceCap(_)) => 3,
        Err(_) => 2,
    }
}

