//! One pass/fail line per acceptance criterion. Runs as a plain binary
//! (`harness = false`) so the lines print in order without `--nocapture`.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use common::{random_vector, rng, small_rational};
use nilorth::arith::{liouville_segment, mobius_segment, MultiplicativeWeight};
use nilorth::dynamics::{orbit_series, suspension_flow_sample, weyl_system, AffineSystem, Observable, SignalSeries};
use nilorth::harness::{run, ExperimentConfig, RunOptions};
use nilorth::lie::{kfold_product, library, minimal_generators_check, vk_span, Derivation, LieAlgebra, Matrix};
use nilorth::nilmanifold::{build_suspension, GroupPoint, Nilmanifold};
use nilorth::scalar::{circle_dist, dyadic, int, rational, Scalar};
use nilorth::skewprod::{
    akrs_lattice, cocycle_sum, selector_theta, suspension_flow_over_map, AbelianGroup, Cocycle, GroupPair, Map, Torus,
};
use nilorth::stats::{joining_support_probe, short_interval_avg, stabilizer_translation_test, StabilizerSetup};
use nilorth::{Coords, Rational};
use num::Zero;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn add(a: &[Rational], b: &[Rational]) -> Coords<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn algebra_exactness() -> Outcome {
    let mut r = rng(101);
    let algebras: Vec<LieAlgebra> = library::NAMES.iter().map(|n| library::by_name(n).unwrap()).collect();
    for alg in &algebras {
        let d = alg.dim();
        for _ in 0..1000 {
            let (x, y, z) = (random_vector(&mut r, d), random_vector(&mut r, d), random_vector(&mut r, d));
            let br = |a: &[Rational], b: &[Rational]| alg.bracket(a, b).unwrap();
            ensure!(add(&br(&x, &y), &br(&y, &x)).iter().all(Zero::is_zero), "antisymmetry fails");
            let jac = add(&add(&br(&x, &br(&y, &z)), &br(&y, &br(&z, &x))), &br(&z, &br(&x, &y)));
            ensure!(jac.iter().all(Zero::is_zero), "Jacobi fails");
            let left = alg.bch(&alg.bch(&x, &y).unwrap(), &z).unwrap();
            let right = alg.bch(&x, &alg.bch(&y, &z).unwrap()).unwrap();
            ensure!(left == right, "BCH not associative");
            ensure!(alg.second_to_first(&alg.first_to_second(&x).unwrap()).unwrap() == x, "coordinate round trip fails");
        }
    }
    let derivations = [
        (library::heisenberg(), Derivation::sparse(3, &[(0, 1, int(1)), (2, 0, rational(1, 2))]).unwrap()),
        (library::free_class3(), Derivation::sparse(5, &[(0, 1, int(1)), (3, 4, int(1))]).unwrap()),
        (library::abelian(3), Derivation::sparse(3, &[(1, 0, int(1)), (2, 1, int(1))]).unwrap()),
    ];
    for (alg, b) in &derivations {
        let a = b.exp(&int(1));
        for _ in 0..200 {
            let (x, y) = (random_vector(&mut r, alg.dim()), random_vector(&mut r, alg.dim()));
            let lhs = a.apply(&alg.bch(&x, &y).unwrap());
            ensure!(lhs == alg.bch(&a.apply(&x), &a.apply(&y)).unwrap(), "exp B is not an automorphism");
        }
    }
    Ok(format!("{} algebras x 1000 triples, zero residual", algebras.len()))
}

fn appendix_lemmas() -> Outcome {
    let mut r = rng(102);
    for alg in [library::heisenberg(), library::free_class3()] {
        let s: Vec<Coords<Rational>> = (0..alg.abelian_rank()).map(|i| alg.basis_vector(i)).collect();
        let derived = alg.series_term(2);
        let perturbed: Vec<Coords<Rational>> = s
            .iter()
            .map(|g| derived.basis().iter().fold(g.clone(), |acc, v| add(&acc, &v.iter().map(|x| x * small_rational(&mut r)).collect::<Vec<_>>())))
            .collect();
        ensure!(minimal_generators_check(&s, &alg) && minimal_generators_check(&perturbed, &alg), "minimal generators rejected");
        let c = alg.class();
        for set in [&s, &perturbed] {
            let (span, equal) = vk_span(set, c, &alg).unwrap();
            ensure!(equal && span == alg.series_term(c), "V_{c}(S) != g^({c})");
            for k in 1..c {
                let (span, _) = vk_span(set, k, &alg).unwrap();
                ensure!(span.sum(&alg.series_term(k + 1)) == alg.series_term(k), "V_{k}(S) + g^({}) != g^({k})", k + 1);
            }
        }
        for _ in 0..200 {
            let idx: Vec<usize> = (0..c).map(|_| r.gen_range(0..s.len())).collect();
            ensure!(kfold_product(&idx, &s, &alg).unwrap() == kfold_product(&idx, &perturbed, &alg).unwrap(), "congruence fails at {idx:?}");
        }
    }
    Ok("heisenberg, free3".into())
}

fn lattice_dynamics() -> Outcome {
    let mut r = rng(103);
    let h = Nilmanifold::new(library::heisenberg()).unwrap();
    let f = Nilmanifold::new(library::free_class3_lattice()).unwrap();
    let u3 = GroupPoint::from_first([rational(7, 5), rational(-2, 3), rational(1, 7)]);
    let u5 = GroupPoint::from_first([rational(3, 4), rational(5, 9), rational(1, 3), int(0), rational(-1, 2)]);
    let mut shift = Matrix::identity(3);
    shift.set(1, 0, int(1));
    shift.set(2, 1, int(1));
    let systems = [
        AffineSystem::translation(h.clone(), u3.clone()).unwrap(),
        AffineSystem::new(h, u3.clone(), Derivation::sparse(3, &[(0, 1, int(1)), (2, 1, rational(1, 2))]).unwrap()).unwrap(),
        AffineSystem::translation(f, u5).unwrap(),
        AffineSystem::new(Nilmanifold::new(library::abelian(3)).unwrap(), u3, Derivation::log_of_unipotent(&shift).unwrap()).unwrap(),
    ];
    let mut worst_float = 0.0f64;
    for sys in &systems {
        let nm = sys.nilmanifold();
        let a = sys.automorphism().matrix();
        let d1 = nm.torus_dim();
        let susp = build_suspension(nm, sys.automorphism().log().clone()).unwrap();
        let v: Vec<Rational> = sys.u().first().to_vec();
        let vf: Vec<f64> = v.iter().map(Scalar::as_f64).collect();
        for _ in 0..100 {
            let x = GroupPoint::from_first(random_vector(&mut r, nm.dim()));
            let red = nm.reduce(&x);
            ensure!(nm.reduce(&red) == red, "reduce not idempotent");
            let t: Vec<Rational> = (0..nm.dim()).map(|_| int(r.gen_range(-3..=3))).collect();
            let gamma = nm.from_second(&t).unwrap();
            ensure!(nm.reduce(&nm.mul(&x, &gamma)) == red, "reduce not right-coset invariant");
            let xa = nm.abelianization(&x);
            let ua = nm.abelianization(sys.u());
            let want: Vec<Rational> =
                (0..d1).map(|i| Scalar::frac(&(0..d1).fold(ua[i].clone(), |acc, j| acc + a.get(i, j) * &xa[j]))).collect();
            ensure!(nm.abelianization(&sys.step(&x)).to_vec() == want, "abelianization not equivariant");
            let y = suspension_flow_sample(&susp, &vf, &susp.lift(&red.to_f64()), &1.0).unwrap();
            worst_float = worst_float.max(circle_dist(susp.fiber(&y)));
            let got = nm.second(&susp.to_base(&y));
            for (g, w) in got.iter().zip(nm.second(&sys.step(&red)).iter()) {
                worst_float = worst_float.max(circle_dist(g - w.as_f64()));
            }
            let ye = suspension_flow_sample(&susp, &v, &susp.lift(&red), &int(1)).unwrap();
            ensure!(susp.fiber(&ye).is_zero() && susp.to_base(&ye) == sys.step(&red), "exact suspension time-1 mismatch");
        }
    }
    ensure!(worst_float < 1e-10, "suspension float error {worst_float:e}");
    let mut worst_weyl = 0.0f64;
    for d in 1..=4 {
        let coeffs: Vec<f64> = (0..=d).map(|_| r.gen_range(-2.0..2.0)).collect();
        let w = weyl_system(&coeffs).unwrap();
        let vals = orbit_series(w.system(), w.start(), w.observable()).unwrap().values(0, 1001);
        for (n, z) in vals.iter().enumerate() {
            worst_weyl = worst_weyl.max((w.reference(n as i64) - z).norm());
        }
    }
    ensure!(worst_weyl < 1e-8, "Weyl error {worst_weyl:e}");
    Ok(format!("suspension float err {worst_float:.1e}, Weyl err {worst_weyl:.1e}"))
}

fn trial_division(mut n: u64, primes: &[u64]) -> (bool, u32) {
    let (mut squarefree, mut omega) = (true, 0);
    for &p in primes {
        if p * p > n {
            break;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        squarefree &= e < 2;
        omega += e;
    }
    (squarefree, omega + (n > 1) as u32)
}

fn sieve_oracle() -> Outcome {
    let primes: Vec<u64> = (2..31_623u64).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect();
    for (lo, hi) in [(1u64, 1_000_001u64), (1_000_000_000, 1_000_100_000)] {
        let m = mobius_segment(lo, hi).unwrap();
        let l = liouville_segment(lo, hi).unwrap();
        for n in lo..hi {
            let (sf, omega) = trial_division(n, &primes);
            let sign = if omega % 2 == 0 { 1 } else { -1 };
            ensure!(m.get(n) == if sf { sign } else { 0 }, "mu({n}) mismatch");
            ensure!(l.get(n) == sign, "lambda({n}) mismatch");
        }
    }
    let m = mobius_segment(1, 1_000_001).unwrap();
    let density = m.values().iter().filter(|&&v| v != 0).count() as f64 / 1e6;
    let target = 6.0 / std::f64::consts::PI.powi(2);
    ensure!((density - target).abs() < 1e-3, "squarefree density {density}");
    Ok(format!("exact on both ranges, squarefree density {density:.6}"))
}

fn joining_invariant() -> Outcome {
    let alpha = [2f64.sqrt() - 1.0, 3f64.sqrt() - 1.0];
    let mut worst = 0.0f64;
    for r in 1..=10i64 {
        for s in 1..=10i64 {
            if num::integer::gcd(r, s) != 1 {
                continue;
            }
            let p = joining_support_probe(&alpha, r, s, (&[0.1, 0.7], &[0.4, 0.25]), 10_000).map_err(|e| e.to_string())?;
            worst = worst.max(p.drift);
        }
    }
    ensure!(worst < 1e-9, "drift {worst:e}");
    Ok(format!("max drift {worst:.1e}"))
}

fn stabilizer() -> Outcome {
    let text = std::fs::read_to_string(manifest().join("fixtures/regression.toml")).map_err(|e| e.to_string())?;
    let fixture: toml::Table = toml::from_str(&text).map_err(|e| e.to_string())?;
    let below = fixture["stabilizer"]["correlation_below"].as_float().ok_or("missing correlation_below")?;
    let nm = Nilmanifold::new(library::heisenberg()).unwrap();
    let u = nm.from_second(&[dyadic(2f64.sqrt()).unwrap(), dyadic(3f64.sqrt()).unwrap(), int(0)]).unwrap();
    let system = AffineSystem::translation(nm.clone(), u).unwrap();
    let x = nm.from_second(&[rational(1, 3), rational(1, 5), rational(1, 7)]).unwrap();
    let y = nm.from_second(&[rational(2, 7), rational(5, 11), rational(3, 13)]).unwrap();
    let setup = StabilizerSetup {
        system,
        x,
        y,
        f1: Observable::central(1),
        f2: Observable::central(1),
        r: 2,
        s: 3,
        k: 2,
        c: rational(1, 10),
    };
    let rep = stabilizer_translation_test(&setup, 100_000).map_err(|e| e.to_string())?;
    ensure!(rep.ratio_error < 1e-6, "ratio error {:e}", rep.ratio_error);
    ensure!(rep.correlation < below, "correlation {:e} not below {below:e}", rep.correlation);
    Ok(format!("ratio error {:.1e}, correlation {:.3e} < {below:e}", rep.ratio_error, rep.correlation))
}

fn decay_regressions() -> Outcome {
    let mut finals = Vec::new();
    for (label, name) in [
        ("E1", "e1_heisenberg"),
        ("E2", "e2_quadratic"),
        ("E3", "e3_free3"),
        ("E4", "e4_multicorrelation"),
        ("E5", "e5_progressions"),
        ("anti", "e1_no_cancellation"),
    ] {
        let cfg = ExperimentConfig::load(&manifest().join("configs").join(format!("{name}.toml"))).map_err(|e| e.to_string())?;
        let rec = run(&cfg, &RunOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        if let Some(bad) = rec.checks.iter().find(|c| !c.passed) {
            return Err(format!("{name}: {} ({})", bad.name, bad.detail));
        }
        ensure!(rec.passed && !rec.checks.is_empty(), "{name}: no checks ran");
        let last = rec.ladders.last().map(|r| r.value).unwrap_or(f64::NAN);
        finals.push(format!("{label}={last:.4}"));
    }
    Ok(finals.join(" "))
}

fn control_value() -> Outcome {
    let mu = MultiplicativeWeight::Mobius;
    let v = short_interval_avg(&mu, &mu, 100_000, 100).map_err(|e| e.to_string())?.value;
    let target = 6.0 / std::f64::consts::PI.powi(2);
    ensure!((v - target).abs() < 0.02, "A = {v}, target {target}");
    Ok(format!("A = {v:.5}, 6/pi^2 = {target:.5}"))
}

fn cocycle_suite() -> Outcome {
    let mut r = rng(104);
    let alpha = rational(5, 13);
    let a2 = alpha.clone();
    let base = Map::invertible(move |x: &Rational| (x + &alpha).frac(), move |x: &Rational| (x - &a2).frac());
    let c = Cocycle::new(base.clone(), Torus::zero(1), |x: &Rational| Torus::new(vec![x * x]));
    for _ in 0..200 {
        let x = small_rational(&mut r).frac();
        let (m, n) = (r.gen_range(-20..=20), r.gen_range(-20..=20));
        let rhs = cocycle_sum(&c, &x, m).unwrap().plus(&cocycle_sum(&c, &base.power(&x, m).unwrap(), n).unwrap());
        ensure!(cocycle_sum(&c, &x, m + n).unwrap() == rhs, "cocycle identity fails at ({m}, {n})");
    }
    let real = GroupPair::IntegersInReals;
    ensure!(selector_theta(&real, &rational(17, 10), &rational(1, 2)).unwrap() == int(2), "theta(1.7, 0.5) != 2");
    let three = GroupPair::Multiples { k: 3 };
    for (x, want) in [(0, 0), (1, 0), (2, 1)] {
        ensure!(selector_theta(&three, &int(1), &int(x)).unwrap() == int(want), "theta(1, {x}) != {want}");
    }
    for _ in 0..1000 {
        let (t1, t2) = (rational(r.gen_range(-300..300), r.gen_range(1..30)), rational(r.gen_range(-300..300), r.gen_range(1..30)));
        let p = (small_rational(&mut r).frac(), small_rational(&mut r).frac());
        let mid = suspension_flow_over_map(&base, &t1, &p).unwrap();
        ensure!(
            suspension_flow_over_map(&base, &(&t1 + &t2), &p).unwrap() == suspension_flow_over_map(&base, &t2, &mid).unwrap(),
            "flow identity fails"
        );
    }
    for (k, rr, s) in [(1u32, 1i64, 2i64), (2, 2, 3), (3, 2, 1)] {
        let a = akrs_lattice(k, rr, s, 1).unwrap();
        let (rk, sk) = a.powers();
        let (rk, sk) = (rk as i64, sk as i64);
        for m in -10 * rk..=10 * rk {
            for n in -10 * sk..=10 * sk {
                let brute = (-10..=10i64).any(|j| rk * j == m && sk * j == n);
                ensure!(a.member(&[m], &[n]) == brute, "A_({k},{rr},{s}) membership of ({m}, {n})");
            }
        }
    }
    Ok("cocycle, selector, flow and lattice checks exact".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("algebra exactness", algebra_exactness, 30),
        ("generator and congruence lemmas", appendix_lemmas, 10),
        ("lattice and dynamics suite", lattice_dynamics, 30),
        ("sieve oracle equivalence", sieve_oracle, 60),
        ("joining invariant", joining_invariant, 5),
        ("stabilizer translation", stabilizer, 60),
        ("decay regressions", decay_regressions, 240),
        ("control value", control_value, 60),
        ("cocycle suite", cocycle_suite, 5),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(budget) => Err(format!("{detail}; took {took:.1?}, budget {budget} s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name:<34} {detail} ({took:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:<34} {detail} ({took:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
