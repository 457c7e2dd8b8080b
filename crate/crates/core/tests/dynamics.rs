mod common;

use common::rng;
use nilorth::dynamics::{
    e, orbit_series, subsampled_orbit, weyl_system, write_orbit_csv, AffineSystem, CombinedOrbit, Dilated,
    Observable, Orbit, SignalSeries, WeylSystem,
};
use nilorth::lie::{library, Derivation};
use nilorth::nilmanifold::{GroupPoint, Nilmanifold};
use nilorth::scalar::{circle_dist, dyadic, int, rational, Scalar};
use nilorth::Rational;
use num::complex::Complex64;
use rand::Rng;

fn heisenberg_translation() -> (AffineSystem, GroupPoint<Rational>) {
    let nm = Nilmanifold::new(library::heisenberg()).unwrap();
    let u = nm
        .from_second(&[dyadic(2f64.sqrt()).unwrap(), dyadic(3f64.sqrt()).unwrap(), int(0)])
        .unwrap();
    let x = nm.from_second(&[rational(1, 3), rational(1, 5), rational(1, 7)]).unwrap();
    (AffineSystem::translation(nm, u).unwrap(), x)
}

fn heisenberg_affine() -> (AffineSystem, GroupPoint<Rational>) {
    let nm = Nilmanifold::new(library::heisenberg()).unwrap();
    let b = Derivation::sparse(3, &[(0, 1, int(1)), (2, 1, rational(1, 2))]).unwrap();
    let u = nm.from_second(&[dyadic(5f64.sqrt()).unwrap(), int(0), dyadic(0.1).unwrap()]).unwrap();
    let x = nm.from_second(&[rational(2, 3), rational(1, 9), int(0)]).unwrap();
    (AffineSystem::new(nm, u, b).unwrap(), x)
}

fn bits(v: &[Complex64]) -> Vec<(u64, u64)> {
    v.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()
}

#[test]
fn weyl_orbits_reproduce_polynomial_phases() {
    let mut r = rng(21);
    for d in 1..=4 {
        for _ in 0..3 {
            let coeffs: Vec<f64> = (0..=d).map(|_| r.gen_range(-2.0..2.0)).collect();
            let w = weyl_system(&coeffs).unwrap();
            let a = orbit_series(w.system(), w.start(), w.observable()).unwrap();
            let vals = a.values(0, 1001);
            for (n, v) in vals.iter().enumerate() {
                let err = (w.reference(n as i64) - v).norm();
                assert!(err < 1e-8, "degree {d}, n = {n}: {err:e}");
            }
        }
    }
    // rational coefficients are exact end to end
    let w = WeylSystem::new(vec![rational(1, 3), rational(-2, 7), rational(5, 11)]).unwrap();
    let orbit = Orbit::new(w.system(), w.start()).unwrap();
    for n in [0i64, 1, 2, 17, 999] {
        let p = orbit.exact_point(n);
        let last = w.system().nilmanifold().second(&p)[1].clone();
        assert_eq!(last, Scalar::frac(&w.exact_phase(n)));
    }
}

#[test]
fn float_orbit_tracks_exact_orbit() {
    for (sys, x) in [heisenberg_translation(), heisenberg_affine()] {
        let orbit = Orbit::new(&sys, &x).unwrap();
        let pts = orbit.points(0, 5000);
        for k in (0..5000).step_by(97) {
            let exact = sys.nilmanifold().second(&orbit.exact_point(k as i64));
            for (a, b) in pts[k].iter().zip(&exact) {
                assert!(circle_dist(a - b.as_f64()) < 1e-9, "k = {k}");
            }
        }
        // backward orbit
        let back = orbit.points(-300, 300);
        for (i, p) in back.iter().enumerate() {
            let exact = sys.nilmanifold().second(&orbit.exact_point(i as i64 - 300));
            for (a, b) in p.iter().zip(&exact) {
                assert!(circle_dist(a - b.as_f64()) < 1e-9);
            }
        }
    }
}

#[test]
fn values_do_not_depend_on_window_or_threads() {
    for (sys, x) in [heisenberg_translation(), heisenberg_affine()] {
        let a = orbit_series(&sys, &x, Observable::central(1)).unwrap();
        let whole = a.values(0, 300_000);
        for (start, len) in [(0u64, 10usize), (4095, 3), (65_530, 20), (123_457, 70_000), (299_999, 1)] {
            let part = a.values(start, len);
            assert_eq!(bits(&part), bits(&whole[start as usize..start as usize + len]));
        }
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let v = pool.install(|| a.values(0, 300_000));
            assert_eq!(bits(&v), bits(&whole), "{threads} threads");
        }
        let small_block = Orbit::with_block(&sys, &x, 64).unwrap();
        let b = nilorth::dynamics::OrbitSeries::from_orbit(small_block, Observable::central(1)).unwrap();
        let v = b.values(0, 5000);
        for (p, q) in v.iter().zip(&whole) {
            assert!((p - q).norm() < 1e-9);
        }
    }
}

#[test]
fn central_characters_are_equivariant() {
    let (sys, x) = heisenberg_translation();
    let nm = sys.nilmanifold();
    let f = Observable::central(3);
    assert_eq!(f.central_frequency(nm), Some(3));
    let orbit = Orbit::new(&sys, &x).unwrap();
    let mut r = rng(22);
    for k in 0..200i64 {
        let c: f64 = r.gen_range(0.0..1.0);
        let p = orbit.exact_point(k);
        let z = nm.from_second(&[int(0), int(0), dyadic(c).unwrap()]).unwrap();
        let shifted = nm.reduce(&nm.mul(&z, &p));
        let t = |g: &GroupPoint<Rational>| -> Vec<f64> { nm.second(g).iter().map(Scalar::as_f64).collect() };
        let lhs = f.eval(&t(&shifted));
        let rhs = e(3.0 * c) * f.eval(&t(&p));
        assert!((lhs - rhs).norm() < 1e-12);
    }
    assert_eq!(Observable::torus(vec![1, 0]).central_frequency(nm), Some(0));
    assert_eq!(Observable::Coordinate { index: 2 }.central_frequency(nm), None);
}

#[test]
fn subsampling_uses_floor_of_linear_index() {
    let (sys, x) = heisenberg_translation();
    let f = Observable::central(1);
    let s = subsampled_orbit(&sys, &x, f.clone(), 2f64.sqrt(), 0.0).unwrap();
    let exps: Vec<i64> = (1..=5).map(|n| s.exponent(n)).collect();
    assert_eq!(exps, vec![1, 2, 4, 5, 7]);
    let base = orbit_series(&sys, &x, f.clone()).unwrap().values(0, 20);
    let sub = s.values(0, 12);
    for (n, v) in sub.iter().enumerate() {
        assert_eq!(*v, base[s.exponent(n as u64) as usize]);
    }
    let shifted = subsampled_orbit(&sys, &x, f, 1.0, -2.5).unwrap();
    assert_eq!(shifted.exponent(0), -3);
    assert!(subsampled_orbit(&sys, &x, Observable::central(1), 0.0, 0.0).is_err());
}

#[test]
fn linear_weyl_system_is_the_circle_rotation() {
    let s2 = 2f64.sqrt();
    let w = weyl_system(&[0.0, s2]).unwrap();
    let a = subsampled_orbit(w.system(), w.start(), w.observable(), 1.0, 0.0).unwrap();
    let circle = Nilmanifold::new(library::abelian(1)).unwrap();
    let sys = AffineSystem::translation(circle.clone(), GroupPoint::from_first([dyadic(s2).unwrap()])).unwrap();
    let b = orbit_series(&sys, &circle.identity(), Observable::torus(vec![1])).unwrap();
    assert_eq!(bits(&a.values(0, 100_000)), bits(&b.values(0, 100_000)));
}

#[test]
fn dilation_picks_every_pth_term() {
    for (sys, x) in [heisenberg_translation(), heisenberg_affine()] {
        let a = orbit_series(&sys, &x, Observable::torus(vec![1, 2])).unwrap();
        let all = a.values(0, 7 * 3000);
        for p in [2u64, 3, 7] {
            let fast = a.dilate(p).unwrap();
            let generic = Dilated::new(&a, p);
            let (f, g) = (fast.values(0, 3000), generic.values(0, 3000));
            let want: Vec<_> = all.iter().step_by(p as usize).take(3000).copied().collect();
            assert_eq!(bits(&g), bits(&want));
            for (u, v) in f.iter().zip(&g) {
                assert!((u - v).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn combined_orbit_is_a_linear_combination() {
    let (sys, x) = heisenberg_translation();
    let f1 = Observable::central(1);
    let f2 = Observable::torus(vec![1, -1]);
    let orbit = Orbit::new(&sys, &x).unwrap();
    let c = CombinedOrbit::new(orbit, vec![(2.0, f1.clone()), (-0.5, f2.clone())]).unwrap();
    assert_eq!(c.bound(), 2.5);
    let a = orbit_series(&sys, &x, f1).unwrap().values(0, 2000);
    let b = orbit_series(&sys, &x, f2).unwrap().values(0, 2000);
    for ((v, p), q) in c.values(0, 2000).iter().zip(&a).zip(&b) {
        assert!((v - (p * 2.0 - q * 0.5)).norm() < 1e-15);
    }
    assert!(CombinedOrbit::new(Orbit::new(&sys, &x).unwrap(), vec![]).is_err());
}

#[test]
fn orbit_csv_dump() {
    let (sys, x) = heisenberg_translation();
    let orbit = Orbit::new(&sys, &x).unwrap();
    let mut buf = Vec::new();
    write_orbit_csv(&mut buf, &orbit, &Observable::central(1), 0, 5).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,t0,t1,t2,re,im");
    assert_eq!(lines.len(), 6);
    assert!(lines[3].starts_with("2,"));
}
