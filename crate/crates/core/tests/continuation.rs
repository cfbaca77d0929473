use beatty_zeta::continuation::{z_fluctuation, ContinuationConfig, MellinEngine, RegionNote};
use beatty_zeta::{IrrationalNumber, PhiContext, RValue};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn engine(r: RValue, q: f64) -> MellinEngine {
    let ctx = PhiContext::new(IrrationalNumber::golden(), r, q).unwrap();
    MellinEngine::new(ctx, ContinuationConfig::default()).unwrap()
}

fn gamma_lattice() -> RValue {
    RValue::Lattice { k: 1, l: 0 }
}

#[test]
fn overlap_with_direct_series() {
    let eng = engine(gamma_lattice(), 0.5);
    for s in [c(1.5, 0.0), c(2.0, 0.0), c(2.0, 3.0)] {
        let a = eng.z_sharp_continued(s).unwrap();
        let b = eng.z_sharp_direct(s).unwrap();
        assert_eq!(a.region_note, RegionNote::Continued);
        assert!((a.value - b.value).norm() <= 1e-8, "s = {s}");
    }
}

#[test]
fn overlap_random_points() {
    let eng = engine(gamma_lattice(), 0.5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let s = c(rng.gen_range(1.1..3.0), rng.gen_range(-4.0..4.0));
        let a = eng.z_sharp_continued(s).unwrap();
        let b = eng.z_sharp_direct(s).unwrap();
        assert!(
            (a.value - b.value).norm() <= a.err_est + b.err_est,
            "s = {s}: {} vs {}",
            a.value,
            b.value
        );
    }
}

#[test]
fn value_at_zero_is_forced() {
    let z = engine(RValue::Real(0.0), 0.5).z_sharp(c(0.0, 0.0)).unwrap();
    assert_eq!(z.region_note, RegionNote::PrefactorZero);
    assert!((z.value - c(-1.0, 0.0)).norm() < 1e-10);
}

#[test]
fn half_of_sharp_matches_oracle() {
    let eng = engine(RValue::Real(0.0), 0.5);
    let alpha = IrrationalNumber::golden();
    for sr in [0.25, 0.5, 0.75, 1.5] {
        let s = c(sr, 0.0);
        let z = eng.z_sharp_continued(s).unwrap();
        let (o, _) = z_fluctuation(&alpha, RValue::Real(0.0), 0.5, s, 1 << 20).unwrap();
        let diff = (0.5 * z.value - o.value).norm();
        assert!(
            diff <= 0.5 * z.err_est + o.err_est,
            "s = {s}: {} vs {}",
            0.5 * z.value,
            o.value
        );
        if sr == 1.5 {
            assert!(diff < 1e-6);
        }
    }
}

#[test]
fn approach_to_zero_extrapolates_to_minus_half() {
    let eng = engine(RValue::Real(0.0), 0.5);
    let z: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&x| 0.5 * eng.z_sharp_continued(c(x, 0.0)).unwrap().value.re)
        .collect();
    // quadratic through the three points, evaluated at 0
    let (x0, x1, x2) = (0.2, 0.1, 0.05);
    let l0 = x1 * x2 / ((x0 - x1) * (x0 - x2));
    let l1 = x0 * x2 / ((x1 - x0) * (x1 - x2));
    let l2 = x0 * x1 / ((x2 - x0) * (x2 - x1));
    let at_zero = l0 * z[0] + l1 * z[1] + l2 * z[2];
    assert!((at_zero + 0.5).abs() < 5e-3, "{at_zero}");
}

#[test]
fn reflection_for_real_twist() {
    let eng = engine(RValue::Real(0.0), 0.5);
    for s in [c(0.6, 2.0), c(1.3, -0.7)] {
        let a = eng.z_sharp(s).unwrap();
        let b = eng.z_sharp(s.conj()).unwrap();
        assert!((a.value - b.value.conj()).norm() < 1e-10);
    }
}

#[test]
fn regular_part_is_stable_near_the_pole() {
    for r in [gamma_lattice(), RValue::Real(0.0)] {
        let eng = engine(r, 0.5);
        let dirs = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
        // linear extrapolation to s = 1 along each direction
        let reg = |s: Complex64| eng.z_sharp_continued(s).unwrap().regular;
        let vals: Vec<Complex64> = dirs
            .iter()
            .map(|&d| (10.0 * reg(1.0 + 1e-4 * d) - reg(1.0 + 1e-3 * d)) / 9.0)
            .collect();
        for v in &vals[1..] {
            assert!((v - vals[0]).norm() < 1e-5, "{r}: {v} vs {}", vals[0]);
        }
    }
}

#[test]
fn f0_pole_and_truncation_contract() {
    let eng = engine(gamma_lattice(), 0.5);
    let s = c(1.5, 0.0);
    let f0 = eng.f0_regularized(s).unwrap();
    assert!((f0.pole - 2.0 * eng.ctx().small_u_amplitude()).norm() < 1e-15);
    let mut cfg = ContinuationConfig::default();
    cfg.u_min *= 0.5;
    cfg.u_switch = cfg.u_min;
    let finer = MellinEngine::new(
        PhiContext::new(IrrationalNumber::golden(), gamma_lattice(), 0.5).unwrap(),
        cfg,
    )
    .unwrap();
    let g0 = finer.f0_regularized(s).unwrap();
    assert!((g0.regular.value - f0.regular.value).norm() <= 2.0 * f0.regular.err_est);
    let third = engine(RValue::Rational { num: 1, den: 3 }, 0.5)
        .f0_regularized(s)
        .unwrap();
    assert_eq!(third.pole.norm(), 0.0);
}

#[test]
fn off_lattice_twist_is_finite_near_one() {
    let eng = engine(RValue::Rational { num: 1, den: 3 }, 0.5);
    assert_eq!(eng.pole_coefficient().norm(), 0.0);
    for s in [c(0.9, 0.0), c(1.0, 0.01), c(1.0, -0.01), c(1.0, 0.0)] {
        let z = eng.z_sharp_continued(s).unwrap();
        assert!(z.value.is_finite() && z.err_est < 1e-3, "s = {s}");
    }
}

#[test]
fn below_sigma_min_is_refused() {
    let eng = engine(gamma_lattice(), 0.5);
    assert!(eng.z_sharp(c(0.01, 1.0)).is_err());
    assert!(eng.z_sharp(c(-0.5, 0.0)).is_err());
}
