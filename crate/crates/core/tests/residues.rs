use beatty_zeta::continuation::{ContinuationConfig, MellinEngine, ResidueReport, Verdict};
use beatty_zeta::{IrrationalNumber, PhiContext, RValue};
use std::f64::consts::PI;

fn report(r: RValue, abel: Option<u64>) -> (MellinEngine, ResidueReport) {
    let ctx = PhiContext::new(IrrationalNumber::golden(), r, 0.5).unwrap();
    let eng = MellinEngine::new(ctx, ContinuationConfig::default()).unwrap();
    let rep = ResidueReport::compute(&eng, abel).unwrap();
    (eng, rep)
}

#[test]
fn lattice_twist_residue() {
    let g = IrrationalNumber::golden().gamma();
    let (eng, rep) = report(RValue::Lattice { k: 1, l: 0 }, Some(1 << 20));
    let expected = 2.0 * (PI * g).sin() / PI;
    assert!((expected - 0.593_35).abs() < 1e-5);
    assert!((rep.measured_sharp.re - expected).abs() < 1e-5 && rep.measured_sharp.im.abs() < 1e-5);
    assert_eq!(rep.verdict, Verdict::Both);
    // additivity: the zeta# part contributes nothing off the integers
    let a = eng.ctx().small_u_amplitude();
    assert!((rep.measured_sharp - 2.0 * eng.rotation() * a).norm() < 1e-5);
    assert!((rep.abel_oracle_sharp.unwrap() - rep.measured_sharp).norm() < 1e-5);
}

#[test]
fn off_lattice_twist_has_no_pole() {
    let (_, rep) = report(RValue::Rational { num: 1, den: 3 }, None);
    assert!(rep.measured_sharp.norm() <= 1e-4);
    assert!(rep.abel_oracle.is_none());
}

#[test]
fn untwisted_residue_follows_the_density() {
    let g = IrrationalNumber::golden().gamma();
    let (_, rep) = report(RValue::Real(0.0), Some(1 << 20));
    // Z# = 2 Z_alpha(0, 1/2; s) here, so Z_alpha has residue gamma
    assert!((0.5 * rep.measured_sharp.re - g).abs() < 1e-5);
    assert!((0.5 * rep.abel_oracle_sharp.unwrap().re - g).abs() < 1e-4);
    assert!((rep.predicted_formula.re - 2.0 * g).abs() < 1e-15);
    assert_eq!(rep.predicted_density.re, 0.0);
    assert_eq!(rep.verdict, Verdict::Density);
    // additivity: gamma zeta# carries the whole pole
    assert!((rep.measured_sharp.re - 2.0 * g).abs() < 1e-5);
}

#[test]
fn odd_integer_twist_flips_sign() {
    let g = IrrationalNumber::golden().gamma();
    let (_, rep) = report(RValue::Real(1.0), None);
    assert!((rep.measured_sharp.re + 2.0 * g).abs() < 1e-5);
    assert!((rep.predicted_formula.re + 2.0 * g).abs() < 1e-15);
}
