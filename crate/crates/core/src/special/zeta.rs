use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::gamma::complex_gamma;
use super::{EvalResult, Method};
use crate::error::{Error, Result};

/// Highest Bernoulli index used by Euler-Maclaurin.
const MAX_B: usize = 30;

/// `B_{2k}` for `k = 1..=15`, exact rationals rounded once.
pub fn bernoulli_b2k() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{j<=m} C(m+1, j) B_j = 0
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=MAX_B {
            let mut binom = BigInt::one();
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m as i64 + 1)));
        }
        (1..=MAX_B / 2)
            .map(|k| b[2 * k].to_f64().unwrap())
            .collect()
    })
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::Domain(format!("q = {q} must lie in (0, 1]")));
    }
    Ok(())
}

/// Euler-Maclaurin pieces: `zeta(s, q) = body + (N+q)^{1-s} / (s-1)`; returns `(body, ln(N+q), err)`.
fn em_parts(q: f64, s: Complex64) -> (Complex64, f64, f64) {
    let n = (2.0 * s.norm()).ceil() as usize + 12;
    let mut body = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for j in 0..n {
        let t = (-s * (j as f64 + q).ln()).exp();
        mag += t.norm();
        body += t;
    }
    let x = n as f64 + q;
    let lx = x.ln();
    let xs = (-s * lx).exp(); // x^{-s}
    body += 0.5 * xs;
    // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) x^{-s-2k+1}
    let mut poch = s; // s (s+1) ... (s + 2k - 2)
    let mut pow = xs / x;
    let mut fact = 2.0;
    let mut last = 0.0;
    for (k, &b) in bernoulli_b2k().iter().enumerate() {
        let k = k + 1;
        let term = b / fact * poch * pow;
        body += term;
        last = term.norm();
        poch *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        pow /= x * x;
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    let rounding = 8.0 * f64::EPSILON * (mag + xs.norm() * x);
    (body, lx, last + rounding)
}

/// `(e^x - 1) / x`.
fn exprel(x: Complex64) -> Complex64 {
    if x.norm() > 0.5 {
        return (x.exp() - 1.0) / x;
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 2..30 {
        term *= x / k as f64;
        sum += term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    sum
}

/// Hurwitz zeta `zeta(s, q) = sum_{n>=0} (n+q)^{-s}` for `q in (0, 1]`.
pub fn hurwitz_zeta(q: f64, s: Complex64) -> Result<EvalResult> {
    check_q(q)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtInput(
            "Hurwitz zeta has a pole at s = 1".into(),
        ));
    }
    let (body, lx, err) = em_parts(q, s);
    let h = s - 1.0;
    let v = if h.norm() < 1.0 {
        body - lx * exprel(-h * lx) + 1.0 / h
    } else {
        body + (-h * lx).exp() / h
    };
    Ok(EvalResult::new(v, err, Method::EulerMaclaurin))
}

/// `zeta(s, q) - 1/(s-1)`, analytic through `s = 1`.
pub fn hurwitz_regular(q: f64, s: Complex64) -> Result<EvalResult> {
    check_q(q)?;
    let (body, lx, err) = em_parts(q, s);
    // ((N+q)^{1-s} - 1)/(s-1) = -ln(N+q) exprel((1-s) ln(N+q))
    let v = body - lx * exprel((1.0 - s) * lx);
    Ok(EvalResult::new(v, err, Method::EulerMaclaurin))
}

/// Riemann zeta; the functional equation is used for `Re s < 0`.
pub fn riemann_zeta(s: Complex64) -> Result<EvalResult> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtInput(
            "Riemann zeta has a pole at s = 1".into(),
        ));
    }
    if s.re >= 0.0 {
        return hurwitz_zeta(1.0, s);
    }
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    // pole part of zeta(1-s) taken from s itself so that 1 - s is never rounded
    let refl = hurwitz_regular(1.0, 1.0 - s)?;
    let g = complex_gamma(1.0 - s)?;
    let factor =
        (s * 2f64.ln()).exp() * ((s - 1.0) * PI.ln()).exp() * (0.5 * PI * s).sin() * g.value;
    let v = factor * (refl.value - 1.0 / s);
    let err = factor.norm() * refl.err_est + 4.0 * f64::EPSILON * (1.0 + s.norm()) * v.norm();
    Ok(EvalResult::new(v, err, Method::EulerMaclaurin))
}
