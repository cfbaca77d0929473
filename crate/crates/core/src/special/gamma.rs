use num_complex::Complex64;
use std::f64::consts::PI;

use super::{EvalResult, Method};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation, valid for `Re z >= 1/2`.
fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * a
}

fn nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// `Gamma(s)`; reflection `Gamma(s) Gamma(1-s) = pi / sin(pi s)` below `Re s = 1/2`.
pub fn complex_gamma(s: Complex64) -> Result<EvalResult> {
    if nonpositive_integer(s) {
        return Err(Error::PoleAtInput(format!(
            "Gamma has a pole at s = {}",
            s.re
        )));
    }
    let v = if s.re >= 0.5 {
        lanczos(s)
    } else {
        PI / ((PI * s).sin() * lanczos(1.0 - s))
    };
    Ok(EvalResult::new(
        v,
        2e-15 * v.norm() * (1.0 + s.norm()),
        Method::Lanczos,
    ))
}

/// `1 / Gamma(s)`, entire (zero at nonpositive integers).
pub fn recip_gamma(s: Complex64) -> Complex64 {
    if nonpositive_integer(s) {
        return Complex64::new(0.0, 0.0);
    }
    if s.re >= 0.5 {
        1.0 / lanczos(s)
    } else {
        (PI * s).sin() * lanczos(1.0 - s) / PI
    }
}

/// `pi^{s/2} / Gamma(s/2)`, the inverse Mellin kernel factor.
pub fn mellin_prefactor(s: Complex64) -> Complex64 {
    (0.5 * s * PI.ln()).exp() * recip_gamma(0.5 * s)
}

// Derivatives of P(s) = pi^{s/2}/Gamma(s/2) at s = 1, from log-derivatives of Gamma at 1/2:
// L1 = (ln pi - psi(1/2))/2, L2 = -psi'(1/2)/4 = -pi^2/8, L3 = -psi''(1/2)/8 = 7 zeta(3)/4.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const ZETA3: f64 = 1.202_056_903_159_594_3;

fn prefactor_taylor_at_one() -> [f64; 3] {
    let l1 = 0.5 * (PI.ln() + EULER_GAMMA + 2.0 * std::f64::consts::LN_2);
    let l2 = -PI * PI / 8.0;
    let l3 = 1.75 * ZETA3;
    [l1, l1 * l1 + l2, l1 * l1 * l1 + 3.0 * l1 * l2 + l3]
}

/// `(P(s) - 1) / (s - 1)` for `P = pi^{s/2}/Gamma(s/2)`, stable as `s -> 1`.
pub fn mellin_prefactor_pole_quotient(s: Complex64) -> Complex64 {
    let h = s - 1.0;
    if h.norm() >= 1e-4 {
        return (mellin_prefactor(s) - 1.0) / h;
    }
    let [d1, d2, d3] = prefactor_taylor_at_one();
    d1 + h * (d2 / 2.0 + h * d3 / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((complex_gamma(c(1.0, 0.0)).unwrap().value - 1.0).norm() < 1e-15);
        assert!((complex_gamma(c(0.5, 0.0)).unwrap().value - PI.sqrt()).norm() < 1e-14);
        assert!((complex_gamma(c(6.0, 0.0)).unwrap().value - 120.0).norm() < 1e-11);
        assert!((complex_gamma(c(-0.5, 0.0)).unwrap().value + 2.0 * PI.sqrt()).norm() < 1e-13);
        assert!(matches!(
            complex_gamma(c(-2.0, 0.0)),
            Err(Error::PoleAtInput(_))
        ));
        assert_eq!(recip_gamma(c(-3.0, 0.0)), c(0.0, 0.0));
        // |Gamma(i)|^2 = pi / (sinh pi)
        let g = complex_gamma(c(0.0, 1.0)).unwrap().value;
        assert!((g.norm_sqr() - PI / PI.sinh()).abs() < 1e-14);
    }

    #[test]
    fn recurrence_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let s = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let g1 = complex_gamma(s + 1.0).unwrap().value;
            let g0 = complex_gamma(s).unwrap().value;
            assert!(
                (g1 - s * g0).norm() <= 1e-12 * g1.norm().max(1.0),
                "s = {s}"
            );
        }
    }

    #[test]
    fn prefactor_near_one() {
        // P(s) = 1 at s = 1 and P(0) = 0
        assert!((mellin_prefactor(c(1.0, 0.0)) - 1.0).norm() < 1e-15);
        assert_eq!(mellin_prefactor(c(0.0, 0.0)), c(0.0, 0.0));
        // Taylor branch agrees with a central finite-difference oracle of P
        let [d1, d2, _] = prefactor_taylor_at_one();
        let h = 1e-3;
        let p = |x: f64| mellin_prefactor(c(x, 0.0)).re;
        let fd1 = (p(1.0 + h) - p(1.0 - h)) / (2.0 * h);
        let fd2 = (p(1.0 + h) - 2.0 * p(1.0) + p(1.0 - h)) / (h * h);
        assert!((d1 - fd1).abs() < 1e-6 && (d1 - 1.554_1).abs() < 1e-4);
        assert!((d2 - fd2).abs() < 1e-5 && (d2 - 1.181_6).abs() < 1e-3);
        for dir in [c(1.0, 0.0), c(0.0, 1.0), c(-0.6, 0.8)] {
            let a = mellin_prefactor_pole_quotient(c(1.0, 0.0) + dir * 1.0001e-4);
            let b = mellin_prefactor_pole_quotient(c(1.0, 0.0) + dir * 0.9999e-4);
            // the two branches meet with the slope d2/2
            assert!((a - b - dir * 1e-8 * d2).norm() < 1e-10);
        }
    }
}
