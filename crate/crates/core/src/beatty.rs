//! Beatty sequences, the indicator `ind_alpha` on all of `Z`, and the pulse-wave
//! Fourier model of that indicator.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::diophantine::{estimate_type, IrrationalNumber};
use crate::error::{Error, Result};
use crate::e_int;

/// Value of the pulse wave: 0, 1/2 at a jump, or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum IndicatorValue {
    Zero,
    Half,
    One,
}

impl IndicatorValue {
    pub fn as_f64(self) -> f64 {
        match self {
            IndicatorValue::Zero => 0.0,
            IndicatorValue::Half => 0.5,
            IndicatorValue::One => 1.0,
        }
    }
}

impl std::fmt::Display for IndicatorValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IndicatorValue::Zero => "0",
            IndicatorValue::Half => "1/2",
            IndicatorValue::One => "1",
        })
    }
}

/// `floor(alpha m)` for `m = 1..=M`.
pub fn beatty_terms(alpha: &IrrationalNumber, m: usize) -> Result<Vec<i64>> {
    if m == 0 {
        return Err(Error::Domain("M must be at least 1".into()));
    }
    (1..=m as i64).map(|j| alpha.floor_mul_alpha(j)).collect()
}

/// Number of Beatty terms in `[1, N]`, i.e. `floor((N + 1) gamma)` for `N >= 0`.
pub fn beatty_count(alpha: &IrrationalNumber, n: i64) -> Result<i64> {
    alpha.floor_mul_gamma(n + 1)
}

/// The 1-periodic indicator of `(0, gamma)`, taking 1/2 at `Z` and `gamma + Z`.
pub fn pulse_wave_eval(gamma: f64, t: f64) -> IndicatorValue {
    let f = t - t.floor();
    if f == 0.0 || f == gamma {
        IndicatorValue::Half
    } else if f < gamma {
        IndicatorValue::One
    } else {
        IndicatorValue::Zero
    }
}

/// `ind_alpha(n) = X_gamma(-n gamma)`, evaluated exactly.
///
/// For `n` outside `{0, -1}` this is `floor((n+1) gamma) - floor(n gamma)`, which for
/// `n >= 1` is membership in the Beatty sequence.
pub fn indicator(alpha: &IrrationalNumber, n: i64) -> Result<IndicatorValue> {
    if n == 0 || n == -1 {
        return Ok(IndicatorValue::Half);
    }
    let jump = alpha.floor_mul_gamma(n + 1)? - alpha.floor_mul_gamma(n)?;
    Ok(if jump == 1 {
        IndicatorValue::One
    } else {
        IndicatorValue::Zero
    })
}

/// `chi(n)` as `0, 1/2, 1` for `n = 0..len`; by symmetry `chi(-n-1) = chi(n)`.
pub fn indicator_table(alpha: &IrrationalNumber, len: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(len);
    let mut prev = 0i64; // floor(0 * gamma)
    for n in 0..len as i64 {
        let next = alpha.floor_mul_gamma(n + 1)?;
        out.push(if n == 0 { 0.5 } else { (next - prev) as f64 });
        prev = next;
    }
    Ok(out)
}

/// `X~_gamma(k)`: `gamma` at `k = 0`, else `(1 - e(-k gamma)) / (2 pi i k) = e^{-i pi k gamma} sin(pi k gamma) / (pi k)`.
pub fn fourier_coeff(gamma: f64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(gamma, 0.0);
    }
    let x = k as f64 * gamma;
    let half = 0.5 * x;
    let red = 2.0 * (half - half.floor()); // k gamma mod 2
                                           // e(-red/2) and the amplitude share one sin_cos
    let (sn, cs) = (PI * red).sin_cos();
    Complex64::new(cs, -sn) * (sn / (PI * k as f64))
}

/// Pulse-wave Fourier model with a calibrated truncation bound
/// `C max(1, |n|^(tau + eps)) / K`.
#[derive(Clone, Debug)]
pub struct PulseWave {
    alpha: IrrationalNumber,
    gamma: f64,
    c: f64,
    tau_hat: f64,
    eps: f64,
}

impl PulseWave {
    pub fn new(alpha: &IrrationalNumber, eps: f64) -> Result<Self> {
        let tau_hat = estimate_type(alpha, 20).tau;
        let mut pw = Self {
            alpha: alpha.clone(),
            gamma: alpha.gamma(),
            c: 0.0,
            tau_hat,
            eps,
        };
        let mut worst = 0.0f64;
        for n in -100i64..=100 {
            let exact = indicator(alpha, n)?.as_f64();
            for j in 4..=12 {
                let k = 1u64 << j;
                let err = (pw.partial_sum(n, k) - exact).norm();
                worst = worst.max(k as f64 * err / pw.growth(n));
            }
        }
        pw.c = 2.0 * worst;
        Ok(pw)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        fourier_coeff(self.gamma, k)
    }

    /// Calibrated constant `C`.
    pub fn calibration(&self) -> f64 {
        self.c
    }

    pub fn tau_hat(&self) -> f64 {
        self.tau_hat
    }

    fn growth(&self, n: i64) -> f64 {
        (n.unsigned_abs() as f64)
            .powf(self.tau_hat + self.eps)
            .max(1.0)
    }

    fn partial_sum(&self, n: i64, k_max: u64) -> Complex64 {
        let g = self.gamma;
        let mut acc = Complex64::new(g, 0.0);
        for k in 1..=k_max as i64 {
            acc += fourier_coeff(g, k) * e_int(-k * n, g) + fourier_coeff(g, -k) * e_int(k * n, g);
        }
        acc
    }

    /// `(sum_{|k|<=K} X~(k) e(-k gamma n), bound)`.
    pub fn truncated_indicator(&self, n: i64, k_max: u64) -> Result<(Complex64, f64)> {
        if k_max < 2 {
            return Err(Error::Domain("K must be at least 2".into()));
        }
        Ok((self.partial_sum(n, k_max), self.err_bound(n, k_max)))
    }

    pub fn err_bound(&self, n: i64, k_max: u64) -> f64 {
        self.c * self.growth(n) / k_max as f64
    }

    /// Exact value at `n`.
    pub fn indicator(&self, n: i64) -> Result<IndicatorValue> {
        indicator(&self.alpha, n)
    }
}
