//! Beatty zeta functions beyond the half-plane of absolute convergence.
//!
//! For an irrational `alpha > 1` the Beatty zeta function
//!
//! ```text
//! Z_alpha(r, q; s) = sum_{n in B(alpha)} e(r n) / (n + q)^s,    B(alpha) = { floor(alpha m) : m >= 1 }
//! ```
//!
//! and its symmetrization `Z#(r,q;s) = e^{i pi r} Z(r,q;s) + e^{-i pi r} Z(-r,1-q;s)` are
//! continued to `Re s > 0` through the Mellin transform of a pair of theta-like series
//! split at `u = 1`. The small-`u` half carries the pole at `s = 1`, which is subtracted
//! analytically whenever `r` lies on the lattice `Z + Z/alpha`.
//!
//! Module map:
//!
//! * [`diophantine`]: exact quadratic surds, continued fractions, type estimates,
//!   star discrepancy and near-resonance enumeration.
//! * [`beatty`]: Beatty terms, the indicator on all of `Z`, and its pulse-wave Fourier model.
//! * [`special`]: complex gamma, Riemann/Hurwitz zeta and the Lipschitz-Lerch zeta.
//! * [`theta`]: the two-parameter theta function and the difference series `Phi(u)`.
//! * [`continuation`]: the Mellin pipeline, direct and Abel-summation oracles, residues
//!   and grid scans.

pub mod beatty;
pub mod continuation;
pub mod diophantine;
mod error;
pub mod quad;
pub mod special;
pub mod theta;

pub use num_complex::Complex64;

pub use beatty::{IndicatorValue, PulseWave};
pub use continuation::{ContinuationConfig, MellinEngine, RegionNote, ResidueReport, ZSharpResult};
pub use diophantine::{IrrationalNumber, NearHit, QuadraticSurd, RValue};
pub use error::{Error, Result};
pub use special::{EvalResult, Method};
pub use theta::{PhiContext, SeriesKind};

/// `e(t) = exp(2 pi i t)`, reducing `t` modulo 1 first.
#[inline]
pub fn e(t: f64) -> Complex64 {
    let f = t - t.floor();
    let (s, c) = (std::f64::consts::TAU * f).sin_cos();
    Complex64::new(c, s)
}

/// `e(n x)` with the product reduced modulo 1 using an exact FMA residual,
/// so the phase stays accurate for large `|n|`.
#[inline]
pub fn e_int(n: i64, x: f64) -> Complex64 {
    let nf = n as f64;
    let p = nf * x;
    let lo = nf.mul_add(x, -p);
    e((p - p.floor()) + lo)
}
