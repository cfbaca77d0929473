//! Reference special functions: complex gamma, Riemann and Hurwitz zeta, and the
//! Lipschitz-Lerch zeta with a real twist.

mod gamma;
pub(crate) mod lerch;
mod zeta;

pub use gamma::{complex_gamma, mellin_prefactor, mellin_prefactor_pole_quotient, recip_gamma};
pub use lerch::{lerch_direct, lerch_direct_tol, zeta_sharp, zeta_sharp_with};
pub use zeta::{bernoulli_b2k, hurwitz_regular, hurwitz_zeta, riemann_zeta};

use num_complex::Complex64;

/// How a value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DirectSeries,
    EulerMaclaurin,
    Continuation,
    AbelSummation,
    Lanczos,
    ClosedForm,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DirectSeries => "direct-series",
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::Continuation => "continuation",
            Method::AbelSummation => "abel-summation",
            Method::Lanczos => "lanczos",
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A complex value with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub err_est: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: Complex64, err_est: f64, method: Method) -> Self {
        debug_assert!(err_est >= 0.0 || err_est.is_nan());
        Self {
            value,
            err_est,
            method,
        }
    }
}
