//! Analytic continuation of `Z#` and `zeta#` through the Mellin transform of `Phi`
//! and `Psi`, with the pole at `s = 1` carried symbolically.

mod direct;
mod engine;
mod residue;
mod scan;

pub use direct::{z_direct, z_direct_tol, z_fluctuation, z_fluctuation_residue, FluctuationMode};
pub use engine::{lerch_pair_continued, F0Result, MellinEngine, RegionNote, ZSharpResult};
pub use residue::{ResidueMethod, ResidueReport, Verdict};
pub use scan::{grid_scan, write_csv, GridRow, GridSpec, CSV_HEADER};

use crate::error::{Error, Result};

/// Numerical parameters of the continuation.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ContinuationConfig {
    /// Lower end of the `F_0` integral; the segment below it is bounded, not computed.
    pub u_min: f64,
    /// `Phi` is summed directly for `u >= u_switch` and via the transformed series below.
    pub u_switch: f64,
    /// Window width `K` of the transformed representation.
    pub k_max: u64,
    /// Absolute tolerance of each Mellin quadrature.
    pub quad_tol: f64,
    /// The `eps` added to the type estimate in truncation bounds.
    pub eps_exponent: f64,
    /// Smallest supported `Re s` for continued values (except the exact point `s = 0`).
    pub sigma_min: f64,
    /// Continued values are replaced by direct series for `Re s > 1 + direct_margin`.
    pub direct_margin: f64,
    /// Maximum bisection depth of the adaptive quadrature.
    pub max_depth: u32,
    /// Target tolerance of direct series.
    pub direct_tol: f64,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        Self {
            u_min: 1e-10,
            u_switch: 1e-10,
            k_max: 1_000_000,
            quad_tol: 1e-12,
            eps_exponent: 0.05,
            sigma_min: 0.05,
            direct_margin: 0.5,
            max_depth: 10,
            direct_tol: 1e-11,
        }
    }
}

impl ContinuationConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.u_min > 0.0
            && self.u_min <= self.u_switch
            && self.u_switch <= 1.0
            && self.u_min >= crate::theta::U_FLOOR
            && self.quad_tol > 0.0
            && self.sigma_min > 0.0
            && self.k_max >= 2
            && self.direct_tol > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "invalid continuation config: {self:?}"
            )))
        }
    }

    /// Sets `key = value` from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Parse(format!("bad value '{value}' for {key}"));
        let f = || value.trim().parse::<f64>().map_err(|_| bad());
        match key.trim() {
            "u_min" => self.u_min = f()?,
            "u_switch" => self.u_switch = f()?,
            "k_max" => self.k_max = f()? as u64,
            "quad_tol" => self.quad_tol = f()?,
            "eps_exponent" => self.eps_exponent = f()?,
            "sigma_min" => self.sigma_min = f()?,
            "direct_margin" => self.direct_margin = f()?,
            "max_depth" => self.max_depth = f()? as u32,
            "direct_tol" => self.direct_tol = f()?,
            other => return Err(Error::Parse(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }
}
