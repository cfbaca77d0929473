use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::direct::z_fluctuation_residue;
use super::engine::MellinEngine;
use crate::error::Result;

/// Nodes and radius of the residue contour around `s = 1`.
pub const CONTOUR_NODES: usize = 8;
pub const CONTOUR_RADIUS: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidueMethod {
    /// Trapezoid rule on a circle around `s = 1`.
    Contour,
    /// `(s - 1) Z` extrapolated along `s = 1 + h`.
    Limit,
    /// Extrapolated Abel-summation values.
    AbelOracle,
}

/// Which prediction the measurement matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Formula,
    Density,
    Both,
    Neither,
}

/// Residues at `s = 1`.
///
/// `measured`, `predicted_*` and `abel_oracle` refer to the difference `Z# - gamma zeta#`;
/// the `_sharp` fields to `Z#` itself. The two coincide off the integers.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ResidueReport {
    pub measured: Complex64,
    pub measured_err: f64,
    pub measured_sharp: Complex64,
    pub symbolic_sharp: Complex64,
    /// `2 (-1)^l sin(pi k gamma) / (pi k)` for `r = k gamma + l`, and `2 (-1)^l gamma` at `k = 0`.
    pub predicted_formula: Complex64,
    /// What counting Beatty terms predicts: the formula for `k != 0`, zero at `k = 0`.
    pub predicted_density: Complex64,
    pub abel_oracle: Option<Complex64>,
    pub abel_oracle_sharp: Option<Complex64>,
    pub abel_err: Option<f64>,
    pub method: ResidueMethod,
    pub verdict: Verdict,
    /// Tolerance used for the verdict.
    pub tolerance: f64,
}

fn parity(l: i64) -> f64 {
    if l.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

impl ResidueReport {
    /// Contour measurement plus, when `abel_terms` is given and `r` is on the lattice, the
    /// Abel-summation oracle.
    pub fn compute(engine: &MellinEngine, abel_terms: Option<u64>) -> Result<Self> {
        let ctx = engine.ctx();
        let g = ctx.gamma();
        let nodes: Vec<Complex64> = (0..CONTOUR_NODES)
            .map(|j| {
                1.0 + Complex64::from_polar(
                    CONTOUR_RADIUS,
                    2.0 * PI * (j as f64 + 0.5) / CONTOUR_NODES as f64,
                )
            })
            .collect();
        let vals: Vec<_> = nodes
            .par_iter()
            .map(|&s| engine.z_sharp_continued(s))
            .collect::<Result<Vec<_>>>()?;
        let n = CONTOUR_NODES as f64;
        let mut diff = Complex64::new(0.0, 0.0);
        let mut sharp = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        for z in &vals {
            diff += (z.value - z.gamma_zeta_sharp) * (z.s - 1.0) / n;
            sharp += z.value * (z.s - 1.0) / n;
            err += z.err_est * CONTOUR_RADIUS / n;
        }

        let (formula, density, zeta_pole) = match ctx.hit() {
            Some((0, l)) => (2.0 * parity(l) * g, 0.0, 2.0 * parity(l) * g),
            Some((k, l)) => {
                let v = 2.0 * parity(l) * (PI * k as f64 * g).sin() / (PI * k as f64);
                (v, v, 0.0)
            }
            None => (0.0, 0.0, 0.0),
        };

        let (abel_oracle, abel_oracle_sharp, abel_err) = match (abel_terms, ctx.hit()) {
            (Some(terms), Some(_)) => {
                let plus = z_fluctuation_residue(ctx.alpha(), ctx.r(), ctx.q(), terms)?;
                let minus =
                    z_fluctuation_residue(ctx.alpha(), ctx.r().neg(), 1.0 - ctx.q(), terms)?;
                let rot = engine.rotation();
                let s = rot * plus.value + rot.conj() * minus.value;
                (
                    Some(s - zeta_pole),
                    Some(s),
                    Some(plus.err_est + minus.err_est),
                )
            }
            _ => (None, None, None),
        };

        let tolerance = (10.0 * err).max(1e-6);
        let close = |p: f64| (diff - p).norm() <= tolerance;
        let verdict = match (close(formula), close(density)) {
            (true, true) => Verdict::Both,
            (true, false) => Verdict::Formula,
            (false, true) => Verdict::Density,
            (false, false) => Verdict::Neither,
        };
        Ok(Self {
            measured: diff,
            measured_err: err,
            measured_sharp: sharp,
            symbolic_sharp: engine.pole_coefficient(),
            predicted_formula: Complex64::new(formula, 0.0),
            predicted_density: Complex64::new(density, 0.0),
            abel_oracle,
            abel_oracle_sharp,
            abel_err,
            method: ResidueMethod::Contour,
            verdict,
            tolerance,
        })
    }
}
