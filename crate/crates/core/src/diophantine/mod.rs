//! Diophantine toolkit: exact surds, continued fractions, type estimates,
//! star discrepancy and near-resonance enumeration.

mod cf;
mod discrepancy;
mod irrational;
mod surd;

pub use cf::{
    cf_expand, convergents, estimate_type, estimate_type_from_cf, CfExpansion, TypeEstimate,
};
pub use discrepancy::{kronecker_points, star_discrepancy, DiscrepancyReport};
pub use irrational::{DecimalReal, IrrationalNumber};
pub use surd::{Period, QuadraticSurd};

use std::fmt;

use crate::error::{Error, Result};

/// `||t||`, the distance from `t` to the nearest integer.
#[inline]
pub fn dist_to_int(t: f64) -> f64 {
    let f = t - t.floor();
    f.min(1.0 - f)
}

/// `(<t>, nu, ||t||)` with `t = <t> + nu ||t||`; half-integers round down with `nu = +1`.
#[inline]
pub fn nearest_int(t: f64) -> (i64, i8, f64) {
    let fl = t.floor();
    let f = t - fl;
    if f <= 0.5 {
        (fl as i64, 1, f)
    } else {
        (fl as i64 + 1, -1, 1.0 - f)
    }
}

/// A frequency `k != 0` with `r - k gamma = nearest + nu * dist`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct NearHit {
    pub k: i64,
    pub dist: f64,
    pub nu: i8,
    pub nearest: i64,
}

impl NearHit {
    fn at(gamma: f64, r: f64, k: i64) -> Self {
        let (nearest, nu, dist) = nearest_int(r - k as f64 * gamma);
        Self {
            k,
            dist,
            nu,
            nearest,
        }
    }

    fn order(a: &Self, b: &Self) -> std::cmp::Ordering {
        a.dist
            .total_cmp(&b.dist)
            .then(a.k.unsigned_abs().cmp(&b.k.unsigned_abs()))
            .then(b.k.cmp(&a.k))
    }
}

/// All `0 < |k| <= K` with `||r - k gamma|| <= T`, closest first
/// (ties: smaller `|k|`, then positive `k`).
pub fn near_hits(gamma: f64, r: f64, k_max: u64, threshold: f64) -> Vec<NearHit> {
    let k_max = k_max as i64;
    let mut hits: Vec<NearHit> = (1..=k_max)
        .flat_map(|k| [k, -k])
        .filter_map(|k| {
            let h = NearHit::at(gamma, r, k);
            (h.dist <= threshold).then_some(h)
        })
        .collect();
    hits.sort_by(NearHit::order);
    hits
}

/// `(delta, kappa)`: the closest approach `min_{0<|k|<=K} ||r - k gamma||` and its minimizer.
pub fn delta_kappa(gamma: f64, r: f64, k_max: u64) -> (f64, i64) {
    let k_max = (k_max as i64).max(1);
    let best = (1..=k_max)
        .flat_map(|k| [k, -k])
        .map(|k| NearHit::at(gamma, r, k))
        .min_by(NearHit::order)
        .expect("k range is nonempty");
    (best.dist, best.k)
}

/// Finds `(k, l)` with `|r - k gamma - l| <= tol` and `|k| <= K_max` (floating-point scan).
///
/// Returns `Ambiguous` if more than one `k` qualifies, since the tolerance then
/// cannot separate lattice points.
pub fn lattice_decompose(gamma: f64, r: f64, k_max: u64, tol: f64) -> Result<Option<(i64, i64)>> {
    let k_max = k_max as i64;
    let mut found: Option<(i64, i64)> = None;
    for k in std::iter::once(0).chain((1..=k_max).flat_map(|k| [k, -k])) {
        let (l, _, d) = nearest_int(r - k as f64 * gamma);
        if d <= tol {
            if let Some((k0, _)) = found {
                return Err(Error::Ambiguous(format!(
                    "both k = {k0} and k = {k} are within {tol:e} of r = {r}"
                )));
            }
            found = Some((k, l));
        }
    }
    Ok(found)
}

/// A twist parameter `r`, kept exact when it is rational or a lattice point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RValue {
    Real(f64),
    Rational {
        num: i64,
        den: i64,
    },
    /// `r = k gamma + l`.
    Lattice {
        k: i64,
        l: i64,
    },
}

impl RValue {
    /// Parses a decimal, `p/q`, `gamma` or `lattice:k,l`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "gamma" {
            return Ok(RValue::Lattice { k: 1, l: 0 });
        }
        if let Some(rest) = spec.strip_prefix("lattice:") {
            let (k, l) = rest
                .split_once(',')
                .and_then(|(k, l)| Some((k.trim().parse().ok()?, l.trim().parse().ok()?)))
                .ok_or_else(|| Error::Parse(format!("expected lattice:k,l, got '{spec}'")))?;
            return Ok(RValue::Lattice { k, l });
        }
        if let Some((p, q)) = spec.split_once('/') {
            let num: i64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in '{spec}'")))?;
            let den: i64 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in '{spec}'")))?;
            if den == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            let g = num_integer::gcd(num, den) * den.signum();
            return Ok(RValue::Rational {
                num: num / g,
                den: den / g,
            });
        }
        let v: f64 = spec
            .parse()
            .map_err(|_| Error::Parse(format!("bad r '{spec}'")))?;
        if !v.is_finite() {
            return Err(Error::Parse(format!("r must be finite, got '{spec}'")));
        }
        Ok(RValue::Real(v))
    }

    pub fn to_f64(&self, gamma: f64) -> f64 {
        match *self {
            RValue::Real(v) => v,
            RValue::Rational { num, den } => num as f64 / den as f64,
            RValue::Lattice { k, l } => k as f64 * gamma + l as f64,
        }
    }

    /// Lattice decomposition `r = k gamma + l`.
    ///
    /// Exact for `Lattice` and, when `alpha` is quadratic, for `Rational` (an irrational
    /// `gamma` forces `k = 0`). `Real` values fall back to the tolerance scan.
    pub fn decompose(
        &self,
        alpha: &IrrationalNumber,
        k_max: u64,
        tol: f64,
    ) -> Result<Option<(i64, i64)>> {
        match *self {
            RValue::Lattice { k, l } => Ok(Some((k, l))),
            RValue::Rational { num, den } if alpha.is_quadratic() => {
                Ok((den == 1).then_some((0, num)))
            }
            _ => lattice_decompose(alpha.gamma(), self.to_f64(alpha.gamma()), k_max, tol),
        }
    }

    /// `-r`, preserving exactness.
    pub fn neg(&self) -> Self {
        match *self {
            RValue::Real(v) => RValue::Real(-v),
            RValue::Rational { num, den } => RValue::Rational { num: -num, den },
            RValue::Lattice { k, l } => RValue::Lattice { k: -k, l: -l },
        }
    }
}

impl fmt::Display for RValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RValue::Real(v) => write!(f, "{v}"),
            RValue::Rational { num, den } => write!(f, "{num}/{den}"),
            RValue::Lattice { k, l } => write!(f, "lattice:{k},{l}"),
        }
    }
}
