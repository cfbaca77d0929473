use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::irrational::IrrationalNumber;
use super::surd::Period;
use crate::error::{Error, Result};

/// Partial quotients `[a0; a1, ..., a_depth]` plus the detected period, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfExpansion {
    pub quotients: Vec<u64>,
    pub period: Option<Period>,
}

/// Continued-fraction expansion to `depth` quotients after `a0`.
///
/// Quadratic inputs use the exact `(P + sqrt D)/Q` recurrence; decimal inputs
/// only return quotients certified by both ends of their uncertainty interval.
pub fn cf_expand(x: &IrrationalNumber, depth: usize) -> Result<CfExpansion> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    if let Some(surd) = x.as_surd() {
        let (quotients, period) = surd.continued_fraction(depth);
        return Ok(CfExpansion {
            quotients,
            period: Some(period),
        });
    }
    let cached = x.cached_cf();
    if cached.len() < depth + 1 {
        return Err(Error::PrecisionExhausted(format!(
            "only {} quotients certified by the given digits, {} requested",
            cached.len().saturating_sub(1),
            depth
        )));
    }
    Ok(CfExpansion {
        quotients: cached[..=depth].to_vec(),
        period: None,
    })
}

/// Convergents `(p_k, q_k)` for `k = 0..n`, from the standard three-term recurrence.
pub fn convergents(cf: &[u64], n: usize) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::with_capacity(n.min(cf.len()));
    let (mut p2, mut p1) = (BigUint::zero(), BigUint::one());
    let (mut q2, mut q1) = (BigUint::one(), BigUint::zero());
    for &a in cf.iter().take(n) {
        let p = BigUint::from(a) * &p1 + &p2;
        let q = BigUint::from(a) * &q1 + &q2;
        out.push((p.clone(), q.clone()));
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    out
}

/// Result of [`estimate_type`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TypeEstimate {
    pub tau: f64,
    pub depth_used: usize,
    pub periodic: bool,
}

fn ln_big(x: &BigUint) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = x.bits();
            let shifted = x >> (bits - 60);
            shifted.to_f64().unwrap().ln() + (bits - 60) as f64 * std::f64::consts::LN_2
        }
    }
}

/// Type estimate from convergent denominators: `max(1, max_k ln q_{k+1} / ln q_k)`.
///
/// The ratio tracks `||q_k gamma|| ~ 1/q_{k+1}`; it is an estimate, not a certificate.
pub fn estimate_type_from_cf(cf: &[u64], depth: usize) -> TypeEstimate {
    let depth = depth.min(cf.len().saturating_sub(1));
    let conv = convergents(cf, depth + 1);
    let mut tau = 1.0f64;
    for k in 2..depth {
        let lq = ln_big(&conv[k].1);
        if lq <= 0.0 {
            continue;
        }
        tau = tau.max(ln_big(&conv[k + 1].1) / lq);
    }
    TypeEstimate {
        tau,
        depth_used: depth,
        periodic: false,
    }
}

/// Type estimate for `x`; exactly 1 for (periodic) quadratic irrationals.
pub fn estimate_type(x: &IrrationalNumber, depth: usize) -> TypeEstimate {
    let depth = depth.max(3);
    if x.period().is_some() {
        return TypeEstimate {
            tau: 1.0,
            depth_used: depth,
            periodic: true,
        };
    }
    estimate_type_from_cf(x.cached_cf(), depth)
}
