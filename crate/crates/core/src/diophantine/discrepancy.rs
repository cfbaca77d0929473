use crate::error::{Error, Result};

/// Star discrepancy of a finite point set, with a bracket for the extreme discrepancy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscrepancyReport {
    pub m: usize,
    pub d_star: f64,
    /// `[D*, 2 D*]`, which always contains the extreme (interval) discrepancy.
    pub d_extreme_bounds: [f64; 2],
}

/// Fractional parts `{gamma m + delta}` for `m = 1..=count`.
pub fn kronecker_points(gamma: f64, delta: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|m| {
            let x = gamma * m as f64 + delta;
            let f = x - x.floor();
            if f >= 1.0 {
                0.0
            } else {
                f
            }
        })
        .collect()
}

/// Exact star discrepancy by the sorted-points formula
/// `max_i max(i/M - x_(i), x_(i) - (i-1)/M)`.
pub fn star_discrepancy(points: &[f64]) -> Result<DiscrepancyReport> {
    if points.is_empty() {
        return Err(Error::Domain("empty point set".into()));
    }
    if let Some(bad) = points.iter().find(|&&x| !(0.0..1.0).contains(&x)) {
        return Err(Error::Domain(format!("point {bad} outside [0, 1)")));
    }
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    let d_star = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let i = i as f64;
            ((i + 1.0) / m - x).max(x - i / m)
        })
        .fold(0.0f64, f64::max);
    Ok(DiscrepancyReport {
        m: xs.len(),
        d_star,
        d_extreme_bounds: [d_star, 2.0 * d_star],
    })
}
