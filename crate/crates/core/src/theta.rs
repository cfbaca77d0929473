//! The theta function `Theta_{v,w}(u)`, the series `Psi`, `Psi_alpha`, and the
//! difference `Phi(u) = Psi_alpha(r,q;u) - gamma Psi(r,q;u)` in direct and
//! Poisson-transformed form.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

use crate::beatty::{fourier_coeff, indicator_table};
use crate::diophantine::{nearest_int, IrrationalNumber, RValue};
use crate::error::{Error, Result};
use crate::special::{EvalResult, Method};
use crate::{e, e_int};

/// Neglect threshold for Gaussian terms.
pub const EPS_QUAD: f64 = 1e-16;
/// Smallest `u` accepted by [`PhiContext::phi_direct`].
pub const U_FLOOR: f64 = 1e-12;
/// Term cap for direct sums.
pub const MAX_TERMS: usize = 50_000_000;

/// Re-seed interval of the multiplicative recurrences.
const CHUNK: i64 = 64;

fn ln_inv_eps() -> f64 {
    -EPS_QUAD.ln()
}

/// Radius `R` with `e^{-pi R^2 u} <= EPS_QUAD`, plus a margin of 2.
fn gauss_radius(u: f64) -> f64 {
    (ln_inv_eps() / (PI * u)).sqrt() + 2.0
}

/// `sum_{m >= R} e^{-pi m^2 u}`, bounded by the first term times a geometric factor.
fn gauss_tail(radius: f64, u: f64) -> f64 {
    let first = (-PI * radius * radius * u).exp();
    first * (1.0 + 1.0 / (2.0 * PI * u * radius))
}

/// `sum_n e^{-pi (n+q)^2 u} weight(n) e(r n)` over `|n + q| <= R(u)`.
///
/// Returns `(sum, sum of |terms|, term count)`. Gaussians and phases use multiplicative
/// recurrences re-seeded every `CHUNK` terms.
fn gauss_sum<W: Fn(i64) -> f64>(q: f64, r: f64, u: f64, weight: W) -> (Complex64, f64, usize) {
    let radius = gauss_radius(u);
    let lo = (-q - radius).ceil() as i64;
    let hi = (radius - q).floor() as i64;
    let step = (-2.0 * PI * u).exp();
    let rot = e(r);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut start = lo;
    while start <= hi {
        let end = (start + CHUNK - 1).min(hi);
        let mut g = 0.0;
        let mut ratio = f64::INFINITY;
        let mut reliable = false;
        let mut ph = e_int(start, r);
        for n in start..=end {
            // far from the peak the recurrence would amplify a subnormal Gaussian by an enormous ratio
            if !(reliable && ratio.is_finite()) {
                let x = n as f64 + q;
                g = (-PI * x * x * u).exp();
                ratio = (-PI * u * (2.0 * x + 1.0)).exp();
            }
            let w = weight(n);
            if w != 0.0 {
                let t = ph * (g * w);
                sum += t;
                mag += g * w.abs();
            }
            reliable = g > 1e-200;
            g *= ratio;
            ratio *= step;
            ph *= rot;
        }
        start = end + 1;
    }
    (sum, mag, (hi - lo + 1).max(0) as usize)
}

fn rounding(mag: f64) -> f64 {
    (CHUNK * CHUNK / 2 + 16) as f64 * f64::EPSILON * mag
}

/// Direct theta sum, shifting the summation index so `v` is reduced to `[0, 1)`.
pub fn theta_direct(v: f64, w: f64, u: f64) -> Complex64 {
    let v0 = v.floor();
    let vf = v - v0;
    // sum_n e^{-pi (n+v)^2 u} e(w n) = e(-w v0) sum_m e^{-pi (m + vf)^2 u} e(w m)
    let (s, _, _) = gauss_sum(vf, w, u, |_| 1.0);
    e(0.5 * v * w) * e(-w * v0) * s
}

/// `Theta_{v,w}(u) = e(vw/2) sum_n e^{-pi (n+v)^2 u} e(w n)`.
///
/// For `u < 1` the inversion `Theta_{v,w}(u) = u^{-1/2} Theta_{w,-v}(1/u)` keeps the sum short.
pub fn theta(v: f64, w: f64, u: f64) -> Result<Complex64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("u = {u} must be positive")));
    }
    Ok(if u >= 1.0 {
        theta_direct(v, w, u)
    } else {
        theta_direct(w, -v, 1.0 / u) / u.sqrt()
    })
}

/// `Psi(r,q;u) = sum_n e^{-pi (n+q)^2 u} e(r n) = e(-qr/2) Theta_{q,r}(u)`.
pub fn psi(r: f64, q: f64, u: f64) -> Result<Complex64> {
    Ok(e(-0.5 * q * r) * theta(q, r, u)?)
}

/// One-sided `Psi^+(r,q;u) = sum_{n>=0} e^{-pi (n+q)^2 u} e(r n)`.
pub fn psi_plus(r: f64, q: f64, u: f64) -> Complex64 {
    gauss_sum(q, r, u, |n| if n >= 0 { 1.0 } else { 0.0 }).0
}

/// Which theta-like series a Mellin integral is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// `Phi = Psi_alpha - gamma Psi`, giving `Z#`.
    Beatty,
    /// `Psi` alone, giving `zeta#`.
    LerchPair,
}

/// Immutable evaluation context for `Phi(u)`: `alpha`, `r`, `q`, the lattice hit and the
/// small-`u` amplitude `A`.
#[derive(Debug)]
pub struct PhiContext {
    alpha: IrrationalNumber,
    r: RValue,
    r_val: f64,
    q: f64,
    gamma: f64,
    hit: Option<(i64, i64)>,
    amplitude: Complex64,
    // chi(m) for m >= 0, grown on demand; chi(-m-1) = chi(m)
    chi: RwLock<Arc<Vec<f64>>>,
}

/// Scan range and tolerance for lattice detection of non-exact `r`.
pub const LATTICE_K_MAX: u64 = 1_000_000;
pub const LATTICE_TOL: f64 = 1e-9;

impl PhiContext {
    pub fn new(alpha: IrrationalNumber, r: RValue, q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("q = {q} must lie in (0, 1)")));
        }
        let gamma = alpha.gamma();
        let hit = r.decompose(&alpha, LATTICE_K_MAX, LATTICE_TOL)?;
        let amplitude = match hit {
            Some((k, _)) if k != 0 => fourier_coeff(gamma, k),
            _ => Complex64::new(0.0, 0.0),
        };
        Ok(Self {
            r_val: r.to_f64(gamma),
            alpha,
            r,
            q,
            gamma,
            hit,
            amplitude,
            chi: RwLock::new(Arc::new(Vec::new())),
        })
    }

    pub fn alpha(&self) -> &IrrationalNumber {
        &self.alpha
    }

    pub fn r(&self) -> RValue {
        self.r
    }

    pub fn r_f64(&self) -> f64 {
        self.r_val
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `(k, l)` with `r = k gamma + l`, if `r` is on the lattice.
    pub fn hit(&self) -> Option<(i64, i64)> {
        self.hit
    }

    /// `A = X~_gamma(k)` for a hit with `k != 0`, else 0.
    pub fn small_u_amplitude(&self) -> Complex64 {
        self.amplitude
    }

    /// `r` is an integer (exactly, or as a `k = 0` lattice hit).
    pub fn r_is_integer(&self) -> bool {
        matches!(self.hit, Some((0, _)))
    }

    fn chi_table(&self, len: usize) -> Result<Arc<Vec<f64>>> {
        {
            let t = self.chi.read().expect("chi table lock");
            if t.len() >= len {
                return Ok(Arc::clone(&t));
            }
        }
        let mut guard = self.chi.write().expect("chi table lock");
        if guard.len() < len {
            let want = len.max(guard.len() * 2).max(1024);
            *guard = Arc::new(indicator_table(&self.alpha, want)?);
        }
        Ok(Arc::clone(&guard))
    }

    fn table_for(&self, u: f64) -> Result<(Arc<Vec<f64>>, usize)> {
        let radius = gauss_radius(u);
        let terms = (2.0 * radius + 2.0) as usize;
        if terms > MAX_TERMS {
            return Err(Error::BudgetExceeded(format!(
                "{terms} terms needed at u = {u:e}"
            )));
        }
        let len = radius as usize + 3;
        Ok((self.chi_table(len)?, terms))
    }

    fn chi_at(table: &[f64], n: i64) -> f64 {
        if n >= 0 {
            table[n as usize]
        } else {
            table[(-n - 1) as usize]
        }
    }

    /// `Psi_alpha(r,q;u) = sum_n e^{-pi (n+q)^2 u} ind_alpha(n) e(r n)`.
    pub fn psi_alpha(&self, u: f64) -> Result<EvalResult> {
        self.check_u(u)?;
        let (table, _) = self.table_for(u)?;
        let (v, mag, _) = gauss_sum(self.q, self.r_val, u, |n| Self::chi_at(&table, n));
        let err = 2.0 * gauss_tail(gauss_radius(u) - 1.0, u) + rounding(mag);
        Ok(EvalResult::new(v, err, Method::DirectSeries))
    }

    /// One-sided `Psi_alpha^+(r,q;u)` over `n >= 0`, for the given twist and shift.
    pub fn psi_alpha_plus(&self, r: f64, q: f64, u: f64) -> Result<Complex64> {
        self.check_u(u)?;
        let (table, _) = self.table_for(u)?;
        Ok(gauss_sum(q, r, u, |n| if n >= 0 { table[n as usize] } else { 0.0 }).0)
    }

    fn check_u(&self, u: f64) -> Result<()> {
        if !(u >= U_FLOOR) || !u.is_finite() {
            return Err(Error::Domain(format!(
                "u = {u:e} below the floor {U_FLOOR:e}"
            )));
        }
        Ok(())
    }

    /// `Phi(u)` summed directly with exact indicator values; cost `O(u^{-1/2})`.
    pub fn phi_direct(&self, u: f64) -> Result<EvalResult> {
        self.check_u(u)?;
        let (table, _) = self.table_for(u)?;
        let g = self.gamma;
        let (v, mag, _) = gauss_sum(self.q, self.r_val, u, |n| Self::chi_at(&table, n) - g);
        let err = 2.0 * g.max(1.0 - g) * gauss_tail(gauss_radius(u) - 1.0, u) + rounding(mag);
        Ok(EvalResult::new(v, err, Method::DirectSeries))
    }

    /// `Psi(r - k gamma, q; u)` for the `k`-th Fourier mode through the inversion formula:
    /// `u^{-1/2} sum_j e(-q (d + j)) e^{-pi (d + j)^2 / u}` with `d` the signed distance of
    /// `r - k gamma` to its nearest integer.
    fn mode_offset(&self, k: i64) -> f64 {
        match (self.r, self.hit) {
            (RValue::Lattice { k: k0, .. }, _) | (_, Some((k0, _))) if k == k0 => 0.0,
            (RValue::Lattice { k: k0, .. }, _) => {
                let (_, nu, d) = nearest_int((k0 - k) as f64 * self.gamma);
                nu as f64 * d
            }
            _ => {
                let (_, nu, d) = nearest_int(self.r_val - k as f64 * self.gamma);
                nu as f64 * d
            }
        }
    }

    /// `Phi` from the Fourier expansion of the indicator followed by Poisson summation:
    /// `Phi(u) = u^{-1/2} sum_{k != 0} w_k X~(k) sum_j e(-q(d_k + j)) e^{-pi (d_k + j)^2 / u}`.
    ///
    /// `w_k = exp(-a k^2 / K^2)` with `a = ln(1/EPS_QUAD)` is a Gaussian window; the
    /// error estimate combines the windowed-model error at every lattice point `n`,
    /// the neglected modes and rounding.
    pub fn phi_transformed(&self, u: f64, k_max: u64) -> Result<EvalResult> {
        self.check_u(u)?;
        if k_max < 2 {
            return Err(Error::Domain("K must be at least 2".into()));
        }
        let a = ln_inv_eps();
        let kf = k_max as f64;
        let reach = (u * a / PI).sqrt(); // e^{-pi d^2 / u} >= EPS_QUAD  <=>  |d| <= reach
        let inv_u = 1.0 / u;
        // e^{-pi (d+j)^2/u} = e^{-pi d^2/u} (e^{-2 pi d/u})^j e^{-pi j^2/u}, tabulated in j when no factor can overflow
        let jr = reach.ceil() as i64 + 1;
        let factored = PI * ((jr * jr + jr) as f64 + 1.0) * inv_u < 650.0;
        let (gauss_j, table): (Vec<f64>, Vec<Complex64>) = if factored {
            (-jr..=jr)
                .map(|j| {
                    let g = (-PI * (j * j) as f64 * inv_u).exp();
                    (g, e(-self.q * j as f64) * g)
                })
                .unzip()
        } else {
            (Vec::new(), Vec::new())
        };
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        // X~(k) = conj(z_k) Im(z_k) / (pi k) with z_k = e(k gamma / 2), and X~(-k) = conj(X~(k))
        let half_rot = e(0.5 * self.gamma);
        let mut z = Complex64::new(1.0, 0.0);
        let (mut w, mut w_ratio) = (1.0, 1.0);
        let w_ratio_step = (-2.0 * a / (kf * kf)).exp();
        for k in 1..=k_max as i64 {
            // w_k = exp(-a k^2 / K^2) advances by the ratio w_{k+1}/w_k = exp(-a (2k+1) / K^2)
            if k % CHUNK == 1 {
                z = e_int(k, 0.5 * self.gamma);
                w = (-a * (k as f64 / kf).powi(2)).exp();
                w_ratio = (-a * (2 * k + 1) as f64 / (kf * kf)).exp();
            } else {
                z *= half_rot;
                w *= w_ratio;
                w_ratio *= w_ratio_step;
            }
            let amp = z.im / (PI * k as f64) * w;
            let coef_pos = z.conj() * amp;
            for (k, coef) in [(k, coef_pos), (-k, coef_pos.conj())] {
                let d = self.mode_offset(k);
                if d.abs() > reach {
                    continue;
                }
                let j_lo = (-reach - d).ceil() as i64;
                let j_hi = (reach - d).floor() as i64;
                let mut inner = Complex64::new(0.0, 0.0);
                let mut gsum = 0.0;
                if factored {
                    let base = (-PI * d * d * inv_u).exp();
                    let step = (-2.0 * PI * d * inv_u).exp();
                    let ph = e(-self.q * d);
                    let (lo, hi) = ((j_lo + jr) as usize, (j_hi + jr) as usize);
                    let mut p = base * step.powi(j_lo as i32);
                    for (t, gj) in table[lo..=hi].iter().zip(&gauss_j[lo..=hi]) {
                        inner += t * p;
                        gsum += p * gj;
                        p *= step;
                    }
                    inner *= ph;
                } else {
                    for j in j_lo..=j_hi {
                        let x = d + j as f64;
                        let g = (-PI * x * x * inv_u).exp();
                        inner += e(-self.q * x) * g;
                        gsum += g;
                    }
                }
                mag += gsum * amp.abs();
                sum += coef * inner;
            }
        }
        let scale = u.sqrt().recip();
        let value = sum * scale;
        // windowed model error: the smoothed pulse misses each jump at distance d by erfc(pi K d / sqrt a)/2
        let sa = a.sqrt();
        let radius = gauss_radius(u);
        let lo = (-self.q - radius).ceil() as i64;
        let hi = (radius - self.q).floor() as i64;
        let mut model = 0.0;
        for n in lo..=hi {
            let x = n as f64 + self.q;
            let mut miss = 0.0;
            if n != 0 {
                let z = PI * kf * crate::diophantine::dist_to_int(n as f64 * self.gamma) / sa;
                if z < 6.5 {
                    miss += 0.5 * libm::erfc(z);
                }
            }
            if n != -1 {
                let z = PI * kf * crate::diophantine::dist_to_int((n + 1) as f64 * self.gamma) / sa;
                if z < 6.5 {
                    miss += 0.5 * libm::erfc(z);
                }
            }
            if miss > 0.0 {
                model += miss * (-PI * x * x * u).exp();
            }
        }
        model += 2.0 * gauss_tail(radius - 1.0, u);
        // skipped modes contribute at most EPS_QUAD per unit coefficient mass and per image
        let neglected = scale * 3.0 * EPS_QUAD * (2.0 / PI) * ((2.0 * kf).ln() + 1.0);
        let err = model + neglected + 32.0 * f64::EPSILON * mag * scale;
        Ok(EvalResult::new(value, err, Method::Continuation))
    }

    /// `Phi(u)` by the authoritative representation for the given switch point.
    pub fn phi(&self, u: f64, u_switch: f64, k_max: u64) -> Result<EvalResult> {
        if u >= u_switch {
            self.phi_direct(u)
        } else {
            self.phi_transformed(u, k_max)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    const G: f64 = 0.618_033_988_749_894_9;

    fn golden_ctx(r: RValue, q: f64) -> PhiContext {
        PhiContext::new(IrrationalNumber::golden(), r, q).unwrap()
    }

    #[test]
    fn theta_values() {
        // oracle: plain summation of e^{-pi n^2} over |n| <= 10
        let direct: f64 = (-10i32..=10).map(|n| (-PI * (n * n) as f64).exp()).sum();
        let t = theta(0.0, 0.0, 1.0).unwrap();
        assert!((t.re - direct).abs() < 1e-14 && t.im.abs() < 1e-16);
        assert!((t.re - 1.086_434_811_213_308).abs() < 1e-14);
        assert!((theta(1.0, 0.0, 1.0).unwrap() - t).norm() < 1e-12);
        let lhs = theta(0.3, 0.7, 0.5).unwrap();
        let rhs = theta_direct(0.7, -0.3, 2.0) / 0.5f64.sqrt();
        assert!((lhs - rhs).norm() < 1e-12);
        assert!((theta_direct(0.3, 0.7, 0.5) - rhs).norm() < 1e-12);
        assert!(theta(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn functional_equation_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let (v, w, u) = (
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.05..20.0),
            );
            let lhs = theta_direct(v, w, u);
            let rhs = theta_direct(w, -v, 1.0 / u) / u.sqrt();
            assert!((lhs - rhs).norm() <= 1e-12, "v={v} w={w} u={u}");
        }
    }

    #[test]
    fn psi_values_and_split() {
        // 2 sum_{n>=0} e^{-pi (n+1/2)^2}
        let direct: f64 = 2.0
            * (0..10)
                .map(|n| (-PI * (n as f64 + 0.5).powi(2)).exp())
                .sum::<f64>();
        let p = psi(0.0, 0.5, 1.0).unwrap();
        assert!((p.re - direct).abs() < 1e-14);
        assert!((p.re - 0.913_579).abs() < 1e-6);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..200 {
            let (r, q, u) = (
                rng.gen_range(-2.0..2.0),
                rng.gen_range(0.01..0.99),
                rng.gen_range(0.05..10.0),
            );
            let whole = psi(r, q, u).unwrap();
            let split = psi_plus(r, q, u) + e(-r) * psi_plus(-r, 1.0 - q, u);
            assert!((whole - split).norm() < 1e-12);
        }
    }

    #[test]
    fn psi_envelope() {
        for i in 0..=18 {
            let q = 0.05 + 0.05 * i as f64;
            for &u in &[1.0, 1.5, 3.0, 7.0, 20.0] {
                let bound = 3.0 * (-PI * q.min(1.0 - q).powi(2) * u).exp();
                for &r in &[0.0, 0.3, G] {
                    assert!(psi(r, q, u).unwrap().norm() <= bound);
                }
            }
        }
        let ctx = golden_ctx(RValue::Real(0.0), 0.5);
        assert!(ctx.psi_alpha(10.0).unwrap().value.norm() <= 3.0 * (-PI * 0.25 * 10.0).exp());
    }

    #[test]
    fn psi_alpha_and_phi_at_one() {
        let ctx = golden_ctx(RValue::Real(0.0), 0.5);
        // oracle: chi(0) = chi(-1) = 1/2, chi(n) from Beatty membership, |n| <= 6
        let member = |n: i64| -> f64 {
            match n {
                0 | -1 => 0.5,
                n if n > 0 => (G * (n + 1) as f64).floor() - (G * n as f64).floor(),
                n => (G * (-n) as f64).floor() - (G * (-n - 1) as f64).floor(),
            }
        };
        let oracle: f64 = (-7i64..=6)
            .map(|n| (-PI * (n as f64 + 0.5).powi(2)).exp() * member(n))
            .sum();
        let pa = ctx.psi_alpha(1.0).unwrap().value;
        assert!((pa.re - oracle).abs() < 1e-14);
        assert!((pa.re - 0.457_640).abs() < 1e-5);
        let phi = ctx.phi_direct(1.0).unwrap();
        assert!((phi.value.re - (oracle - G * psi(0.0, 0.5, 1.0).unwrap().re)).abs() < 1e-14);
        assert!((phi.value.re + 0.106_98).abs() < 1e-4);
        assert!(phi.value.im.abs() < 1e-13);
        assert!(ctx.phi_direct(20.0).unwrap().value.norm() <= 1e-6);
        // q = 1/2, r = 0: Psi_alpha = 2 Psi_alpha^+
        for &u in &[0.1, 0.7, 2.0] {
            let full = ctx.psi_alpha(u).unwrap().value;
            let half = ctx.psi_alpha_plus(0.0, 0.5, u).unwrap();
            assert!((full - 2.0 * half).norm() < 1e-12);
        }
    }

    #[test]
    fn psi_alpha_split() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let (r, q, u) = (
                rng.gen_range(-1.0..1.0),
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.05..5.0),
            );
            let ctx = golden_ctx(RValue::Real(r), q);
            let whole = ctx.psi_alpha(u).unwrap().value;
            let split = ctx.psi_alpha_plus(r, q, u).unwrap()
                + e(-r) * ctx.psi_alpha_plus(-r, 1.0 - q, u).unwrap();
            assert!((whole - split).norm() < 1e-12);
        }
    }

    #[test]
    fn dual_representation_examples() {
        let ctx = golden_ctx(RValue::Lattice { k: 1, l: 0 }, 0.5);
        for &u in &[0.3, 1.0] {
            let d = ctx.phi_direct(u).unwrap();
            let t = ctx.phi_transformed(u, 1_000_000).unwrap();
            assert!((d.value - t.value).norm() <= 1e-8);
            assert!((d.value - t.value).norm() <= d.err_est + t.err_est);
        }
    }

    #[test]
    fn dual_representation_grid() {
        for r in [
            RValue::Real(0.0),
            RValue::Lattice { k: 1, l: 0 },
            RValue::Rational { num: 1, den: 3 },
        ] {
            for q in [0.25, 0.5, 0.9] {
                let ctx = golden_ctx(r, q);
                for i in 0..6 {
                    let u = 0.3 * 10f64.powf(i as f64 / 5.0);
                    let d = ctx.phi_direct(u).unwrap();
                    let t = ctx.phi_transformed(u, 10_000).unwrap();
                    assert!(
                        (d.value - t.value).norm() <= d.err_est + t.err_est,
                        "r={r} q={q} u={u}"
                    );
                }
            }
        }
    }

    #[test]
    fn amplitudes() {
        // integral of e(-t) over (0, gamma)
        let closed = (Complex64::new(1.0, 0.0) - e(-G)) / Complex64::new(0.0, 2.0 * PI);
        assert!(
            (golden_ctx(RValue::Lattice { k: 1, l: 0 }, 0.5).small_u_amplitude() - closed).norm()
                < 1e-15
        );
        assert_eq!(
            golden_ctx(RValue::Rational { num: 1, den: 3 }, 0.5)
                .small_u_amplitude()
                .norm(),
            0.0
        );
        assert_eq!(
            golden_ctx(RValue::Real(2.0), 0.5)
                .small_u_amplitude()
                .norm(),
            0.0
        );
        assert_eq!(golden_ctx(RValue::Real(2.0), 0.5).hit(), Some((0, 2)));
        assert!(PhiContext::new(IrrationalNumber::golden(), RValue::Real(0.0), 1.0).is_err());
    }

    #[test]
    fn resonant_floor_is_bounded() {
        // u^{1/2} Phi(u) -> A, with the remainder O(u^{1/2}) from the oscillatory floor
        let ctx = golden_ctx(RValue::Lattice { k: 1, l: 0 }, 0.5);
        let a = ctx.small_u_amplitude();
        let bound = 1.0 + a.norm();
        let mut prev = f64::INFINITY;
        for &u in &[1e-4, 1e-6, 1e-8, 1e-10] {
            let v = ctx.phi_direct(u).unwrap().value * u.sqrt();
            let dev = (v - a).norm();
            assert!(dev <= bound * u.sqrt(), "u={u} dev={dev}");
            assert!(v.norm() <= bound);
            if u <= 1e-6 {
                assert!(dev < prev);
            }
            prev = dev;
        }
        let t = ctx.phi_transformed(1e-8, 1_000_000).unwrap().value * 1e-4;
        assert!((t - a).norm() <= 1e-4 * bound);

        let third = golden_ctx(RValue::Rational { num: 1, den: 3 }, 0.5);
        let hits = crate::diophantine::near_hits(G, 1.0 / 3.0, 1_000_000, 1e-3);
        let hit_mass: f64 = hits.iter().map(|h| fourier_coeff(G, h.k).norm()).sum();
        for &u in &[1e-6, 1e-8, 1e-10] {
            let v = third.phi_direct(u).unwrap().value * u.sqrt();
            assert!(v.norm() <= 1.0 + hit_mass);
        }
        let t = third.phi_transformed(1e-8, 1_000_000).unwrap();
        assert!(t.value.norm() * 1e-4 <= hit_mass + t.err_est * 1e-4 + 1e-3);
    }

    proptest! {
        #[test]
        fn functional_equation_prop(v in -3.0f64..3.0, w in -3.0f64..3.0, u in 0.05f64..20.0) {
            let lhs = theta_direct(v, w, u);
            let rhs = theta_direct(w, -v, 1.0 / u) / u.sqrt();
            prop_assert!((lhs - rhs).norm() <= 1e-11);
        }
    }
}
