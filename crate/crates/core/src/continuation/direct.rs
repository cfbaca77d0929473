//! Dirichlet-series evaluation of `Z_alpha(r,q;s)` and the Abel-summation oracle.

use num_complex::Complex64;

use crate::beatty::fourier_coeff;
use crate::diophantine::{IrrationalNumber, RValue};
use crate::e_int;
use crate::error::{Error, Result};
use crate::special::{hurwitz_zeta, EvalResult, Method};
use crate::theta::{LATTICE_K_MAX, LATTICE_TOL};

const N_START: u64 = 1 << 16;
const N_CAP: u64 = 1 << 24;

/// Tail model used by [`z_fluctuation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluctuationMode {
    /// Exact mean `gamma - 1/2` and a second summation by parts; valid for `Re s > -1`.
    SecondOrderExact,
    /// Mean of `B(n)` estimated over a window; valid for `Re s > 0`.
    FirstOrderEstimated,
}

fn term(n: f64, q: f64, s: Complex64) -> Complex64 {
    (-s * (n + q).ln()).exp()
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("q = {q} must lie in (0, 1)")))
    }
}

/// Mean density `mu` of `chi(n) e(r n)`: `gamma`, `X~(k)` or 0.
fn mean_density(alpha: &IrrationalNumber, hit: Option<(i64, i64)>) -> Complex64 {
    match hit {
        Some((0, _)) => Complex64::new(alpha.gamma(), 0.0),
        Some((k, _)) => fourier_coeff(alpha.gamma(), k),
        None => Complex64::new(0.0, 0.0),
    }
}

/// Incremental generator of `chi(n)` for `n >= 1`.
struct Chi<'a> {
    alpha: &'a IrrationalNumber,
    n: i64,
    prev: i64,
}

impl<'a> Chi<'a> {
    fn new(alpha: &'a IrrationalNumber) -> Result<Self> {
        Ok(Self {
            alpha,
            n: 0,
            prev: alpha.floor_mul_gamma(1)?,
        })
    }

    /// Advances to the next `n` and returns `(n, chi(n), floor((n+1) gamma))`.
    fn next(&mut self) -> Result<(i64, f64, i64)> {
        self.n += 1;
        let next = self.alpha.floor_mul_gamma(self.n + 1)?;
        let c = (next - self.prev) as f64;
        self.prev = next;
        Ok((self.n, c, next))
    }
}

#[derive(Default)]
struct Window {
    sum: Complex64,
    count: f64,
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Window {
    fn reset(&mut self) {
        *self = Window {
            lo: (f64::INFINITY, f64::INFINITY),
            hi: (f64::NEG_INFINITY, f64::NEG_INFINITY),
            ..Default::default()
        };
    }

    fn push(&mut self, b: Complex64) {
        self.sum += b;
        self.count += 1.0;
        self.lo = (self.lo.0.min(b.re), self.lo.1.min(b.im));
        self.hi = (self.hi.0.max(b.re), self.hi.1.max(b.im));
    }

    fn mean(&self) -> Complex64 {
        self.sum / self.count
    }

    /// `sup |B - mean|` over the window, from the bounding box.
    fn deviation(&self) -> f64 {
        let m = self.mean();
        let dr = (self.hi.0 - m.re).max(m.re - self.lo.0);
        let di = (self.hi.1 - m.im).max(m.im - self.lo.1);
        dr.hypot(di)
    }
}

/// `Z_alpha(r,q;s) = sum_{n in B(alpha)} e(r n) (n+q)^{-s}` for `Re s > 1` at the default tolerance.
pub fn z_direct(alpha: &IrrationalNumber, r: RValue, q: f64, s: Complex64) -> Result<EvalResult> {
    z_direct_tol(alpha, r, q, s, 1e-11)
}

/// As [`z_direct`], doubling the cutoff `N` until the tail estimate is below `tol`.
///
/// The tail is `mu sum_{n>N} (n+q)^{-s}` (midpoint integral) plus a summation by parts of the
/// fluctuation, whose partial sums `B(n)` stay bounded; their mean over `(N/2, N]` stands in
/// for the limit.
pub fn z_direct_tol(
    alpha: &IrrationalNumber,
    r: RValue,
    q: f64,
    s: Complex64,
    tol: f64,
) -> Result<EvalResult> {
    check_q(q)?;
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "direct series needs Re s > 1, got {s}"
        )));
    }
    let hit = r.decompose(alpha, LATTICE_K_MAX, LATTICE_TOL)?;
    let mu = mean_density(alpha, hit);
    let r_val = r.to_f64(alpha.gamma());
    let sigma = s.re;

    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut b = Complex64::new(0.0, 0.0);
    let mut chi = Chi::new(alpha)?;
    let mut win = Window::default();
    win.reset();
    let mut checkpoint = N_START;
    let result = loop {
        let (n, c, _) = chi.next()?;
        let nu = n as u64;
        let t = if c != 0.0 {
            e_int(n, r_val) * term(n as f64, q, s)
        } else {
            Complex64::new(0.0, 0.0)
        };
        sum += t;
        abs_sum += t.norm();
        b += c * e_int(n, r_val) - mu;
        if nu > checkpoint / 2 {
            win.push(b);
        }
        if nu == checkpoint {
            let nf = n as f64;
            let f_next = term(nf + 1.0, q, s);
            let mid = (-(s - 1.0) * (nf + 0.5 + q).ln()).exp() / (s - 1.0);
            let mid_err =
                (s * (s + 1.0)).norm() / (24.0 * (sigma + 1.0)) * (nf + q).powf(-sigma - 1.0);
            let beta = win.mean();
            let value = sum + mu * mid + (beta - b) * f_next;
            let err = mu.norm() * mid_err
                + 2.0 * win.deviation() * s.norm() / sigma * (nf + q).powf(-sigma)
                + 4.0 * f64::EPSILON * abs_sum;
            if err <= tol || checkpoint >= N_CAP {
                break EvalResult::new(value, err, Method::DirectSeries);
            }
            checkpoint *= 2;
            win.reset();
        }
    };
    Ok(result)
}

/// Abel-summation value of `Z_alpha(r,q;s)`, independent of the Mellin route.
///
/// Writes `Z = mu (zeta(s,q) - q^{-s}) + sum_{n>=1} (chi(n) e(r n) - mu) (n+q)^{-s}`
/// and sums the bounded-fluctuation series by parts. For `r` an integer the mean and the partial
/// sums are known in closed form (`B(n) = gamma - {(n+1) gamma}`), which allows a second
/// summation by parts and reaches `Re s > -1`.
pub fn z_fluctuation(
    alpha: &IrrationalNumber,
    r: RValue,
    q: f64,
    s: Complex64,
    n_max: u64,
) -> Result<(EvalResult, FluctuationMode)> {
    check_q(q)?;
    let hit = r
        .decompose(alpha, LATTICE_K_MAX, LATTICE_TOL)?
        .ok_or_else(|| Error::UnsupportedR(format!("r = {r} is not on the lattice gamma Z + Z")))?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtInput("Z_alpha has a pole at s = 1".into()));
    }
    let mode = if hit.0 == 0 {
        FluctuationMode::SecondOrderExact
    } else {
        FluctuationMode::FirstOrderEstimated
    };
    let sigma_floor = if mode == FluctuationMode::SecondOrderExact {
        -1.0
    } else {
        0.0
    };
    if s.re <= sigma_floor {
        return Err(Error::RegionUnsupported(format!(
            "Abel oracle needs Re s > {sigma_floor}, got {s}"
        )));
    }
    let n_max = n_max.max(16);
    let g = alpha.gamma();
    let mu = mean_density(alpha, Some(hit));
    let r_val = r.to_f64(g);
    let sigma = s.re;
    let q_term = term(0.0, q, s);
    let hz = hurwitz_zeta(q, s)?;
    let mut sum = mu * (hz.value - q_term);
    let mut err = mu.norm() * hz.err_est;
    let mut abs_sum = sum.norm();

    let mut chi = Chi::new(alpha)?;
    let mut win = Window::default();
    win.reset();
    let mut b = Complex64::new(0.0, 0.0);
    let mut c_sum = Complex64::new(0.0, 0.0);
    let beta_exact = g - 0.5;
    for _ in 0..n_max {
        let (n, c, floor_next) = chi.next()?;
        let bn = if hit.0 == 0 {
            Complex64::new(c - g, 0.0)
        } else {
            c * e_int(n, r_val) - mu
        };
        let t = bn * term(n as f64, q, s);
        sum += t;
        abs_sum += t.norm();
        if hit.0 == 0 {
            // B(n) = (n+1) gamma - floor((n+1) gamma) subtracted from gamma, computed without cancellation
            let m = (n + 1) as f64;
            let p = m * g;
            let lo = m.mul_add(g, -p);
            let frac = (p - floor_next as f64) + lo;
            b = Complex64::new(g - frac, 0.0);
            c_sum += b - beta_exact;
        } else {
            b += bn;
        }
        if n as u64 > n_max / 2 {
            win.push(if hit.0 == 0 { c_sum } else { b });
        }
    }
    let nf = n_max as f64;
    let f1 = term(nf + 1.0, q, s);
    match mode {
        FluctuationMode::SecondOrderExact => {
            let f2 = term(nf + 2.0, q, s);
            let cn = b - beta_exact;
            sum += -cn * f1 - (c_sum - win.mean()) * (f1 - f2);
            let ss = (s * (s + 1.0)).norm();
            err += 2.0
                * win.deviation()
                * ss
                * ((nf + q).powf(-sigma - 2.0) + (nf + q).powf(-sigma - 1.0) / (sigma + 1.0));
        }
        FluctuationMode::FirstOrderEstimated => {
            sum += (win.mean() - b) * f1;
            err += 2.0 * win.deviation() * s.norm() / sigma * (nf + q).powf(-sigma);
        }
    }
    err += 4.0 * f64::EPSILON * abs_sum;
    Ok((EvalResult::new(sum, err, Method::AbelSummation), mode))
}

/// Residue of `Z_alpha(r,q;s)` at `s = 1` from `h Z(1+h)`, `h = 2^-2 .. 2^-6`, extrapolated to `h = 0`.
pub fn z_fluctuation_residue(
    alpha: &IrrationalNumber,
    r: RValue,
    q: f64,
    n_max: u64,
) -> Result<EvalResult> {
    let mut hs = Vec::new();
    let mut table: Vec<Complex64> = Vec::new();
    let mut data_err = 0.0f64;
    for j in 2..=6 {
        let h = 0.5f64.powi(j);
        let (z, _) = z_fluctuation(alpha, r, q, Complex64::new(1.0 + h, 0.0), n_max)?;
        hs.push(h);
        table.push(h * z.value);
        data_err = data_err.max(h * z.err_est);
    }
    // Neville's scheme at h = 0
    let n = table.len();
    let mut prev_diag = table[n - 1];
    for m in 1..n {
        for i in 0..n - m {
            table[i] = (hs[i + m] * table[i] - hs[i] * table[i + 1]) / (hs[i + m] - hs[i]);
        }
        if m == n - 2 {
            prev_diag = table[0];
        }
    }
    let value = table[0];
    let err = (value - prev_diag).norm() + 4.0 * data_err;
    Ok(EvalResult::new(value, err, Method::AbelSummation))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_matches_brute_force() {
        let alpha = IrrationalNumber::golden();
        let s = Complex64::new(3.0, 1.0);
        let v = z_direct(&alpha, RValue::Real(0.3), 0.5, s).unwrap();
        let mut brute = Complex64::new(0.0, 0.0);
        for n in 1..200_000i64 {
            let c =
                (alpha.floor_mul_gamma(n + 1).unwrap() - alpha.floor_mul_gamma(n).unwrap()) as f64;
            brute += c * crate::e(0.3 * n as f64) * term(n as f64, 0.5, s);
        }
        assert!((v.value - brute).norm() < 1e-9, "{} vs {brute}", v.value);
        assert!(v.err_est < 1e-10);
    }

    #[test]
    fn residue_of_untwisted_series_is_density() {
        let alpha = IrrationalNumber::golden();
        let res = z_fluctuation_residue(&alpha, RValue::Real(0.0), 0.5, 1 << 18).unwrap();
        assert!((res.value.re - alpha.gamma()).abs() < 1e-6, "{}", res.value);
    }

    #[test]
    fn oracle_agrees_with_direct() {
        let alpha = IrrationalNumber::golden();
        for r in [
            RValue::Real(0.0),
            RValue::Lattice { k: 1, l: 0 },
            RValue::Lattice { k: -2, l: 1 },
        ] {
            let s = Complex64::new(2.5, 0.5);
            let d = z_direct(&alpha, r, 0.5, s).unwrap();
            let (o, _) = z_fluctuation(&alpha, r, 0.5, s, 1 << 18).unwrap();
            assert!(
                (d.value - o.value).norm() < 1e-9 + d.err_est + o.err_est,
                "{r}: {} vs {}",
                d.value,
                o.value
            );
        }
    }

    #[test]
    fn oracle_exact_value_at_zero() {
        let alpha = IrrationalNumber::golden();
        let (z, mode) = z_fluctuation(
            &alpha,
            RValue::Real(0.0),
            0.5,
            Complex64::new(0.0, 0.0),
            1 << 16,
        )
        .unwrap();
        assert_eq!(mode, FluctuationMode::SecondOrderExact);
        assert!((z.value.re + 0.5).abs() < 1e-9, "{}", z.value);
    }

    #[test]
    fn off_lattice_is_unsupported() {
        let alpha = IrrationalNumber::golden();
        let e = z_fluctuation(
            &alpha,
            RValue::Rational { num: 1, den: 3 },
            0.5,
            Complex64::new(2.0, 0.0),
            1024,
        );
        assert!(matches!(e, Err(Error::UnsupportedR(_))));
        assert!(z_direct(&alpha, RValue::Real(0.0), 0.5, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn rational_twist_direct_tail_is_honest() {
        let alpha = IrrationalNumber::sqrt2();
        let s = Complex64::new(1.6, -2.0);
        let v = z_direct_tol(&alpha, RValue::Rational { num: 1, den: 3 }, 0.25, s, 1e-9).unwrap();
        let w = z_direct_tol(&alpha, RValue::Rational { num: 1, den: 3 }, 0.25, s, 1e-12).unwrap();
        assert!((v.value - w.value).norm() <= v.err_est + w.err_est);
    }
}
