use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

use super::surd::{Period, QuadraticSurd};
use crate::error::{Error, Result};

/// Quotients cached at construction.
const CF_CACHE_DEPTH: usize = 64;

/// A real known only through a decimal string: the true value lies in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecimalReal {
    digits: String,
    guard_digits: u32,
    lo: BigRational,
    hi: BigRational,
}

impl DecimalReal {
    /// Parses `3.14159...`. The last `guard_digits` digits are treated as uncertain,
    /// and the value is otherwise assumed truncated (not rounded).
    pub fn parse(digits: &str, guard_digits: u32) -> Result<Self> {
        let s = digits.trim();
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        let ok = !int_part.is_empty()
            && int_part.chars().all(|c| c.is_ascii_digit())
            && frac_part.chars().all(|c| c.is_ascii_digit());
        if !ok {
            return Err(Error::Parse(format!("bad decimal '{s}'")));
        }
        let all: String = format!("{int_part}{frac_part}");
        let num: BigInt = all
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal '{s}'")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let lo = BigRational::new(num, scale.clone());
        let unc_exp = frac_part.len() as i64 - guard_digits as i64;
        let radius = if unc_exp >= 0 {
            BigRational::new(BigInt::one(), BigInt::from(10u32).pow(unc_exp as u32))
        } else {
            BigRational::from_integer(BigInt::from(10u32).pow((-unc_exp) as u32))
        };
        let hi = &lo + radius;
        Ok(Self {
            digits: s.to_string(),
            guard_digits,
            lo,
            hi,
        })
    }

    pub fn digits(&self) -> &str {
        &self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    fn bounds(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    fn radius_f64(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Partial quotients that agree for both interval endpoints.
fn certified_cf(lo: &BigRational, hi: &BigRational, depth: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while out.len() <= depth {
        let a = lo.floor();
        if hi.floor() != a {
            break;
        }
        let Some(ai) = a.to_integer().to_u64() else {
            break;
        };
        out.push(ai);
        let flo = &lo - &a;
        let fhi = &hi - &a;
        if flo.is_zero() {
            break;
        }
        // 1/x is decreasing, so the endpoints swap
        lo = fhi.recip();
        hi = flo.recip();
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Quadratic {
        alpha: QuadraticSurd,
        gamma: QuadraticSurd,
    },
    HighPrecision {
        alpha: DecimalReal,
        gamma_lo: BigRational,
        gamma_hi: BigRational,
    },
}

/// An irrational `alpha > 1` together with `gamma = 1/alpha` and cached
/// continued-fraction data. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrationalNumber {
    repr: Repr,
    value: f64,
    gamma: f64,
    cf: Vec<u64>,
    period: Option<Period>,
}

impl IrrationalNumber {
    pub fn from_surd(alpha: QuadraticSurd) -> Result<Self> {
        let value = alpha.to_f64();
        if value <= 1.0 {
            return Err(Error::Domain(format!("alpha = {value} must exceed 1")));
        }
        let gamma = alpha.recip();
        let (cf, period) = alpha.continued_fraction(CF_CACHE_DEPTH);
        Ok(Self {
            value,
            gamma: gamma.to_f64(),
            repr: Repr::Quadratic { alpha, gamma },
            cf,
            period: Some(period),
        })
    }

    pub fn from_decimal(alpha: DecimalReal) -> Result<Self> {
        let (lo, hi) = alpha.bounds();
        if *lo <= BigRational::one() {
            return Err(Error::Domain(format!(
                "alpha = {} must exceed 1",
                alpha.digits()
            )));
        }
        let cf = certified_cf(lo, hi, CF_CACHE_DEPTH);
        let gamma_lo = hi.recip();
        let gamma_hi = lo.recip();
        let value: f64 = alpha
            .digits()
            .parse()
            .map_err(|_| Error::Parse(alpha.digits().into()))?;
        Ok(Self {
            value,
            gamma: 1.0 / value,
            repr: Repr::HighPrecision {
                alpha,
                gamma_lo,
                gamma_hi,
            },
            cf,
            period: None,
        })
    }

    /// The golden ratio.
    pub fn golden() -> Self {
        Self::from_surd(QuadraticSurd::golden()).expect("golden ratio exceeds 1")
    }

    /// `sqrt 2`.
    pub fn sqrt2() -> Self {
        Self::from_surd(QuadraticSurd::new(0, 1, 2, 1).unwrap()).unwrap()
    }

    /// Parses `golden | sqrt2 | quad:p,q,d,c | dec:<digits>[;guard=g]`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "golden" | "phi" => return Ok(Self::golden()),
            "sqrt2" => return Ok(Self::sqrt2()),
            _ => {}
        }
        if let Some(rest) = spec.strip_prefix("quad:") {
            let parts: Vec<i64> = rest
                .split(',')
                .map(|p| p.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad quadratic spec '{spec}'")))?;
            let [a, b, d, c] = parts[..] else {
                return Err(Error::Parse(format!(
                    "quad: needs 4 integers, got '{rest}'"
                )));
            };
            return Self::from_surd(QuadraticSurd::new(a, b, d, c)?);
        }
        if let Some(rest) = spec.strip_prefix("dec:") {
            let (digits, guard) = match rest.split_once(";guard=") {
                Some((d, g)) => (
                    d,
                    g.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad guard in '{spec}'")))?,
                ),
                None => (rest, 0),
            };
            return Self::from_decimal(DecimalReal::parse(digits, guard)?);
        }
        Err(Error::Parse(format!("unknown alpha spec '{spec}'")))
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `gamma = 1/alpha` in `(0, 1)`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match &self.repr {
            Repr::Quadratic { alpha, .. } => Some(alpha),
            Repr::HighPrecision { .. } => None,
        }
    }

    /// `gamma` as an exact surd, for quadratic inputs.
    pub fn gamma_surd(&self) -> Option<&QuadraticSurd> {
        match &self.repr {
            Repr::Quadratic { gamma, .. } => Some(gamma),
            Repr::HighPrecision { .. } => None,
        }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.repr, Repr::Quadratic { .. })
    }

    /// Cached partial quotients `[a0; a1, ...]` (certified ones only for decimal input).
    pub fn cached_cf(&self) -> &[u64] {
        &self.cf
    }

    /// Period of the expansion when it is known to be periodic.
    pub fn period(&self) -> Option<Period> {
        self.period
    }

    /// `floor(n * alpha)`.
    pub fn floor_mul_alpha(&self, n: i64) -> Result<i64> {
        match &self.repr {
            Repr::Quadratic { alpha, .. } => {
                fast_floor(self.value, 0.0, n).map_or_else(|| alpha.floor_mul(n), Ok)
            }
            Repr::HighPrecision { alpha, .. } => {
                let (lo, hi) = alpha.bounds();
                fast_floor(self.value, alpha.radius_f64(), n)
                    .map_or_else(|| interval_floor(lo, hi, n), Ok)
            }
        }
    }

    /// `floor(n * gamma)`; exact for quadratic input, certified or `Ambiguous` otherwise.
    pub fn floor_mul_gamma(&self, n: i64) -> Result<i64> {
        match &self.repr {
            Repr::Quadratic { gamma, .. } => {
                fast_floor(self.gamma, 0.0, n).map_or_else(|| gamma.floor_mul(n), Ok)
            }
            Repr::HighPrecision {
                gamma_lo, gamma_hi, ..
            } => {
                let rad = (gamma_hi - gamma_lo).to_f64().unwrap_or(f64::INFINITY);
                fast_floor(self.gamma, rad, n)
                    .map_or_else(|| interval_floor(gamma_lo, gamma_hi, n), Ok)
            }
        }
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match &self.repr {
            Repr::Quadratic { alpha, .. } => {
                let (a, b, d, c) = alpha.parts();
                format!("quad:{a},{b},{d},{c}")
            }
            Repr::HighPrecision { alpha, .. } => format!("dec:{}", alpha.digits()),
        }
    }
}

/// Float floor of `n*x` when the fractional part is safely away from an integer.
fn fast_floor(x: f64, radius: f64, n: i64) -> Option<i64> {
    let prod = n as f64 * x;
    let fl = prod.floor();
    let fr = prod - fl;
    let margin = (prod.abs() + 1.0) * 4e-16 + (n as f64).abs() * radius * 2.0;
    if margin < 1e-3 && fr > margin && fr < 1.0 - margin {
        Some(fl as i64)
    } else {
        None
    }
}

fn interval_floor(lo: &BigRational, hi: &BigRational, n: i64) -> Result<i64> {
    // the irrational target lies strictly inside (lo, hi), so n*x lies strictly inside the image
    let nb = BigRational::from_integer(BigInt::from(n));
    let (a, b) = (&nb * lo, &nb * hi);
    let (lo_n, hi_n) = if a <= b { (a, b) } else { (b, a) };
    let f = lo_n.floor();
    if f != hi_n.ceil() - BigRational::one() {
        return Err(Error::Ambiguous(format!(
            "floor of n*x undetermined at n = {n}"
        )));
    }
    f.to_integer()
        .to_i64()
        .ok_or_else(|| Error::PrecisionExhausted("floor overflow".into()))
}

impl fmt::Display for IrrationalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.15})", self.label(), self.value)
    }
}
