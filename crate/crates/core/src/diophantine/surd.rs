use num_integer::Integer;
use std::fmt;

use crate::error::{Error, Result};

/// A real quadratic irrational `(a + b*sqrt(d)) / c` with exact integer data.
///
/// Stored normalized: `c > 0` and `gcd(a, b, c) = 1`. `d` is positive and not a
/// perfect square, `b != 0`, so the value is irrational by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: i64,
    b: i64,
    d: i64,
    c: i64,
}

fn is_square(d: i64) -> bool {
    d >= 0 && (d as u64).isqrt().pow(2) == d as u64
}

impl QuadraticSurd {
    pub fn new(a: i64, b: i64, d: i64, c: i64) -> Result<Self> {
        if d <= 0 || is_square(d) {
            return Err(Error::Domain(format!(
                "d = {d} must be a positive non-square"
            )));
        }
        if b == 0 {
            return Err(Error::Domain("b = 0 gives a rational number".into()));
        }
        if c == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        let (mut a, mut b, mut c) = (a, b, c);
        if c < 0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(Self {
            a: a / g,
            b: b / g,
            d,
            c: c / g,
        })
    }

    /// Golden ratio `(1 + sqrt 5) / 2`.
    pub fn golden() -> Self {
        Self {
            a: 1,
            b: 1,
            d: 5,
            c: 2,
        }
    }

    pub fn parts(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.d, self.c)
    }

    /// Nearest `f64`, avoiding cancellation when `a` and `b sqrt d` have opposite signs.
    pub fn to_f64(&self) -> f64 {
        let (a, b, d, c) = (self.a as f64, self.b as f64, self.d as f64, self.c as f64);
        let bs = b * d.sqrt();
        if a == 0.0 || (a > 0.0) == (bs > 0.0) {
            (a + bs) / c
        } else {
            // (a + b sqrt d) = (a^2 - b^2 d) / (a - b sqrt d)
            let num =
                (self.a as i128) * (self.a as i128) - (self.b as i128).pow(2) * self.d as i128;
            (num as f64) / ((a - bs) * c)
        }
    }

    /// `1 / x` as another surd.
    pub fn recip(&self) -> Self {
        let (a, b, d, c) = (
            self.a as i128,
            self.b as i128,
            self.d as i128,
            self.c as i128,
        );
        let n = a * a - b * b * d;
        // c (a - b sqrt d) / n
        let (na, nb, nc) = (c * a, -c * b, n);
        Self::new(
            i64::try_from(na).expect("surd overflow"),
            i64::try_from(nb).expect("surd overflow"),
            self.d,
            i64::try_from(nc).expect("surd overflow"),
        )
        .expect("reciprocal of an irrational surd is irrational")
    }

    /// `floor(n * x)`, computed exactly in integer arithmetic.
    pub fn floor_mul(&self, n: i64) -> Result<i64> {
        let n = n as i128;
        let t = n * self.b as i128;
        let sq = t
            .checked_mul(t)
            .and_then(|v| v.checked_mul(self.d as i128))
            .ok_or_else(|| Error::PrecisionExhausted(format!("floor_mul overflow at n = {n}")))?;
        let root = (sq as u128).isqrt() as i128;
        let floor_t = match t.signum() {
            1 => root,
            -1 => -root - 1,
            _ => 0,
        };
        let m = n * self.a as i128 + floor_t;
        let q = Integer::div_floor(&m, &(self.c as i128));
        i64::try_from(q).map_err(|_| Error::PrecisionExhausted("floor_mul result overflow".into()))
    }

    /// Partial quotients and the period of the (eventually periodic) expansion.
    ///
    /// Uses the `(P + sqrt D) / Q` recurrence with `Q | D - P^2`, so every step is exact.
    pub fn continued_fraction(&self, depth: usize) -> (Vec<u64>, Period) {
        let (a, b, d, c) = (
            self.a as i128,
            self.b as i128,
            self.d as i128,
            self.c as i128,
        );
        let big_d = b * b * c * c * d;
        let (mut p, mut q) = if b > 0 {
            (a * c, c * c)
        } else {
            (-a * c, -c * c)
        };
        let root = (big_d as u128).isqrt() as i128;
        let mut out = Vec::with_capacity(depth + 1);
        let mut seen: Vec<(i128, i128)> = Vec::new();
        let mut period = Period { start: 0, len: 0 };
        for i in 0..=depth {
            if period.len == 0 {
                if let Some(j) = seen.iter().position(|&s| s == (p, q)) {
                    period = Period {
                        start: j,
                        len: i - j,
                    };
                }
                seen.push((p, q));
            }
            let ai = cf_step(p, q, root);
            out.push(ai as u64);
            p = ai * q - p;
            q = (big_d - p * p) / q;
        }
        if period.len == 0 {
            // keep stepping (without recording quotients) until the cycle closes
            let mut i = depth + 1;
            loop {
                if let Some(j) = seen.iter().position(|&s| s == (p, q)) {
                    period = Period {
                        start: j,
                        len: i - j,
                    };
                    break;
                }
                seen.push((p, q));
                let ai = cf_step(p, q, root);
                p = ai * q - p;
                q = (big_d - p * p) / q;
                i += 1;
            }
        }
        (out, period)
    }
}

/// `floor((P + sqrt D) / Q)` given `root = floor(sqrt D)` and irrational `sqrt D`.
fn cf_step(p: i128, q: i128, root: i128) -> i128 {
    if q > 0 {
        Integer::div_floor(&(p + root), &q)
    } else {
        -Integer::div_floor(&(p + root), &(-q)) - 1
    }
}

/// Periodic tail `a[start..start+len]` of a continued fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Period {
    pub start: usize,
    pub len: usize,
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
    }
}
