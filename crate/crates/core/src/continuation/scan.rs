use num_complex::Complex64;
use rayon::prelude::*;
use std::io::{self, Write};

use super::engine::MellinEngine;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "s_re,s_im,val_re,val_im,err_est,pole_re,pole_im,region";

/// Rectangular grid of `s` values; `n` points per axis including both ends.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct GridSpec {
    pub re: (f64, f64, usize),
    pub im: (f64, f64, usize),
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

impl GridSpec {
    /// Parses `lo:hi:n` per axis.
    pub fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(Self {
            re: parse_axis(re)?,
            im: parse_axis(im)?,
        })
    }

    /// Points in row-major order: the real part varies fastest.
    pub fn points(&self) -> Vec<Complex64> {
        let xs = axis(self.re.0, self.re.1, self.re.2);
        axis(self.im.0, self.im.1, self.im.2)
            .into_iter()
            .flat_map(|y| xs.iter().map(move |&x| Complex64::new(x, y)))
            .collect()
    }
}

fn parse_axis(text: &str) -> Result<(f64, f64, usize)> {
    let bad = || Error::Parse(format!("axis '{text}' is not lo:hi:n"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    match parts.as_slice() {
        [v] => {
            let v = v.parse().map_err(|_| bad())?;
            Ok((v, v, 1))
        }
        [lo, hi, n] => {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok((
                lo.parse().map_err(|_| bad())?,
                hi.parse().map_err(|_| bad())?,
                n,
            ))
        }
        _ => Err(bad()),
    }
}

/// One grid point; failed points keep their message and NaN values.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct GridRow {
    pub s_re: f64,
    pub s_im: f64,
    pub val_re: f64,
    pub val_im: f64,
    pub err_est: f64,
    pub pole_re: f64,
    pub pole_im: f64,
    pub region: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl GridRow {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

/// Evaluates `Z#` over the grid in parallel; rows come back in grid order.
pub fn grid_scan(engine: &MellinEngine, spec: &GridSpec) -> Vec<GridRow> {
    spec.points()
        .par_iter()
        .map(|&s| match engine.z_sharp(s) {
            Ok(z) => GridRow {
                s_re: s.re,
                s_im: s.im,
                val_re: z.value.re,
                val_im: z.value.im,
                err_est: z.err_est,
                pole_re: z.pole_coefficient.re,
                pole_im: z.pole_coefficient.im,
                region: z.region_note.as_str().to_string(),
                error: None,
            },
            Err(e) => GridRow {
                s_re: s.re,
                s_im: s.im,
                val_re: f64::NAN,
                val_im: f64::NAN,
                err_est: f64::NAN,
                pole_re: f64::NAN,
                pole_im: f64::NAN,
                region: format!("error: {}", e.to_string().replace(',', ";")),
                error: Some(e.to_string()),
            },
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[GridRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.s_re, r.s_im, r.val_re, r.val_im, r.err_est, r.pole_re, r.pole_im, r.region
        )?;
    }
    Ok(())
}
