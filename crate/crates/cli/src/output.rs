use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cli::Format;
use beatty_zeta::{Error, EvalResult, Result};

/// One command's result in every supported format.
#[derive(Debug, Clone)]
pub struct Emission {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
}

impl Emission {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n"),
            Format::Csv => self.csv.clone().ok_or_else(|| Error::Parse("this command has no CSV form".into())),
        }
    }

    /// A single evaluation with extra JSON fields.
    pub fn eval(label: &str, r: &EvalResult, extra: Value) -> Self {
        let mut j = eval_json(r);
        if let (Value::Object(m), Value::Object(x)) = (&mut j, extra) {
            m.extend(x);
        }
        Self {
            text: format!("{label} = {}\nerr_est = {:.3e}\nmethod = {}\n", fmt_c(r.value), r.err_est, r.method),
            json: j,
            csv: Some(format!("re,im,err_est,method\n{:.16e},{:.16e},{:.16e},{}\n", r.value.re, r.value.im, r.err_est, r.method)),
        }
    }
}

pub fn complex_json(c: Complex64) -> Value {
    json!({ "re": c.re, "im": c.im })
}

/// `{value: {re, im}, err_est, method}`.
pub fn eval_json(r: &EvalResult) -> Value {
    json!({ "value": complex_json(r.value), "err_est": r.err_est, "method": r.method.as_str() })
}

/// Exact quantities carry `err_est = 0`.
pub fn exact_json(value: Value) -> Value {
    json!({ "value": value, "err_est": 0.0, "method": "exact" })
}

pub fn fmt_c(c: Complex64) -> String {
    if c.im.is_sign_negative() {
        format!("{:.16e} - {:.16e}i", c.re, -c.im)
    } else {
        format!("{:.16e} + {:.16e}i", c.re, c.im)
    }
}
