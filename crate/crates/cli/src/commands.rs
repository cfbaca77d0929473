use num_complex::Complex64;
use serde_json::{json, Value};

use beatty_zeta::beatty::{beatty_terms, fourier_coeff, indicator, PulseWave};
use beatty_zeta::continuation::{grid_scan, write_csv, z_direct_tol, ContinuationConfig, GridSpec, MellinEngine, RegionNote, ResidueReport};
use beatty_zeta::diophantine::{cf_expand, convergents, delta_kappa, estimate_type, kronecker_points, near_hits, star_discrepancy};
use beatty_zeta::special::{hurwitz_zeta, lerch_direct, riemann_zeta, zeta_sharp_with};
use beatty_zeta::theta::{psi, theta};
use beatty_zeta::{Error, EvalResult, IrrationalNumber, Method, PhiContext, RValue, Result};

use crate::cli::{AlphaArg, Command, Format, TwistArgs};
use crate::config::Settings;
use crate::output::{complex_json, exact_json, fmt_c, Emission};
use crate::verify::{self, Suite};

pub fn parse_f64(key: &str, text: &str) -> Result<f64> {
    let v: f64 = text.trim().parse().map_err(|_| Error::Parse(format!("--{key}: '{text}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(format!("--{key}: '{text}' is not finite")))
    }
}

fn parse_int(key: &str, text: &str) -> Result<i64> {
    let t = text.trim();
    t.parse::<i64>()
        .or_else(|_| match t.parse::<f64>() {
            Ok(v) if v.fract() == 0.0 && v.abs() < 9e15 => Ok(v as i64),
            _ => Err(()),
        })
        .map_err(|_| Error::Parse(format!("--{key}: '{text}' is not an integer")))
}

fn parse_count(key: &str, text: &str) -> Result<u64> {
    let v = parse_int(key, text)?;
    u64::try_from(v).map_err(|_| Error::Domain(format!("--{key} must be nonnegative")))
}

/// `re[,im]`.
pub fn parse_complex(key: &str, text: &str) -> Result<Complex64> {
    let mut parts = text.split(',');
    let re = parse_f64(key, parts.next().unwrap_or(""))?;
    let im = match parts.next() {
        Some(p) => parse_f64(key, p)?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(Error::Parse(format!("--{key}: expected re[,im], got '{text}'")));
    }
    Ok(Complex64::new(re, im))
}

fn check_q(q: f64) -> Result<f64> {
    if q > 0.0 && q < 1.0 {
        Ok(q)
    } else {
        Err(Error::Domain(format!("q = {q} must lie in (0, 1)")))
    }
}

struct Ctx<'a> {
    settings: &'a Settings,
}

impl Ctx<'_> {
    fn req(&self, flag: &Option<String>, key: &str) -> Result<String> {
        self.settings.required(flag, key)
    }

    fn f64(&self, flag: &Option<String>, key: &str) -> Result<f64> {
        parse_f64(key, &self.req(flag, key)?)
    }

    fn f64_or(&self, flag: &Option<String>, key: &str, default: f64) -> Result<f64> {
        self.settings.value(flag, key).map_or(Ok(default), |v| parse_f64(key, &v))
    }

    fn count_or(&self, flag: &Option<String>, key: &str, default: u64) -> Result<u64> {
        self.settings.value(flag, key).map_or(Ok(default), |v| parse_count(key, &v))
    }

    fn complex(&self, flag: &Option<String>, key: &str) -> Result<Complex64> {
        parse_complex(key, &self.req(flag, key)?)
    }

    fn q(&self, flag: &Option<String>) -> Result<f64> {
        check_q(self.f64(flag, "q")?)
    }

    fn alpha(&self, a: &AlphaArg) -> Result<IrrationalNumber> {
        IrrationalNumber::parse(&self.req(&a.alpha, "alpha")?)
    }

    fn twist(&self, t: &TwistArgs) -> Result<(IrrationalNumber, RValue, f64)> {
        let alpha = self.alpha(&t.alpha)?;
        let r = RValue::parse(&self.req(&t.r, "r")?)?;
        Ok((alpha, r, self.q(&t.q)?))
    }

    fn engine(&self, t: &TwistArgs, cfg: ContinuationConfig) -> Result<MellinEngine> {
        let (alpha, r, q) = self.twist(t)?;
        MellinEngine::new(PhiContext::new(alpha, r, q)?, cfg)
    }
}

/// Format used when neither `--output` nor `--json` nor the config file chooses one.
pub fn default_format(cmd: &Command) -> Format {
    match cmd {
        Command::Scan { .. } => Format::Csv,
        _ => Format::Text,
    }
}

/// Runs one subcommand; the second value is the exit code on success (2 for failed checks).
pub fn dispatch(cmd: &Command, settings: &Settings) -> Result<(Emission, i32)> {
    let cx = Ctx { settings };
    let cfg = settings.continuation()?;
    let e = match cmd {
        Command::Cf { alpha, depth } => {
            let x = cx.alpha(alpha)?;
            let depth = cx.count_or(depth, "depth", 20)? as usize;
            let cf = cf_expand(&x, depth)?;
            let conv = convergents(&cf.quotients, cf.quotients.len().min(12));
            let conv_s: Vec<String> = conv.iter().map(|(p, q)| format!("{p}/{q}")).collect();
            let period = cf.period.map(|p| json!({ "start": p.start, "len": p.len }));
            let mut text = format!("alpha = {}\nquotients = {:?}\n", x.label(), cf.quotients);
            match cf.period {
                Some(p) => text += &format!("period = start {} length {}\n", p.start, p.len),
                None => text += "period = none detected\n",
            }
            text += &format!("convergents = {}\n", conv_s.join(" "));
            Emission {
                text,
                json: exact_json(json!({ "alpha": x.label(), "quotients": cf.quotients, "period": period, "convergents": conv_s })),
                csv: None,
            }
        }
        Command::Type { alpha, depth } => {
            let x = cx.alpha(alpha)?;
            let depth = cx.count_or(depth, "depth", 200)? as usize;
            let t = estimate_type(&x, depth);
            Emission {
                text: format!("tau = {:.6}\ndepth = {}\nperiodic = {}\n", t.tau, t.depth_used, t.periodic),
                json: json!({ "value": t.tau, "err_est": if t.periodic { 0.0 } else { f64::NAN }, "method": "continued-fraction",
                              "depth": t.depth_used, "periodic": t.periodic }),
                csv: None,
            }
        }
        Command::Beatty { alpha, m } => {
            let x = cx.alpha(alpha)?;
            let m = cx.count_or(m, "m", 20)? as usize;
            let terms = beatty_terms(&x, m)?;
            Emission {
                text: terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ") + "\n",
                json: exact_json(json!(terms)),
                csv: Some(std::iter::once("n,term".to_string()).chain(terms.iter().enumerate().map(|(i, t)| format!("{},{t}", i + 1))).collect::<Vec<_>>().join("\n") + "\n"),
            }
        }
        Command::Indicator { alpha, n } => {
            let x = cx.alpha(alpha)?;
            let n = parse_int("n", &cx.req(n, "n")?)?;
            let v = indicator(&x, n)?;
            Emission { text: format!("ind({n}) = {v}\n"), json: exact_json(json!(v.as_f64())), csv: None }
        }
        Command::Pulse { alpha, n, k, eps } => {
            let x = cx.alpha(alpha)?;
            let n = parse_int("n", &cx.req(n, "n")?)?;
            let k = cx.count_or(k, "k", 1024)?;
            let eps = cx.f64_or(eps, "eps", cfg.eps_exponent)?;
            let pw = PulseWave::new(&x, eps)?;
            let (v, bound) = pw.truncated_indicator(n, k)?;
            let exact = pw.indicator(n)?;
            let r = EvalResult::new(v, bound, Method::DirectSeries);
            let mut em = Emission::eval(&format!("X_K({n})"), &r, json!({ "exact": exact.as_f64(), "k": k }));
            em.text += &format!("exact = {exact}\n");
            em
        }
        Command::Fourier { alpha, k } => {
            let x = cx.alpha(alpha)?;
            let k = parse_int("k", &cx.req(k, "k")?)?;
            let v = fourier_coeff(x.gamma(), k);
            let r = EvalResult::new(v, 4.0 * f64::EPSILON * v.norm().max(f64::MIN_POSITIVE), Method::ClosedForm);
            Emission::eval(&format!("X~({k})"), &r, json!({}))
        }
        Command::Discrepancy { alpha, m } => {
            let x = cx.alpha(alpha)?;
            let m = cx.count_or(m, "m", 1000)? as usize;
            let rep = star_discrepancy(&kronecker_points(x.gamma(), 0.0, m))?;
            let err = 4.0 * f64::EPSILON * m as f64;
            Emission {
                text: format!("D*({m}) = {:.16e}\nextreme in [{:.6e}, {:.6e}]\n", rep.d_star, rep.d_extreme_bounds[0], rep.d_extreme_bounds[1]),
                json: json!({ "value": rep.d_star, "err_est": err, "method": "sorted-points", "m": m, "extreme_bounds": rep.d_extreme_bounds }),
                csv: None,
            }
        }
        Command::Nearhits { twist, kmax, threshold } => {
            let x = cx.alpha(&twist.alpha)?;
            let r = RValue::parse(&cx.req(&twist.r, "r")?)?;
            let g = x.gamma();
            let rv = r.to_f64(g);
            let kmax = cx.count_or(kmax, "kmax", 10_000)?.max(1);
            let thr = cx.f64_or(threshold, "threshold", 1e-3)?;
            let hits = near_hits(g, rv, kmax, thr);
            let (delta, kappa) = delta_kappa(g, rv, kmax);
            let mut text = format!("delta = {delta:.6e}\nkappa = {kappa}\n");
            for h in &hits {
                text += &format!("k = {:>8}  dist = {:.6e}  nu = {:+}  nearest = {}\n", h.k, h.dist, h.nu, h.nearest);
            }
            let rows: Vec<Value> = hits.iter().map(|h| json!({ "k": h.k, "dist": h.dist, "nu": h.nu, "nearest": h.nearest })).collect();
            Emission {
                text,
                json: json!({ "value": delta, "err_est": 4.0 * f64::EPSILON * kmax as f64 * g, "method": "scan", "kappa": kappa, "hits": rows }),
                csv: None,
            }
        }
        Command::Theta { v, w, u } => {
            let (v, w, u) = (cx.f64(v, "v")?, cx.f64(w, "w")?, cx.f64(u, "u")?);
            let t = theta(v, w, u)?;
            let r = EvalResult::new(t, 1e-14 * (1.0 + t.norm()), Method::DirectSeries);
            Emission::eval("Theta", &r, json!({}))
        }
        Command::Psi { r, q, u } => {
            let (r, q, u) = (cx.f64(r, "r")?, cx.q(q)?, cx.f64(u, "u")?);
            let p = psi(r, q, u)?;
            let res = EvalResult::new(p, 1e-14 * (1.0 + p.norm()), Method::DirectSeries);
            Emission::eval("Psi", &res, json!({}))
        }
        Command::Phi { twist, u, method } => {
            let (alpha, r, q) = cx.twist(twist)?;
            let u = cx.f64(u, "u")?;
            let ctx = PhiContext::new(alpha, r, q)?;
            let method = settings.value(method, "method").unwrap_or_else(|| "auto".into());
            let res = match method.as_str() {
                "auto" => ctx.phi(u, cfg.u_switch, cfg.k_max)?,
                "direct" => ctx.phi_direct(u)?,
                "transformed" => ctx.phi_transformed(u, cfg.k_max)?,
                other => return Err(Error::Parse(format!("--method: unknown '{other}'"))),
            };
            Emission::eval("Phi", &res, json!({ "amplitude": complex_json(ctx.small_u_amplitude()) }))
        }
        Command::Riemann { s } => {
            let s = cx.complex(s, "s")?;
            Emission::eval("zeta", &riemann_zeta(s)?, json!({}))
        }
        Command::Hurwitz { q, s } => {
            let q = cx.f64(q, "q")?;
            let s = cx.complex(s, "s")?;
            Emission::eval("zeta(s, q)", &hurwitz_zeta(q, s)?, json!({}))
        }
        Command::Lerch { z, q, s } => {
            let (z, q, s) = (cx.f64(z, "z")?, cx.q(q)?, cx.complex(s, "s")?);
            Emission::eval("zeta(z, q; s)", &lerch_direct(z, q, s)?, json!({}))
        }
        Command::Zetasharp { r, q, s } => {
            let (r, q, s) = (cx.f64(r, "r")?, cx.q(q)?, cx.complex(s, "s")?);
            Emission::eval("zeta#", &zeta_sharp_with(r, q, s, &cfg)?, json!({}))
        }
        Command::Zdirect { twist, s, tol } => {
            let (alpha, r, q) = cx.twist(twist)?;
            let s = cx.complex(s, "s")?;
            let tol = cx.f64_or(tol, "tol", cfg.direct_tol)?;
            Emission::eval("Z_alpha", &z_direct_tol(&alpha, r, q, s, tol)?, json!({}))
        }
        Command::Zsharp { twist, s } => {
            let eng = cx.engine(twist, cfg)?;
            let s = cx.complex(s, "s")?;
            let z = eng.z_sharp(s)?;
            let method = match z.region_note {
                RegionNote::Direct => Method::DirectSeries,
                RegionNote::Continued => Method::Continuation,
                RegionNote::PrefactorZero => Method::ClosedForm,
            };
            let res = EvalResult::new(z.value, z.err_est, method);
            let mut em = Emission::eval(
                "Z#",
                &res,
                json!({
                    "region_note": z.region_note.as_str(),
                    "pole_coefficient": exact_json(complex_json(z.pole_coefficient)),
                    "regular": { "value": complex_json(z.regular), "err_est": z.err_est, "method": method.as_str() },
                }),
            );
            em.text += &format!("pole_coefficient = {}\nregion = {}\n", fmt_c(z.pole_coefficient), z.region_note.as_str());
            em
        }
        Command::Residue { twist, abel_terms } => {
            let eng = cx.engine(twist, cfg)?;
            let terms = cx.count_or(abel_terms, "abel_terms", 1 << 20)?;
            let rep = ResidueReport::compute(&eng, (terms > 0).then_some(terms))?;
            residue_emission(&rep)
        }
        Command::Scan { twist, re, im } => {
            let eng = cx.engine(twist, cfg)?;
            let spec = GridSpec::parse(&cx.req(re, "re")?, &cx.req(im, "im")?)?;
            let rows = grid_scan(&eng, &spec);
            let mut csv = Vec::new();
            write_csv(&rows, &mut csv).expect("writing to memory");
            let csv = String::from_utf8(csv).expect("ascii");
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "s": { "re": r.s_re, "im": r.s_im },
                        "value": { "re": r.val_re, "im": r.val_im },
                        "err_est": r.err_est,
                        "method": r.region,
                        "pole_coefficient": { "re": r.pole_re, "im": r.pole_im },
                        "error": r.error,
                    })
                })
                .collect();
            Emission { text: csv.clone(), json: json!({ "rows": json_rows }), csv: Some(csv) }
        }
        Command::Verify { suite, only } => {
            let suite_name = settings.value(suite, "suite").unwrap_or_else(|| "quick".into());
            let suite = Suite::parse(&suite_name)?;
            let ids = match settings.value(only, "only") {
                Some(list) => list.split(',').map(|t| parse_count("only", t).map(|v| v as u8)).collect::<Result<Vec<_>>>()?,
                None => suite.criteria(),
            };
            let outcomes = verify::run_many(&ids)?;
            let pass = outcomes.iter().all(|o| o.pass);
            let text = verify::table(&outcomes);
            let json = json!({
                "suite": suite_name,
                "pass": pass,
                "criteria": outcomes.iter().map(|o| json!({
                    "id": o.id, "title": o.title, "pass": o.pass, "detail": o.detail,
                    "value": o.value, "err_est": o.err_est, "method": "acceptance",
                })).collect::<Vec<_>>(),
            });
            return Ok((Emission { text, json, csv: None }, if pass { 0 } else { 2 }));
        }
    };
    Ok((e, 0))
}

fn residue_emission(rep: &ResidueReport) -> Emission {
    let contour = |c: Complex64| json!({ "value": complex_json(c), "err_est": rep.measured_err, "method": "contour" });
    let abel = |c: Option<Complex64>| {
        c.map(|v| json!({ "value": complex_json(v), "err_est": rep.abel_err, "method": "abel-oracle" }))
    };
    let verdict = format!("{:?}", rep.verdict).to_lowercase();
    let mut text = format!(
        "measured (Z# - gamma zeta#) = {}\nmeasured (Z#) = {}\nerr_est = {:.3e}\npredicted_formula = {}\npredicted_density = {}\n",
        fmt_c(rep.measured),
        fmt_c(rep.measured_sharp),
        rep.measured_err,
        fmt_c(rep.predicted_formula),
        fmt_c(rep.predicted_density)
    );
    if let (Some(a), Some(b), Some(e)) = (rep.abel_oracle, rep.abel_oracle_sharp, rep.abel_err) {
        text += &format!("abel_oracle (Z# - gamma zeta#) = {}\nabel_oracle (Z#) = {}\nabel_err_est = {e:.3e}\n", fmt_c(a), fmt_c(b));
    }
    text += &format!("verdict = {verdict}\nmethod = contour\n");
    Emission {
        text,
        json: json!({
            "measured": contour(rep.measured),
            "measured_sharp": contour(rep.measured_sharp),
            "predicted_formula": exact_json(complex_json(rep.predicted_formula)),
            "predicted_density": exact_json(complex_json(rep.predicted_density)),
            "abel_oracle": abel(rep.abel_oracle),
            "abel_oracle_sharp": abel(rep.abel_oracle_sharp),
            "verdict": verdict,
            "tolerance": rep.tolerance,
            "method": "contour",
            "err_est": rep.measured_err,
        }),
        csv: None,
    }
}
