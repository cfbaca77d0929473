//! Command-line front end for `beatty-zeta` and the acceptance runner.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use beatty_zeta::Error;
use cli::{Cli, Format};
use config::Settings;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 1,
        Error::Domain(_)
        | Error::PoleAtInput(_)
        | Error::RegionUnsupported(_)
        | Error::UnsupportedR(_)
        | Error::BudgetExceeded(_) => 3,
        Error::Ambiguous(_) | Error::PrecisionExhausted(_) => 4,
    }
}

fn resolve_format(cli: &Cli, settings: &Settings) -> Result<Format, Error> {
    if let Some(f) = cli.output {
        return Ok(f);
    }
    if cli.json {
        return Ok(Format::Json);
    }
    match settings.value(&None, "output").as_deref() {
        None => Ok(commands::default_format(&cli.command)),
        Some("text") => Ok(Format::Text),
        Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some(other) => Err(Error::Parse(format!("output = '{other}' is not text, json or csv"))),
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), Error> {
    let settings = Settings::load(cli.config.as_deref(), &cli.set)?;
    let format = resolve_format(cli, &settings)?;
    let threads = match cli.threads {
        Some(n) => Some(n),
        None => settings.value(&None, "threads").map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("threads = '{t}'")))).transpose()?,
    };
    let work = || -> Result<(String, i32), Error> {
        let (emission, code) = commands::dispatch(&cli.command, &settings)?;
        Ok((emission.render(format)?, code))
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Parse(format!("--threads {n}: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T, O, E>(argv: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
