use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "beatty", version, about = "Beatty zeta functions and their analytic continuation")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Format>,
    /// Shorthand for `--output json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Flat `key = value` file supplying defaults for any flag and for continuation settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for scans and verification.
    #[arg(long, global = true, env = "BEATTY_THREADS")]
    pub threads: Option<usize>,
    /// Continuation setting override, `key=value` (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default, Clone)]
pub struct AlphaArg {
    /// `golden`, `sqrt2`, `quad:a,b,d,c` for (a + b sqrt d)/c, or `dec:<digits>`.
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Debug, Args, Default, Clone)]
pub struct TwistArgs {
    #[command(flatten)]
    pub alpha: AlphaArg,
    /// Twist: a decimal, `p/q`, `gamma` or `lattice:k,l` for k gamma + l.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Shift in (0, 1).
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction, period and convergents of alpha.
    Cf {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        depth: Option<String>,
    },
    /// Estimated Diophantine type of alpha.
    Type {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        depth: Option<String>,
    },
    /// First m terms of the Beatty sequence floor(n alpha).
    Beatty {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        m: Option<String>,
    },
    /// Indicator of the Beatty set at n (1/2 at n = 0, -1).
    Indicator {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// Fourier-truncated indicator with its calibrated bound.
    Pulse {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Fourier coefficient of the pulse wave.
    Fourier {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Star discrepancy of {m gamma}, m = 1..M.
    Discrepancy {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long)]
        m: Option<String>,
    },
    /// Frequencies k with k gamma close to r modulo 1.
    Nearhits {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        kmax: Option<String>,
        #[arg(long)]
        threshold: Option<String>,
    },
    /// Theta_{v,w}(u).
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long)]
        u: Option<String>,
    },
    /// Psi(r,q;u).
    Psi {
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        u: Option<String>,
    },
    /// Phi(u) = Psi_alpha - gamma Psi.
    Phi {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long)]
        u: Option<String>,
        /// `auto`, `direct` or `transformed`.
        #[arg(long)]
        method: Option<String>,
    },
    /// Riemann zeta.
    Riemann {
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Hurwitz zeta(s, q).
    Hurwitz {
        #[arg(long)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Lerch sum zeta(z, q; s) for Re s > 1.
    Lerch {
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Symmetrized Lerch pair zeta#(r,q;s).
    Zetasharp {
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Z_alpha(r,q;s) from its Dirichlet series (Re s > 1).
    Zdirect {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long)]
        tol: Option<String>,
    },
    /// Z#(r,q;s), continued to Re s >= sigma_min.
    Zsharp {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Residue of Z# at s = 1 with both predictions.
    Residue {
        #[command(flatten)]
        twist: TwistArgs,
        /// Terms for the Abel-summation oracle (lattice twists only); 0 disables it.
        #[arg(long)]
        abel_terms: Option<String>,
    },
    /// Z# over a rectangular s-grid (CSV by default).
    Scan {
        #[command(flatten)]
        twist: TwistArgs,
        /// Real axis `lo:hi:n`.
        #[arg(long, allow_hyphen_values = true)]
        re: Option<String>,
        /// Imaginary axis `lo:hi:n`.
        #[arg(long, allow_hyphen_values = true)]
        im: Option<String>,
    },
    /// Acceptance checks.
    Verify {
        /// `quick` or `full`.
        #[arg(long)]
        suite: Option<String>,
        /// Run only these criteria (comma separated).
        #[arg(long)]
        only: Option<String>,
    },
}
