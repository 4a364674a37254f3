use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use iwacli::commands::{self, Outcome};

#[derive(Parser)]
#[command(
    name = "iwacli",
    about = "Invariants, coinvariant growth, and verification suites for \
             finitely presented modules over the truncated Iwasawa algebra"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute μ/λ invariants of a module file.
    Invariants {
        path: PathBuf,
        /// char | growth | both
        #[arg(long, default_value = "both")]
        route: String,
    },
    /// Emit the coinvariant growth trace e((M/p)_{Γ_n}) for n = 0..=nmax.
    Growth {
        path: PathBuf,
        /// Highest level n (default: the module's stabilization window).
        #[arg(long)]
        nmax: Option<u32>,
        /// csv | json
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run a verification suite: additivity, growth, twist-probe,
    /// congruence, or delta.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 50)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// The prime p.
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// p-adic precision exponent N.
        #[arg(long = "Np", default_value_t = 6)]
        np: u32,
        /// X-adic truncation degree M.
        #[arg(long = "Mx", default_value_t = 32)]
        mx: usize,
        /// Twist base unit (default 1 + p).
        #[arg(long)]
        u0: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Outcome = match cli.cmd {
        Cmd::Invariants { path, route } => commands::cmd_invariants(&path, &route),
        Cmd::Growth { path, nmax, format } => commands::cmd_growth(&path, nmax, &format),
        Cmd::Verify {
            suite,
            trials,
            seed,
            p,
            np,
            mx,
            u0,
        } => commands::cmd_verify(&suite, trials, seed, p, np, mx, u0),
    };
    // single buffered writes keep the byte order deterministic
    std::io::stdout()
        .write_all(outcome.stdout.as_bytes())
        .expect("stdout");
    std::io::stderr()
        .write_all(outcome.stderr.as_bytes())
        .expect("stderr");
    ExitCode::from(outcome.code as u8)
}
