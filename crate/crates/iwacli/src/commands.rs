//! Command implementations. Each returns an [`Outcome`] so the binary and
//! the integration tests share one code path; stdout bytes are fully
//! determined by the arguments.

use std::fs;
use std::path::Path;

use iwacore::harness;
use iwacore::module::PresentedModule;
use iwacore::ring::RingParams;
use iwacore::Error;

use crate::format::{to_canonical, InputFile, ModuleFile, SkeletonFile};
use crate::report::{GrowthOut, InvariantsOut, SuiteOut};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PRECISION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_PASS,
        }
    }

    fn fail(code: i32, message: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: message,
            code,
        }
    }
}

/// Precision/budget exhaustion maps to exit 2; structural problems with the
/// input map to exit 3.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted
        | Error::DimensionBudgetExceeded
        | Error::SizeExceeded
        | Error::Unstable => EXIT_PRECISION,
        _ => EXIT_INPUT,
    }
}

fn load_input(path: &Path) -> Result<InputFile, Outcome> {
    let text = fs::read_to_string(path).map_err(|e| {
        Outcome::fail(EXIT_INPUT, format!("cannot read {}: {}\n", path.display(), e))
    })?;
    // Two-stage parse: syntax errors first (with position), then shape.
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
        Outcome::fail(
            EXIT_INPUT,
            format!(
                "parse error at line {}, column {}: {}\n",
                e.line(),
                e.column(),
                e
            ),
        )
    })?;
    let parsed = if value.get("label").is_some() {
        serde_json::from_value::<SkeletonFile>(value).map(InputFile::Skeleton)
    } else {
        serde_json::from_value::<ModuleFile>(value).map(InputFile::Module)
    };
    parsed.map_err(|e| Outcome::fail(EXIT_INPUT, format!("invalid file shape: {}\n", e)))
}

fn load_module(path: &Path) -> Result<PresentedModule, Outcome> {
    let file = load_input(path)?;
    let mf = match file {
        InputFile::Module(m) => m,
        InputFile::Skeleton(s) => s.module,
    };
    mf.to_module()
        .map_err(|e| Outcome::fail(exit_code(&e), format!("invalid module: {}\n", e)))
}

pub fn cmd_invariants(path: &Path, route: &str) -> Outcome {
    let m = match load_module(path) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let mut out = InvariantsOut {
        reports: Vec::new(),
        notes: Vec::new(),
    };
    let mut first_err: Option<Error> = None;
    let routes: &[&str] = match route {
        "char" => &["char"],
        "growth" => &["growth"],
        "both" => &["char", "growth"],
        _ => {
            return Outcome::fail(
                EXIT_INPUT,
                format!("unknown route '{}'; expected char, growth, or both\n", route),
            )
        }
    };
    for &r in routes {
        let result = match r {
            "char" => m.char_invariants(),
            _ => m.invariants_via_growth(),
        };
        match result {
            Ok(rep) => out.reports.push((&rep).into()),
            Err(e) => {
                out.notes.push(format!("{}: unavailable ({})", r, e));
                first_err.get_or_insert(e);
            }
        }
    }
    if out.reports.is_empty() {
        let e = first_err.expect("at least one route was attempted");
        return Outcome::fail(exit_code(&e), format!("no route succeeded: {}\n", e));
    }
    Outcome::ok(to_canonical(&out))
}

pub fn cmd_growth(path: &Path, nmax: Option<u32>, format: &str) -> Outcome {
    let m = match load_module(path) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let nmax = nmax.unwrap_or_else(|| m.default_window());
    let trace = match m.growth_trace(nmax) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(exit_code(&e), format!("growth trace failed: {}\n", e)),
    };
    let out = GrowthOut::from(&trace);
    match format {
        "csv" => Outcome::ok(out.to_csv()),
        "json" => Outcome::ok(to_canonical(&out)),
        _ => Outcome::fail(
            EXIT_INPUT,
            format!("unknown format '{}'; expected csv or json\n", format),
        ),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    suite: &str,
    trials: u64,
    seed: u64,
    p: u64,
    precision_p: u32,
    precision_x: usize,
    u0: Option<u64>,
) -> Outcome {
    let params = match u0 {
        Some(u0) => RingParams::with_u0(p, precision_p, precision_x, u0),
        None => RingParams::new(p, precision_p, precision_x),
    };
    let params = match params {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("bad ring parameters: {}\n", e)),
    };
    let (report, probe_only) = match suite {
        "additivity" => (harness::verify_additivity(params, trials, seed), false),
        "growth" => (harness::verify_growth(params, trials, seed), false),
        "twist-probe" => (harness::probe_twist(params, trials, seed), true),
        "congruence" => (harness::verify_congruence_transfer(params, trials, seed), false),
        "delta" => (harness::verify_delta(params, trials, seed), false),
        _ => {
            return Outcome::fail(
                EXIT_INPUT,
                format!(
                    "unknown suite '{}'; expected additivity, growth, twist-probe, congruence, or delta\n",
                    suite
                ),
            )
        }
    };
    let out = SuiteOut::from(&report);
    let code = if probe_only || report.all_passed() {
        EXIT_PASS
    } else {
        EXIT_VIOLATION
    };
    Outcome {
        stdout: to_canonical(&out),
        stderr: String::new(),
        code,
    }
}
