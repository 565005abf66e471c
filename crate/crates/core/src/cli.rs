//! Command-line front end: argument parsing, dispatch, rendering and exit codes.
//!
//! Exit codes: 0 success, 1 internal error or failed verification, 2 bad
//! input, 3 slope did not stabilize.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::battery::{battery_json, battery_text, run_battery, BatteryConfig};
use crate::error::Error;
use crate::factor::split_fields;
use crate::lattice::ManifoldPreset;
use crate::quantum::{parse_expression, QuantumAlgebra};
use crate::rational::{parse_rational, rat, ExactRational};
use crate::seidel::{
    quasimorphism_report, seidel_inverse, val_sequence, QuasimorphismOptions, SeidelElement, VolumeConvention,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Manifold {
    S2xs2,
    Blowup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionChoice {
    #[value(name = "omega_n")]
    OmegaN,
    #[value(name = "omega_n_factorial")]
    OmegaNFactorial,
    All,
}

impl ConventionChoice {
    fn conventions(self) -> Vec<VolumeConvention> {
        match self {
            Self::OmegaN => vec![VolumeConvention::OmegaN],
            Self::OmegaNFactorial => vec![VolumeConvention::OmegaNFactorial],
            Self::All => vec![VolumeConvention::OmegaN, VolumeConvention::OmegaNFactorial],
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qhcalc", version, about = "Exact quantum homology and Seidel element computations")]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CliConfig {
    #[arg(long, value_enum, global = true)]
    pub manifold: Option<Manifold>,
    /// Area ratio of the sphere product, e.g. `3/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Blow-up size, e.g. `1/4`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, global = true, default_value_t = -64, allow_hyphen_values = true)]
    pub series_floor: i64,
    /// Energy floor of the Seidel element; deepened automatically when needed.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub energy_floor: Option<String>,
    #[arg(long, global = true, default_value_t = 10)]
    pub window: usize,
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[arg(long, value_enum, global = true, default_value = "all")]
    pub volume_convention: ConventionChoice,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a quantum product expression such as `A*B` or `E*F - P`.
    Product { expr: String },
    /// Certify the splitting of the even quantum subalgebra into fields.
    Semisimple,
    /// Asymptotic slope of spectral numbers along the Seidel loop.
    Quasimorphism {
        #[arg(long, default_value_t = 40)]
        k_max: usize,
    },
    /// Run the full verification battery.
    VerifyPaper {
        /// Replace the product table by a deliberately wrong one.
        #[arg(long, hide = true)]
        perturbed_table: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::PresetMismatch(_) | Error::InvalidPreset(_) | Error::FractionalExponent(_) => {
                EXIT_INPUT
            }
            Error::SlopeNotStabilized(_) => EXIT_UNSTABLE,
            _ => EXIT_FAILURE,
        };
        Self { code, message: e.to_string() }
    }
}

fn rational_arg(name: &str, text: &str) -> Result<ExactRational, Failure> {
    parse_rational(text).map_err(|e| Failure::input(format!("--{name}: {e}")))
}

impl CliConfig {
    /// The preset selected by `--manifold` and exactly one matching parameter.
    pub fn preset(&self) -> Result<ManifoldPreset, String> {
        let parse = |name: &str, t: &str| parse_rational(t).map_err(|e| format!("--{name}: {e}"));
        match (self.manifold, &self.lambda, &self.mu) {
            (None, _, _) => Err("--manifold is required".into()),
            (Some(Manifold::S2xs2), Some(l), None) => {
                ManifoldPreset::sphere_product(parse("lambda", l)?).map_err(|e| e.to_string())
            }
            (Some(Manifold::Blowup), None, Some(m)) => {
                let m = parse("mu", m)?;
                if m == rat(1, 3) {
                    return Err("--mu 1/3 is excluded: the class F - 2E has zero area there; choose another value in (0, 1)".into());
                }
                ManifoldPreset::blow_up(m).map_err(|e| e.to_string())
            }
            (Some(Manifold::S2xs2), _, _) => Err("s2xs2 takes --lambda and no --mu".into()),
            (Some(Manifold::Blowup), _, _) => Err("blowup takes --mu and no --lambda".into()),
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: &Value) -> Result<(), Failure> {
    let s = match format {
        Format::Text => text.to_string(),
        Format::Json => serde_json::to_string_pretty(value).expect("json values serialize"),
    };
    let s = if s.ends_with('\n') { s } else { s + "\n" };
    out.write_all(s.as_bytes()).map_err(|e| Failure { code: EXIT_FAILURE, message: e.to_string() })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = &cli.config;
    if let Command::VerifyPaper { perturbed_table } = cli.command {
        let bc = BatteryConfig { perturbed_table, window: cfg.window, ..Default::default() };
        let results = run_battery(&bc);
        emit(out, cfg.format, &battery_text(&results), &battery_json(&bc, &results))?;
        return Ok(if results.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILURE });
    }
    let preset = cfg.preset().map_err(Failure::input)?;
    let alg = QuantumAlgebra::new(preset.clone())?;
    match &cli.command {
        Command::Product { expr } => {
            let c = parse_expression(&alg, expr)?;
            emit(out, cfg.format, &alg.render(&c), &alg.to_json(&c))?;
        }
        Command::Semisimple => {
            let cert = split_fields(&preset, cfg.series_floor)?;
            let mut text = format!("preset: {}\nverdict: {}\n", preset.name(), cert.verdict);
            text.push_str(&format!("squarefree: {}\nprecision floor: {}\n", cert.squarefree, cert.precision_floor));
            for s in &cert.segments {
                text.push_str(&format!("newton segment: slope {} length {}\n", s.slope, s.length));
            }
            for f in &cert.factors {
                let coeffs: Vec<String> = f.poly.coeffs().iter().map(|c| c.to_string()).collect();
                text.push_str(&format!("factor [{}] x{} ({})\n", coeffs.join(", "), f.multiplicity, f.reason));
            }
            if let Some(n) = &cert.note {
                text.push_str(&format!("note: {n}\n"));
            }
            emit(out, cfg.format, &text, &cert.to_json())?;
        }
        Command::Quasimorphism { k_max } => {
            let energy_floor = match &cfg.energy_floor {
                Some(t) => Some(rational_arg("energy-floor", t)?),
                None => None,
            };
            let opts = QuasimorphismOptions {
                k_max: *k_max,
                window: cfg.window,
                energy_floor: energy_floor.clone(),
                series_floor: cfg.series_floor,
            };
            let conventions = cfg.volume_convention.conventions();
            match quasimorphism_report(&alg, &opts) {
                Ok(r) => emit(out, cfg.format, &r.to_text(&conventions), &r.to_json(&conventions))?,
                Err(Error::SlopeNotStabilized(_)) => {
                    let floor = energy_floor.unwrap_or_else(|| -SeidelElement::default_depth(&preset));
                    let s = seidel_inverse(&preset, &floor);
                    let seq = val_sequence(&alg, &s, &alg.unit(), *k_max, cfg.window)?;
                    let vals: Vec<String> = seq.entries.iter().map(|(_, v)| v.to_string()).collect();
                    let text = format!(
                        "preset: {}\nslope did not stabilize within k_max = {k_max} (window {})\nunit sequence: {}\n",
                        preset.name(),
                        cfg.window,
                        vals.join(", ")
                    );
                    let value = json!({
                        "stabilized": false,
                        "k_max": k_max,
                        "window": cfg.window,
                        "unit_sequence": vals,
                    });
                    emit(out, cfg.format, &text, &value)?;
                    return Ok(EXIT_UNSTABLE);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::VerifyPaper { .. } => unreachable!(),
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("qhcalc").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn products() {
        assert_eq!(call(&["--manifold", "s2xs2", "--lambda", "2", "product", "A*B"]).1, "P\n");
        assert_eq!(call(&["--manifold", "s2xs2", "--lambda", "2", "product", "M*M"]).1, "M\n");
        assert_eq!(call(&["--manifold", "blowup", "--mu", "1/2", "product", "F*F"]).1, "E ⊗ q^{-E}\n");
    }

    #[test]
    fn input_errors() {
        assert_eq!(call(&["--manifold", "blowup", "--mu", "1/3", "semisimple"]).0, EXIT_INPUT);
        assert_eq!(call(&["--manifold", "blowup", "--lambda", "2", "semisimple"]).0, EXIT_INPUT);
        assert_eq!(call(&["--manifold", "s2xs2", "--lambda", "2", "product", "A**"]).0, EXIT_INPUT);
        assert_eq!(call(&["--manifold", "s2xs2", "--lambda", "2", "product", "E*A"]).0, EXIT_INPUT);
        assert_eq!(call(&["semisimple"]).0, EXIT_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn semisimple_verdicts() {
        let (code, out, _) = call(&["--manifold", "blowup", "--mu", "1/4", "--series-floor", "-20", "semisimple"]);
        assert_eq!(code, 0);
        assert!(out.contains("verdict: SEMISIMPLE_SPLIT(2)"), "{out}");
    }

    #[test]
    fn short_k_max_is_unstable() {
        let (code, out, _) = call(&["--manifold", "s2xs2", "--lambda", "2", "quasimorphism", "--k-max", "5"]);
        assert_eq!(code, EXIT_UNSTABLE);
        assert!(out.contains("unit sequence: 7/12"), "{out}");
    }
}
