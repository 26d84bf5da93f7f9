use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mocktheta::complex_arg::parse_complex;
use mocktheta::core::qexact::{f1_component_lhs, mock_theta_series, theta_series, FracPowerSeries, MockTheta};
use mocktheta::core::special::{q_pow_f64, theta2, theta3, theta4, Rat};
use mocktheta::core::tenth::{
    f_vector, g_vector, h_vector, j_vector, mock_theta_numeric, shadow_vector, Family, FormVector,
};
use mocktheta::core::zwegers::set_max_box;
use mocktheta::core::Error as CoreError;
use mocktheta::formats::{series_to_csv, series_to_json, vector_to_json};
use mocktheta::points::{DEFAULT_POINTS, DEFAULT_SEED};
use mocktheta::suites::{self, Params};
use num_complex::Complex64;
use serde_json::json;

const USAGE: u8 = 2;
const NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "mocktheta", version, about = "Tenth-order mock theta functions: evaluation and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function or vector at a point.
    Eval {
        /// phi psi X chi F1 F2 H1 H2 G1 G2 J1 J2 shadow1 shadow2 theta2 theta3 theta4
        #[arg(long = "fn", visible_alias = "vector")]
        selector: String,
        /// Point of the upper half-plane, e.g. 0.1+0.8i.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        /// Argument of J1/J2, Re β > 0.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact q-expansion below q^order.
    Coeffs {
        /// phi psi X chi theta2 theta3 theta4 F1.1 … F1.6
        #[arg(long = "fn")]
        selector: String,
        #[arg(long, allow_hyphen_values = true)]
        order: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite, `all`, or `negative_controls`.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        /// Replaces every numeric tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Truncation order of the exact suites.
        #[arg(long)]
        order: Option<i64>,
        /// Summary format on stdout; the report file is always JSON.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Where to write the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: message.into() }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::NonConvergence(_) | CoreError::NearSingular(_) | CoreError::NotInvertible => NUMERIC,
            _ => USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn point(name: &str, raw: Option<&str>) -> Result<Complex64, Failure> {
    let raw = raw.ok_or_else(|| usage(format!("--{name} is required for this function")))?;
    parse_complex(raw).map_err(|e| usage(format!("--{name}: {e}")))
}

fn upper(tau: Complex64) -> Result<Complex64, Failure> {
    if tau.im > 0.0 && tau.re.is_finite() && tau.im.is_finite() {
        Ok(tau)
    } else {
        Err(usage(format!("tau must have positive imaginary part, got {tau}")))
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:+.16e} {:+.16e}i", z.re, z.im)
}

fn scalar_out(selector: &str, tau: Complex64, value: Complex64, err: f64, format: Format) -> String {
    match format {
        Format::Json => json!({"fn": selector, "tau": [tau.re, tau.im], "value": [value.re, value.im], "err": err})
            .to_string(),
        Format::Csv => format!("re,im,err\n{:e},{:e},{err:e}\n", value.re, value.im),
        Format::Text => format!("{selector}({tau}) = {}  (err {err:.1e})\n", fmt_c(value)),
    }
}

fn vector_out(selector: &str, v: &FormVector, format: Format) -> String {
    match format {
        Format::Json => vector_to_json(v),
        Format::Csv => {
            let mut s = String::from("component,re,im\n");
            for (k, z) in v.entries.iter().enumerate() {
                s += &format!("{},{:e},{:e}\n", k + 1, z.re, z.im);
            }
            s
        }
        Format::Text => {
            let mut s = format!("{selector} at {}  (err {:.1e})\n", v.tau, v.err);
            for (k, z) in v.entries.iter().enumerate() {
                s += &format!("  [{}] {}\n", k + 1, fmt_c(*z));
            }
            s
        }
    }
}

/// Splits `H2` into `("H", F2)`.
fn family(selector: &str) -> Option<(&str, Family)> {
    match selector.strip_suffix('1') {
        Some(kind) => Some((kind, Family::F1)),
        None => selector.strip_suffix('2').map(|kind| (kind, Family::F2)),
    }
}

fn eval(selector: &str, tau: Option<&str>, beta: Option<&str>, tol: f64, format: Format) -> Result<String, Failure> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(usage(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(m) = MockTheta::parse(selector) {
        let tau = upper(point("tau", tau)?)?;
        let e = mock_theta_numeric(m, q_pow_f64(tau, 1.0), tol)?;
        return Ok(scalar_out(selector, tau, e.value, e.error, format));
    }
    if let Some(k) = selector.strip_prefix("theta") {
        let tau = upper(point("tau", tau)?)?;
        let value = match k {
            "2" => theta2(tau)?,
            "3" => theta3(tau)?,
            "4" => theta4(tau)?,
            _ => return Err(usage(format!("unknown function {selector:?}"))),
        };
        // summed until terms drop below 1e-18, so only rounding remains
        let err = 4.0 * f64::EPSILON * value.norm().max(1.0);
        return Ok(scalar_out(selector, tau, value, err, format));
    }
    let (kind, f) = family(selector).ok_or_else(|| usage(format!("unknown function {selector:?}")))?;
    let v = match kind {
        "J" => {
            let b = point("beta", beta)?;
            if b.re.is_nan() || b.re <= 0.0 {
                return Err(usage(format!("beta must have positive real part, got {b}")));
            }
            j_vector(f, b, tol)?
        }
        "F" | "H" | "G" | "shadow" => {
            let tau = upper(point("tau", tau)?)?;
            match kind {
                "F" => f_vector(f, tau, tol)?,
                "H" => h_vector(f, tau, tol)?,
                "G" => g_vector(f, tau, tol)?,
                _ => shadow_vector(f, tau, tol)?,
            }
        }
        _ => return Err(usage(format!("unknown function {selector:?}"))),
    };
    Ok(vector_out(selector, &v, format))
}

fn series(selector: &str, order: Rat) -> Result<FracPowerSeries, Failure> {
    if let Some(m) = MockTheta::parse(selector) {
        return Ok(mock_theta_series(m, order)?);
    }
    match selector {
        "theta2" => Ok(theta_series(2, Rat::from_integer(1), order)?),
        "theta3" => Ok(theta_series(3, Rat::from_integer(1), order)?),
        "theta4" => Ok(theta_series(4, Rat::from_integer(1), order)?),
        _ => match selector.strip_prefix("F1.").and_then(|c| c.parse::<usize>().ok()) {
            Some(c) => Ok(f1_component_lhs(c, order)?),
            None => Err(usage(format!("no exact series for {selector:?}"))),
        },
    }
}

fn coeffs(selector: &str, order: &str, format: Format) -> Result<String, Failure> {
    let order: Rat = order.parse().map_err(|_| usage(format!("--order: cannot parse {order:?}")))?;
    if order <= Rat::from_integer(0) {
        return Err(usage(format!("order must be positive, got {order}")));
    }
    let s = series(selector, order)?;
    Ok(match format {
        Format::Json => series_to_json(&s),
        Format::Csv => series_to_csv(&s),
        Format::Text => s.to_text() + "\n",
    })
}

fn verify(suite: &str, params: Params, format: Format, out: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    if !suites::is_known(suite) {
        return Err(usage(format!("unknown suite {suite:?}")));
    }
    let report = suites::run(suite, &params).map_err(|e| usage(e.to_string()))?;
    if let Some(path) = out {
        emit(&report.to_json(), &Some(path.clone()))?;
    }
    match format {
        Format::Json if out.is_none() => println!("{}", report.to_json()),
        Format::Csv => {
            println!("suite,check,residual,tol,pass");
            for s in &report.suites {
                for c in &s.checks {
                    println!("{},{:?},{:e},{:e},{}", s.id, c.name, c.residual, c.tol, c.pass);
                }
            }
        }
        _ => {
            print!("{}", report.summary_table());
            for s in &report.suites {
                for c in s.checks.iter().filter(|c| !c.pass).take(20) {
                    println!("  FAIL {}: {} residual {:.3e} tol {:.1e}", s.id, c.name, c.residual, c.tol);
                }
            }
        }
    }
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn apply_env() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("MOCKTHETA_MAX_BOX") {
        let r: i64 = v.trim().parse().map_err(|_| usage(format!("MOCKTHETA_MAX_BOX: not an integer: {v:?}")))?;
        if r < 1 {
            return Err(usage(format!("MOCKTHETA_MAX_BOX must be at least 1, got {r}")));
        }
        set_max_box(r);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    apply_env()?;
    match cli.command {
        Command::Eval { selector, tau, beta, tol, format, out } => {
            emit(&eval(&selector, tau.as_deref(), beta.as_deref(), tol, format)?, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Coeffs { selector, order, format, out } => {
            emit(&coeffs(&selector, &order, format)?, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed, points, tol, order, format, out } => {
            verify(&suite, Params { seed, points, tol, order }, format, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
