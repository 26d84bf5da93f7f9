//! The verification catalogue. Every suite returns a full report and never
//! stops at the first failure.

mod corollary;
mod exact;
mod forms;
mod internal;
mod lemmas;
mod negative;
mod table1;

use std::time::Instant;

use mocktheta_core::Error as CoreError;
use num_complex::Complex64;

use crate::points::{sample_points, DEFAULT_POINTS, DEFAULT_SEED};
use crate::report::{CheckResult, Measurement, Point, Report, SuiteReport};

pub use table1::{table1_rows, Closed, Table1Row};

/// Suites run by `all`, in report order.
pub const CATALOGUE: [&str; 16] = [
    "choi_exact",
    "f1_series_exact",
    "theta_split_exact",
    "zwegers_internal",
    "table1",
    "prop2",
    "theorem1_S",
    "theorem1_T",
    "prop3",
    "j_transform",
    "shadow_S",
    "completion_ST",
    "lemma_pf",
    "lemma_int",
    "corollary_g02",
    "corollary_g04",
];

/// Deliberately broken inputs that must fail.
pub const NEGATIVE_CONTROLS: &str = "negative_controls";

#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub seed: u64,
    pub points: usize,
    /// Overrides every numeric tolerance when set.
    pub tol: Option<f64>,
    /// Overrides the truncation order of the exact suites when set.
    pub order: Option<i64>,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: DEFAULT_SEED, points: DEFAULT_POINTS, tol: None, order: None }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("{0}")]
    Invalid(String),
}

impl Params {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.points == 0 {
            return Err(ConfigError::Invalid("at least one sample point is required".into()));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ConfigError::Invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        if let Some(n) = self.order {
            if n < 1 {
                return Err(ConfigError::Invalid(format!("order must be at least 1, got {n}")));
            }
        }
        Ok(())
    }

    pub(crate) fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    pub(crate) fn order(&self, default: i64) -> i64 {
        self.order.unwrap_or(default)
    }

    pub(crate) fn taus(&self) -> Vec<Complex64> {
        sample_points(self.seed, self.points)
    }

    pub(crate) fn taus_upto(&self, n: usize) -> Vec<Complex64> {
        sample_points(self.seed, self.points.min(n))
    }
}

/// Accuracy requested from evaluations feeding a check of tolerance `tol`.
pub(crate) fn eval_tol(tol: f64) -> f64 {
    (tol * 1e-2).clamp(1e-12, 1e-9)
}

/// `|a − b| / max(1, |a|)`.
pub(crate) fn scaled(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}

/// Accumulates checks of one suite.
pub(crate) struct Suite {
    report: SuiteReport,
}

impl Suite {
    fn new(id: &str) -> Self {
        Suite { report: SuiteReport::new(id) }
    }

    pub(crate) fn push(&mut self, c: CheckResult) {
        self.report.checks.push(c);
    }

    /// Records a residual, or the error that prevented computing it.
    pub(crate) fn check(&mut self, name: impl Into<String>, point: Point, tol: f64, r: Result<f64, CoreError>) {
        let name = name.into();
        match r {
            Ok(res) => self.push(CheckResult::new(name, point, res, tol)),
            Err(e) => self.push(CheckResult::failed(name, point, tol, e.to_string())),
        }
    }

    /// One check per component of a pair of six-vectors.
    pub(crate) fn check_vector(
        &mut self,
        name: &str,
        point: Point,
        tol: f64,
        r: Result<([Complex64; 6], [Complex64; 6]), CoreError>,
    ) {
        match r {
            Ok((lhs, rhs)) => {
                for k in 0..6 {
                    self.push(CheckResult::new(format!("{name}[{}]", k + 1), point, scaled(lhs[k], rhs[k]), tol));
                }
            }
            Err(e) => {
                for k in 0..6 {
                    self.push(CheckResult::failed(format!("{name}[{}]", k + 1), point, tol, e.to_string()));
                }
            }
        }
    }

    pub(crate) fn measure(&mut self, name: impl Into<String>, z: Complex64) {
        self.report.measurements.push(Measurement { name: name.into(), value: [z.re, z.im] });
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

pub fn is_known(id: &str) -> bool {
    id == "all" || id == NEGATIVE_CONTROLS || CATALOGUE.contains(&id)
}

pub fn run_suite(id: &str, p: &Params) -> Result<SuiteReport, ConfigError> {
    p.validate()?;
    let mut s = Suite::new(id);
    match id {
        "choi_exact" => exact::choi(&mut s, p),
        "f1_series_exact" => exact::f1_series(&mut s, p),
        "theta_split_exact" => exact::theta_split(&mut s, p),
        "zwegers_internal" => internal::zwegers_internal(&mut s, p),
        "table1" => table1::table1(&mut s, p),
        "prop2" => forms::prop2(&mut s, p),
        "theorem1_S" => forms::theorem1_s(&mut s, p),
        "theorem1_T" => forms::theorem1_t(&mut s, p),
        "prop3" => forms::prop3(&mut s, p),
        "j_transform" => forms::j_transform(&mut s, p),
        "shadow_S" => forms::shadow_s(&mut s, p),
        "completion_ST" => forms::completion_st(&mut s, p),
        "lemma_pf" => lemmas::lemma_pf(&mut s, p),
        "lemma_int" => lemmas::lemma_int(&mut s, p),
        "corollary_g02" => corollary::g02(&mut s, p),
        "corollary_g04" => corollary::g04(&mut s, p),
        NEGATIVE_CONTROLS => negative::negative_controls(&mut s, p),
        other => return Err(ConfigError::UnknownSuite(other.to_string())),
    }
    Ok(s.finish())
}

/// Marks an empty suite as failed so a catalogue entry cannot pass vacuously.
fn completeness(mut r: SuiteReport) -> SuiteReport {
    if r.checks.is_empty() {
        r.checks.push(CheckResult::failed("nonempty", Point::None, 0.0, "suite produced no checks"));
    }
    r
}

/// Runs one suite, `all` (the catalogue), or the negative controls.
pub fn run(id: &str, p: &Params) -> Result<Report, ConfigError> {
    p.validate()?;
    let start = Instant::now();
    let ids: Vec<&str> = if id == "all" { CATALOGUE.to_vec() } else { vec![id] };
    let mut suites = Vec::with_capacity(ids.len());
    for id in ids {
        suites.push(completeness(run_suite(id, p)?));
    }
    Ok(Report::new(p.seed, p.points, suites, start.elapsed().as_secs_f64()))
}
