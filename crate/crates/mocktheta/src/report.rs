//! Check results and suite reports, with their JSON form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Where a check was evaluated: a point of the upper half-plane or a
/// truncation order in powers of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Tau([f64; 2]),
    Order(i64),
    None,
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::Tau([z.re, z.im])
    }
}

/// Non-finite residuals (a computation that failed) are written as `null`.
mod residual_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub point: Point,
    #[serde(with = "residual_serde")]
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, point: Point, residual: f64, tol: f64) -> Self {
        CheckResult { name: name.into(), point, residual, tol, pass: residual <= tol, note: None }
    }

    pub fn failed(name: impl Into<String>, point: Point, tol: f64, why: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            point,
            residual: f64::INFINITY,
            tol,
            pass: false,
            note: Some(why.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// A recorded quantity that is reported but not asserted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub name: String,
    pub value: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub id: String,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub measurements: Vec<Measurement>,
}

impl SuiteReport {
    pub fn new(id: &str) -> Self {
        SuiteReport { id: id.to_string(), checks: Vec::new(), measurements: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub max_box: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub points: usize,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
    pub env: Environment,
    #[serde(default)]
    pub wall_time_s: f64,
}

impl Report {
    pub fn new(seed: u64, points: usize, suites: Vec<SuiteReport>, wall_time_s: f64) -> Self {
        let pass = !suites.is_empty() && suites.iter().all(SuiteReport::pass);
        Report {
            seed,
            points,
            suites,
            pass,
            env: Environment {
                version: env!("CARGO_PKG_VERSION").to_string(),
                max_box: mocktheta_core::zwegers::max_box(),
            },
            wall_time_s,
        }
    }

    pub fn total_checks(&self) -> usize {
        self.suites.iter().map(|s| s.checks.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per suite: id, checks, failures, largest residual.
    pub fn summary_table(&self) -> String {
        let mut out = format!("{:<20} {:>7} {:>6} {:>12}  {}\n", "suite", "checks", "fail", "max resid", "status");
        for s in &self.suites {
            out += &format!(
                "{:<20} {:>7} {:>6} {:>12.3e}  {}\n",
                s.id,
                s.checks.len(),
                s.failures(),
                s.max_residual(),
                if s.pass() { "pass" } else { "FAIL" }
            );
        }
        out += &format!("total {} checks, {:.1} s: {}\n", self.total_checks(), self.wall_time_s, if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_tracks_residual() {
        assert!(CheckResult::new("a", Point::Order(5), 0.0, 0.0).pass);
        assert!(!CheckResult::new("a", Point::Order(5), 1e-8, 1e-9).pass);
        assert!(!CheckResult::new("a", Point::None, f64::NAN, 1.0).pass);
        assert!(!SuiteReport::new("empty").pass());
    }

    #[test]
    fn json_round_trip_with_failed_check() {
        let mut s = SuiteReport::new("x");
        s.checks.push(CheckResult::new("ok", Complex64::new(0.1, 0.9).into(), 1e-12, 1e-8));
        s.checks.push(CheckResult::failed("bad", Point::Order(50), 0.0, "boom"));
        s.measurements.push(Measurement { name: "m".into(), value: [1.0, -1.0] });
        let r = Report::new(1, 2, vec![s], 0.5);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!back.pass);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v["suites"][0]["checks"][1]["residual"].is_null());
        assert_eq!(v["suites"][0]["checks"][0]["point"][1], 0.9);
    }
}
