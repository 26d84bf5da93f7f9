use std::process::{Command, Output};

use mocktheta::core::qexact::{mock_theta_series, MockTheta};
use mocktheta::core::special::Rat;
use mocktheta::core::tenth::Family;
use mocktheta::formats::{series_from_json, vector_from_json};
use mocktheta::report::Report;
use num_traits::ToPrimitive;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn run_env(args: &[&str], max_box: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mocktheta"));
    cmd.args(args).env_remove("MOCKTHETA_MAX_BOX");
    if let Some(b) = max_box {
        cmd.env("MOCKTHETA_MAX_BOX", b);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval_scalar_and_vectors() {
    let o = run(&["eval", "--fn", "phi", "--tau", "0+1.0i", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // exact expansion summed at q = e^{−2π}; the q^12 tail is below 1e-30
    let q = (-2.0 * std::f64::consts::PI).exp();
    let exact = mock_theta_series(MockTheta::Phi, Rat::from_integer(12)).unwrap();
    let want: f64 = exact.terms().map(|(e, c)| c.to_f64().unwrap() * q.powf(e as f64 / 80.0)).sum();
    assert!((v["value"][0].as_f64().unwrap() - want).abs() < 1e-14);
    assert_eq!(v["value"][1].as_f64().unwrap(), 0.0);

    let o = run(&["eval", "--fn", "F1", "--tau", "0.1+0.8i", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let fv = vector_from_json(&stdout(&o)).unwrap();
    assert_eq!(fv.family, Family::F1);
    assert_eq!(fv.entries.len(), 6);

    let o = run(&["eval", "--vector", "J1", "--beta", "3.14159+0i", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = vector_from_json(&stdout(&o)).unwrap();
    assert!(j.entries.iter().all(|z| z.im == 0.0));
    assert!(j.entries[0].re < 0.0 && j.entries[1].re < 0.0);

    for sel in ["H2", "G1", "shadow2", "theta4", "chi"] {
        let o = run(&["eval", "--fn", sel, "--tau", "-0.2+1.1i", "--format", "csv"]);
        assert_eq!(code(&o), 0, "{sel}");
    }
}

#[test]
fn coeffs_listings() {
    let text = |sel: &str, order: &str| stdout(&run(&["coeffs", "--fn", sel, "--order", order])).trim().to_string();
    assert_eq!(text("chi", "5"), "q - q^2 + q^3 - 2q^4");
    assert_eq!(text("theta2", "2"), "2q^(1/8) + 2q^(9/8)");
    assert_eq!(text("phi", "1"), "1");

    let o = run(&["coeffs", "--fn", "psi", "--order", "30", "--format", "json"]);
    let s = series_from_json(&stdout(&o)).unwrap();
    assert_eq!(s, mock_theta_series(MockTheta::Psi, Rat::from_integer(30)).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["eval", "--fn", "F1", "--tau", "0.1-0.8i"])), 2);
    assert_eq!(code(&run(&["eval", "--fn", "F3", "--tau", "0.1+0.8i"])), 2);
    assert_eq!(code(&run(&["eval", "--fn", "J1", "--beta", "-1+0i"])), 2);
    assert_eq!(code(&run(&["eval", "--fn", "F1", "--tau", "abc"])), 2);
    assert_eq!(code(&run(&["coeffs", "--fn", "F1", "--order", "3"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "table1", "--points", "0"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run_env(&["verify", "--suite", "table1"], Some("zero"))), 2);
    assert_eq!(code(&run(&["eval", "--fn", "phi", "--tau", "0+0.000001i"])), 3);
    assert_eq!(code(&run_env(&["eval", "--fn", "H1", "--tau", "0.1+0.8i"], Some("1"))), 3);
}

#[test]
fn tolerance_floor_fails_verification() {
    let o = run(&["verify", "--suite", "theorem1_S", "--tol", "1e-15"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL theorem1_S"));
}

#[test]
fn report_schema_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let (a, b) = (path("a.json"), path("b.json"));
    for p in [&a, &b] {
        let o = run_env(&["verify", "--suite", "prop3", "--points", "4", "--out", p], Some("120"));
        assert_eq!(code(&o), 0);
    }
    let ra: Report = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let mut rb: Report = serde_json::from_str(&std::fs::read_to_string(&b).unwrap()).unwrap();
    rb.wall_time_s = ra.wall_time_s;
    assert_eq!(ra, rb);
    assert_eq!(ra.env.max_box, 120);

    let v: Value = serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert!(v["seed"].is_u64() && v["pass"].as_bool().unwrap());
    let check = &v["suites"][0]["checks"][0];
    assert_eq!(v["suites"][0]["id"], "prop3");
    assert_eq!(check["point"].as_array().unwrap().len(), 2);
    for key in ["name", "residual", "tol", "pass"] {
        assert!(!check[key].is_null(), "{key}");
    }

    let o = run(&["verify", "--suite", "choi_exact", "--order", "20", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suites"][0]["checks"][0]["point"], 20);
}
