use std::f64::consts::LN_2;
use std::sync::{Mutex, MutexGuard};

use serde_json::Value;

// clap reads SPINOR_LAB_TOL from the process environment.
static ENV: Mutex<()> = Mutex::new(());

fn env_lock() -> MutexGuard<'static, ()> {
    ENV.lock().unwrap_or_else(|e| e.into_inner())
}

struct Output {
    code: u8,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
}

impl Output {
    fn success(&self) -> bool {
        self.code == 0
    }
}

fn invoke(args: &[&str]) -> Output {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("spinor-lab").chain(args.iter().copied());
    let code = super::run(argv, &mut stdout, &mut stderr);
    Output { code, stdout, stderr }
}

fn run(args: &[&str]) -> Output {
    let _guard = env_lock();
    invoke(args)
}

fn json(out: &Output) -> Value {
    assert!(out.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn axis_examples() {
    let v = json(&run(&["axis", "--m", "1", "--eta", "0", "--omega", "0"]));
    assert_eq!(v["theta_rad"], 0.0);

    let w = LN_2.to_string();
    let v = json(&run(&["axis", "--m", "1", "--eta", "0", "--omega", &w]));
    assert!((v["theta_rad"].as_f64().unwrap() - 0.6435011).abs() < 1e-7);
    assert!((v["cos2_half_theta"].as_f64().unwrap() - 0.9).abs() < 1e-12);

    let v = json(&run(&["axis", "--m", "1", "--eta", &w, "--omega", &w]));
    let theta = v["theta_rad"].as_f64().unwrap();
    assert!((theta - 0.9547).abs() < 1e-4);
    assert!((v["theta_deg"].as_f64().unwrap() - theta.to_degrees()).abs() < 1e-12);
    assert_eq!(v["phi"], 0.0);
    let p: Vec<f64> = serde_json::from_value(v["p_prime"].clone()).unwrap();
    assert!((p[0] - 1.5625).abs() < 1e-12 && (p[1] - 0.9375).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["axis", "--m=0"]).code, 2);
    assert_eq!(run(&["axis", "--eta=-1"]).code, 2);
    assert_eq!(run(&["sweep", "--steps", "0"]).code, 2);
    assert_eq!(run(&["fig2", "--steps", "1"]).code, 2);
    assert_eq!(run(&["check", "--tol", "0"]).code, 2);
    assert_eq!(run(&["state"]).code, 2);
    assert_eq!(run(&["state", "--p", "1,2,3"]).code, 2);
    assert_eq!(run(&["state", "--p", "2,0,0,0", "--m", "1"]).code, 2);
    assert_eq!(run(&["bogus"]).code, 2);
}

#[test]
fn check_passes_by_default_and_is_deterministic() {
    let a = run(&["check", "--trials", "50", "--seed", "3"]);
    let b = run(&["check", "--trials", "50", "--seed", "3"]);
    assert!(a.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with("PASS")).count(), 8);
}

#[test]
fn check_fails_below_floating_point_floor() {
    let out = run(&["check", "--trials", "10", "--tol", "1e-30"]);
    assert_eq!(out.code, 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("suite"));
}

#[test]
fn tolerance_env_var() {
    let _guard = env_lock();
    std::env::set_var("SPINOR_LAB_TOL", "1e-30");
    let strict = invoke(&["check", "--trials", "10"]);
    let overridden = invoke(&["check", "--trials", "10", "--tol", "1e-10"]);
    std::env::remove_var("SPINOR_LAB_TOL");
    assert_eq!(strict.code, 1);
    assert!(overridden.success());
}

#[test]
fn sweep_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let w = LN_2.to_string();
    let out = run(&[
        "sweep", "--eta-max", &w, "--omega-max", &w, "--steps", "2", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("eta,omega,theta_rad,phi_rad,cos2_half_theta\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][2], 0.0);
    assert_eq!((rows[1][0], rows[1][1]), (0.0, LN_2));
    assert!((rows[1][2] - 0.6435011).abs() < 1e-7);
    assert_eq!((rows[2][0], rows[2][1]), (LN_2, 0.0));
    assert_eq!(rows[2][2], 0.0);
    // 17 significant digits round-trip exactly
    assert_eq!(rows[3][0], LN_2);
}

#[test]
fn sweep_to_stdout() {
    let out = run(&["sweep", "--steps", "3"]);
    assert!(out.success());
    assert_eq!(csv_rows(&String::from_utf8(out.stdout).unwrap()).len(), 9);
}

#[test]
fn unwritable_path_exits_1() {
    let out = run(&["fig2", "--out", "/nonexistent-dir/x/fig2.csv"]);
    assert_eq!(out.code, 1);
}

#[test]
fn fig2_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let out = run(&["fig2", "--omega-max", "5", "--steps", "201", "--out", path.to_str().unwrap()]);
    assert!(out.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("omega,theta_rad,cos2_half_theta\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 201);
    assert_eq!(rows[0][1], 0.0);
    assert!(rows.windows(2).all(|w| w[1][1] >= w[0][1]));
    let last = rows.last().unwrap();
    assert_eq!(last[0], 5.0);
    assert!((last[1] - 1.557).abs() < 1e-3 && last[1] < std::f64::consts::FRAC_PI_2);
}

#[test]
fn fig2_ln2_row() {
    let w = (2.0 * LN_2).to_string();
    let out = run(&["fig2", "--omega-max", &w, "--steps", "3"]);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert!((rows[1][1] - 0.6435011).abs() < 1e-7);
}

#[test]
fn state_from_flags() {
    let v = json(&run(&["state", "--m", "1", "--p", "1,0,0,0", "--alpha", "0"]));
    assert!((v["psi_bar_psi"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    assert!((v["j0"].as_f64().unwrap() - 1.0).abs() < 1e-15);

    let v = json(&run(&["state", "--m", "1", "--p", "1.25,0,0,0.75", "--alpha", "0"]));
    assert!((v["j0"].as_f64().unwrap() - 1.25).abs() < 1e-15);
    assert!((v["u_dag_u"].as_f64().unwrap() - 1.25).abs() < 1e-15);

    let v = json(&run(&["state", "--p", "1,0,0,0", "--kind", "antiparticle"]));
    assert!((v["psi_bar_psi"].as_f64().unwrap() + 1.0).abs() < 1e-15);
    assert!(v["bloch"].is_null());
}

#[test]
fn state_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.json");
    let h = std::f64::consts::FRAC_1_SQRT_2 * std::f64::consts::FRAC_1_SQRT_2;
    let rec = serde_json::json!({
        "kind": "particle",
        "m": 1.0,
        "p": [1.0, 0.0, 0.0, 0.0],
        "components": [[h, 0.0], [h, 0.0], [h, 0.0], [h, 0.0]],
    });
    std::fs::write(&path, rec.to_string()).unwrap();
    let v = json(&run(&["state", "--file", path.to_str().unwrap()]));
    let b: Vec<f64> = serde_json::from_value(v["bloch"].clone()).unwrap();
    assert!((b[0] - 1.0).abs() < 1e-15 && b[1].abs() < 1e-15 && b[2].abs() < 1e-15);
}

#[test]
fn malformed_state_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"kind\": \"particle\", \"m\": 1").unwrap();
    assert_eq!(run(&["state", "--file", path.to_str().unwrap()]).code, 2);
    std::fs::write(&path, "{\"kind\": \"quark\", \"m\": 1, \"p\": [1,0,0,0], \"components\": [[1,0],[0,0],[0,0],[0,0]]}").unwrap();
    assert_eq!(run(&["state", "--file", path.to_str().unwrap()]).code, 2);
}

#[test]
fn missing_state_file_exits_1() {
    assert_eq!(run(&["state", "--file", "/nonexistent/psi.json"]).code, 1);
}
