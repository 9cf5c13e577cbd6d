//! End-to-end runs of the `bsq-lab` binary on the shipped configs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use boussinesq_lab::csvio::read_csv;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsq-lab")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_header(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).lines().next().unwrap_or_default().to_string()
}

#[test]
fn soliton_writes_the_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.csv");
    let out = run(&["soliton", "--config", &config("soliton.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let table = read_csv(fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(table.header, ["x", "t", "u", "provenance"]);
    assert_eq!(table.rows.len(), 241 * 2);
    assert!(table.column("u").unwrap().iter().all(|u| u.is_finite()));
}

#[test]
fn json_output_is_an_array_of_records() {
    let out = run(&["soliton", "--config", &config("soliton.json"), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = value.as_array().expect("array");
    assert_eq!(rows.len(), 482);
    assert_eq!(rows[0]["provenance"], "exact_soliton");
}

#[test]
fn asym_writes_the_documented_columns() {
    let out = run(&["asym", "--config", &config("asym.json")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_header(&out), "zeta,t,u_sol,u_rad_over_sqrt_t,u_leading,A,alpha");
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1 + 9);
}

#[test]
fn modulate_and_scatter_run_on_the_examples() {
    for (cmd, file, header) in [
        ("modulate", "modulate.json", "zeta,k1_re,k1_im,nu,delta_modulus,kind,index,pole_re,pole_im,c_re,c_im"),
        ("scatter", "scatter_gaussian.json", "kind,phi,k_re,k_im,a_re,a_im,b_re,b_im,gap"),
        ("scatter", "scatter_tabulated.json", "kind,phi,k_re,k_im,a_re,a_im,b_re,b_im,gap"),
    ] {
        let out = run(&[cmd, "--config", &config(file)]);
        assert_eq!(code(&out), 0, "{file}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout_header(&out), header, "{file}");
    }
}

#[test]
fn seeded_scatter_recovers_the_zero() {
    let out = run(&["scatter", "--config", &config("scatter_seeded.json")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let table = read_csv(out.stdout.as_slice()).unwrap();
    let k_re = table.column("k_re").unwrap();
    assert_eq!(k_re.len(), 1);
    assert!((k_re[0] - 1.3).abs() < 1e-2);
}

#[test]
fn reflectionless_compare_is_exact() {
    let out = run(&["compare", "--config", &config("compare_reflectionless.json")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let table = read_csv(out.stdout.as_slice()).unwrap();
    assert!(table.column("deviation").unwrap().iter().all(|d| *d <= 1e-8));
}

#[test]
fn compare_with_reflection_reports_the_envelope_slope() {
    let out = run(&["compare", "--config", &config("compare_bump.json")]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("slope in ln t: -0.500000"), "{stderr}");
    assert!(String::from_utf8_lossy(&out.stdout).contains("prediction_only"));
}

#[test]
fn plot_emits_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("u.csv");
    let svg = dir.path().join("u.svg");
    assert_eq!(code(&run(&["soliton", "--config", &config("soliton.json"), "--out", csv.to_str().unwrap()])), 0);
    let plot = dir.path().join("plot.json");
    fs::write(&plot, r#"{"input": "u.csv", "x": "x", "y": ["u"], "title": "u"}"#).unwrap();
    let out = run(&["plot", "--config", plot.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("<polyline"));
}

#[test]
fn zeta_at_one_is_lifted_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("asym.json");
    fs::write(&path, r#"{"zeta": 1.0, "t": 10.0, "reflection": {"kind": "zero"}}"#).unwrap();
    let out = run(&["asym", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let table = read_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(table.column("zeta").unwrap(), vec![1.0 + 1e-6]);
}

#[test]
fn invalid_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    };
    let bad_spectrum = write("bad.json", r#"{"spectrum": {"solitons": [{"k": 0.5, "c_re": 1, "c_im": 0}]}, "x": 0, "t": 0}"#);
    let malformed = write("malformed.json", "{ not json");
    let unknown = write("unknown.json", r#"{"zeta": 2, "t": 1, "bogus": true}"#);
    let below = write("below.json", r#"{"zeta": 0.5, "t": 1}"#);
    let missing = dir.path().join("absent.json").to_string_lossy().into_owned();
    for args in [
        vec!["soliton", "--config", &bad_spectrum],
        vec!["soliton", "--config", &malformed],
        vec!["asym", "--config", &unknown],
        vec!["asym", "--config", &below],
        vec!["soliton", "--config", &missing],
        vec!["soliton"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn verify_quick_passes() {
    let out = run(&["verify", "--quick"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains(" 0 failed"));
}

#[test]
fn verify_accuracy_failures_exit_two() {
    let cases: [&[&str]; 2] = [&["verify", "--quick", "--fault", "beta-identity"], &["verify", "--quick", "--strict", "--seed", "7"]];
    for args in cases {
        let out = run(args);
        assert_eq!(code(&out), 2, "{args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.contains("accuracy failure") && !stderr.contains(" 0 failed"), "{args:?}");
    }
}
