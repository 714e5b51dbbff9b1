use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn toeplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toeplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run_config(dir: &TempDir, body: &str, extra: &[&str]) -> (Output, PathBuf) {
    let cfg = write_config(dir.path(), "config.json", body);
    let out = dir.path().join("out");
    let mut args = vec!["run", "--config", cfg.to_str().unwrap(), "--output-dir", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    (toeplab(&args), out)
}

fn outputs(dir: &Path, ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_shows_every_experiment() {
    let o = toeplab(&["list"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    for name in ["weyl-count", "laplace", "euler-maclaurin", "fourier-interval"] {
        assert!(text.contains(name), "{text}");
    }
    let o = toeplab(&["list", "--verbose"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("final_rel"));
}

#[test]
fn passing_run_writes_csv_and_json() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run_config(&dir, r#"{"experiment": "euler-maclaurin"}"#, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = outputs(&out, "csv");
    let json = outputs(&out, "json");
    assert_eq!((csv.len(), json.len()), (1, 1));
    assert!(csv[0].file_name().unwrap().to_str().unwrap().starts_with("euler-maclaurin-"));
    let text = std::fs::read_to_string(&csv[0]).unwrap();
    assert_eq!(text.lines().next(), Some("# schema=v1"));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "case,k,tau,actual,predicted,residual");
    // floats carry 17 significant digits
    let row = text.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
    let tau = row.split(',').nth(2).unwrap();
    assert_eq!(tau, "1.0000000000000000e1");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json[0]).unwrap()).unwrap();
    assert!(doc["anchor"].as_str().unwrap().contains("Euler-Maclaurin"));
    assert!(doc["tolerances"]["final_abs"].is_number());
    assert_eq!(doc["verdict"], "pass");
    assert!(doc["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn verdict_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let (o, out) = run_config(
        &dir,
        r#"{"experiment": "weyl-count", "k_ladder": [50, 100], "tolerances": {"final_rel": 1e-9}}"#,
        &[],
    );
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let json = outputs(&out, "json");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json[0]).unwrap()).unwrap();
    assert_eq!(doc["verdict"], "fail");
}

#[test]
fn unknown_keys_are_config_errors() {
    let dir = TempDir::new().unwrap();
    for (body, key) in [
        (r#"{"experiment": "weyl-count", "k_lader": [100]}"#, "k_lader"),
        (r#"{"experiment": "weyl-count", "tolerances": {"final_rell": 0.1}}"#, "final_rell"),
        (r#"{"experiment": "weyl-count", "model": {"geometry": "bargmann", "radios": 1}}"#, "radios"),
        (r#"{"experiment": "laplace", "parameters": {"phase": ["cubic"]}}"#, "phase"),
    ] {
        let (o, out) = run_config(&dir, body, &[]);
        assert_eq!(o.status.code(), Some(2), "{body}");
        assert!(stderr(&o).contains(key), "{body}: {}", stderr(&o));
        assert!(!out.exists());
    }
}

#[test]
fn bad_configs_exit_two() {
    let dir = TempDir::new().unwrap();
    for body in [
        r#"{"experiment": "weyl-count", "k_ladder": []}"#,
        r#"{"experiment": "weyl-count", "k_ladder": [200, 100]}"#,
        r#"{"experiment": "no-such-experiment"}"#,
        r#"{"experiment": "clt"}"#,
        r#"{"experiment": "constants", "k_ladder": [100]}"#,
        r#"{"experiment": "laplace", "model": {"geometry": "cylinder"}}"#,
        r#"{"experiment": "weyl-count""#,
    ] {
        let (o, _) = run_config(&dir, body, &[]);
        assert_eq!(o.status.code(), Some(2), "{body}: {}", stderr(&o));
    }
    let o = toeplab(&["run", "--config", "/nonexistent/config.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = toeplab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let (o, _) = run_config(&dir, r#"{"experiment": "cgf"}"#, &["--jobs", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_flag_overrides_config_and_csv_is_deterministic() {
    let body = r#"{"experiment": "clt", "seed": 1, "k_ladder": [100, 400], "parameters": {"samples": 20000}}"#;
    let mut bodies = Vec::new();
    for jobs in ["1", "4"] {
        let dir = TempDir::new().unwrap();
        let (o, out) = run_config(&dir, body, &["--seed", "99", "--jobs", jobs]);
        assert!(o.status.code() == Some(0) || o.status.code() == Some(1), "{}", stderr(&o));
        let text = std::fs::read_to_string(&outputs(&out, "csv")[0]).unwrap();
        assert!(text.contains("# seed=99"));
        bodies.push(text);
    }
    assert_eq!(bodies[0], bodies[1]);
    let ks: Vec<&str> = bodies[0]
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ks, ["100", "400"]);
}

#[test]
fn config_output_dir_is_used_without_flag() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("from-config");
    let body = format!(r#"{{"experiment": "cgf", "output_dir": {:?}}}"#, target.to_str().unwrap());
    let cfg = write_config(dir.path(), "c.json", &body);
    let o = toeplab(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(outputs(&target, "csv").len(), 1);
}
