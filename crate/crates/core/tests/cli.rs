use std::path::PathBuf;
use std::process::{Command, Output};

fn cuntz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuntz")).args(args).env_remove("CUNTZ_SCALAR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cuntz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Runs with `--json` and returns the `re` field.
fn json_re(name: &str, args: &[&str]) -> f64 {
    let path = scratch(name);
    let mut all = vec!["--json", path.to_str().unwrap()];
    all.extend_from_slice(args);
    let o = cuntz(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["re"].as_f64().unwrap()
}

fn number(o: &Output) -> f64 {
    let text = stdout(o);
    let s = text.trim().trim_end_matches("+0i").trim_end_matches("-0i");
    s.parse().unwrap_or_else(|_| panic!("not a real number: {text:?}"))
}

#[test]
fn necklace_count() {
    let o = cuntz(&["necklace", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "18");
}

#[test]
fn restriction_rendering() {
    let o = cuntz(&["restrict", "--endo", "phi[2,3]", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "a3 -> K1 a4"), "{}", stdout(&o));
}

#[test]
fn normal_form() {
    let o = cuntz(&["normal-form", "s[1;2] s[2;1] + s[2;1] s[1;2]"]);
    assert_eq!(stdout(&o).trim(), "I");
    let o = cuntz(&["normal-form", "a1 a1*"]);
    assert_eq!(stdout(&o).trim(), "I - a1* a1");
}

#[test]
fn branching_labels() {
    let o = cuntz(&["branch", "--p", "4"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "B_4 = 6");
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"Rep(1,2,2,2)"));
}

#[test]
fn kms_state_value() {
    let args = ["state", "--beta", "1", "--eps", "0.5", "--expr", "a1* a1"];
    let want = 1.0 / (1.0 + 0.5f64.exp());
    assert!((number(&cuntz(&args)) - want).abs() < 1e-6);
    assert!((json_re("state.json", &args) - want).abs() < 1e-12);
    let o = cuntz(&["state", "--lambda", "0.2,0.7"]);
    assert!(stdout(&o).contains("ω(a2* a2) = 0.700000000000"), "{}", stdout(&o));
}

#[test]
fn two_point_function() {
    let args = ["npoint", "--example", "1", "--ops", "a2@0.3,a2*@-0.2"];
    assert!((number(&cuntz(&args)) - 0.5f64.cos()).abs() < 1e-6);
    assert!((json_re("npoint.json", &args) - 0.5f64.cos()).abs() < 1e-12);
}

#[test]
fn experiment_tables() {
    let spec = scratch("exp.json");
    std::fs::write(&spec, r#"{"example": 1, "t_grid": [0.0, 0.5], "modes": [2], "observable": "two_point"}"#).unwrap();
    let (json, csv) = (scratch("exp_out.json"), scratch("exp_out.csv"));
    let o = cuntz(&["--json", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(), "experiment", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!((rows[1]["re"].as_f64().unwrap() - 0.5f64.cos()).abs() < 1e-12);
    let csv = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv.lines().next(), Some("t,column,re,im"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn suite_reports() {
    let (json, csv) = (scratch("branching.json"), scratch("branching.csv"));
    let o = cuntz(&["--json", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(), "suite", "branching"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["suite"], "branching");
    assert_eq!(v["counts"]["failed"], 0);
    assert!(v["counts"]["passed"].as_u64().unwrap() > 0);
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.iter().any(|c| c["id"].as_str().unwrap().contains("B_4")));
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("id,status,witness\n"));
}

#[test]
fn failing_suite_exits_1() {
    let o = cuntz(&["suite", "dynamics", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"), "{}", stdout(&o));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["suite", "nope"][..],
        &["suite", "relations", "--p-max", "9"],
        &["normal-form", "s[1;"],
        &["npoint", "--example", "4", "--ops", "a1@0"],
        &["npoint", "--example", "1", "--ops", "b1@0"],
        &["state", "--lambda", "1.5"],
        &["necklace"],
    ] {
        assert_eq!(cuntz(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn backend_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_cuntz"))
            .args(["normal-form", "s1 s1* + s2 s2*"])
            .env("CUNTZ_SCALAR", v)
            .output()
            .unwrap()
    };
    assert_eq!(stdout(&run("float")).trim(), "I");
    assert_eq!(stdout(&run("exact")).trim(), "I");
    assert_eq!(run("quaternion").status.code(), Some(2));
}
