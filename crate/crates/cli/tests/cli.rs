use std::path::Path;
use std::process::{Command, Output};

use okubo_core::exact::{rat, Matrix};
use okubo_core::hg::{build_p, HGParams};
use serde_json::Value;

const PARAMS: &str = r#"{"alpha1":"1/3","beta1":"1/5","alpha2":"1/7","beta2":"1/11","gamma_mode":"okubo"}"#;

fn okubo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_okubo"))
        .args(args)
        .env_remove("OKUBO_PRECISION")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_accessory_auto() {
    let out = okubo(&["solve-accessory", "--a", "1/3", "--b", "1/5", "--c", "1/7", "--d", "1/11", "--branch", "auto"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["branch"], "via-r4");
    assert_eq!(v["chart"]["r"][0], "24047/74867");
    assert_eq!(v["chart"]["r"][3], "1");
    assert_eq!(v["matrix"][0][0], "1/3");
}

#[test]
fn check_same_on_special_and_generic_charts() {
    let dir = tempfile::tempdir().unwrap();
    let out = okubo(&["solve-accessory", "--a", "1/3", "--b", "1/5", "--c", "1/7", "--d", "1/11"]);
    let chart = json(&out)["chart"].to_string();
    let path = write(dir.path(), "chart.json", &chart);
    let out = okubo(&["check-same", "--chart", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["epsilon"].as_str(), v["delta"].as_str(), v["verdict"].as_bool()), (Some("0"), Some("0"), Some(true)));
    let out = okubo(&["check-same", "--chart", &path, "--dual"]);
    assert_eq!(out.status.code(), Some(0));

    // r4 solved from the determinant condition for r = (1, 2, 3, r4)
    let generic = okubo_core::accessory::AccessoryChart::complete_r4(
        rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), [rat(1, 1), rat(2, 1), rat(3, 1)],
    )
    .unwrap();
    let path = write(dir.path(), "generic.json", &serde_json::to_string(&generic).unwrap());
    let out = okubo(&["check-same", "--chart", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], false);
    assert!(!json(&out)["nonzero_minors"].as_array().unwrap().is_empty());
}

#[test]
fn bad_gamma_string_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = PARAMS.replace("\"okubo\"", "[\"abc\",\"1\"]");
    let path = write(dir.path(), "bad.json", &bad);
    let out = okubo(&["build-product", "--params", &path]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["code"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("abc"));
    assert_eq!(v["error"]["context"]["subcommand"], "build-product");
}

#[test]
fn usage_errors_exit_2() {
    let out = okubo(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "usage");
    let out = okubo(&["solve-accessory", "--a", "1/x", "--b", "1/5", "--c", "1/7", "--d", "1/11"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "parse");
    let out = okubo(&["check-same", "--chart", "/nonexistent/chart.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "io");
}

#[test]
fn computation_errors_exit_2_with_codes() {
    let out = okubo(&["solve-accessory", "--a", "1/2", "--b", "1/2", "--c", "1/7", "--d", "1/11"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "admissibility_violated");
    let out = okubo(&["df-solve", "--a", "1/3", "--b", "1/5", "--c", "1/7", "--g", "-1/2", "--x", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "integrability_conditions");
}

#[test]
fn emitted_matrices_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.json", PARAMS);
    let out = okubo(&["build-okubo", "--params", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let p: Matrix = serde_json::from_value(v["P"].clone()).unwrap();
    assert_eq!(p, build_p(&HGParams::okubo(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11))));
    let r: Matrix = serde_json::from_value(v["R"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), v["R"]);
    let a: Matrix = serde_json::from_value(v["system"]["A"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&a).unwrap(), v["system"]["A"]);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.json", PARAMS);
    let target = dir.path().join("report.json");
    let out = okubo(&["verify-realize", "--params", &path, "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["verdict"], true);
}

#[test]
fn series_and_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.json", PARAMS);
    let out = okubo(&["series", "--params", &path, "--base", "1", "--exponent", "1", "--terms", "4", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["solutions"][0]["coefficients"].as_array().unwrap().len(), 4);
    assert!(v["solutions"][0]["coefficients"][0][0].is_string());

    let out = okubo(&["residual", "--params", &path, "--base", "inf", "--exponent", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["max_residual"].as_f64().unwrap() <= 1e-10);

    let out = Command::new(env!("CARGO_BIN_EXE_okubo"))
        .args(["residual", "--params", &path, "--x", "0.3"])
        .env("OKUBO_PRECISION", "1e-40")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["tolerance"], 1e-40);

    let out = Command::new(env!("CARGO_BIN_EXE_okubo"))
        .args(["residual", "--params", &path])
        .env("OKUBO_PRECISION", "tiny")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = okubo(&["series", "--params", &path, "--exponent", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "exponent_index");

    let out = okubo(&["v-vector", "--params", &path, "--x", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let out = okubo(&["v-vector", "--params", &path, "--x", "-0.3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recover_chart_from_params() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.json", PARAMS);
    let out = okubo(&["recover-chart", "--params", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let chart_path = write(dir.path(), "chart.json", &v["chart"].to_string());
    let out = okubo(&["check-same", "--chart", &chart_path]);
    assert_eq!(json(&out)["verdict"], true);
}

#[test]
fn three_dimensional_commands() {
    let flags = ["--a", "1/3", "--b", "1/5", "--c", "1/7", "--g", "1/11"];
    for cmd in ["df-build", "df-reduce", "df-verify"] {
        let mut args = vec![cmd];
        args.extend(flags);
        let out = okubo(&args);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
    }
    let out = okubo(&["df-build", "--a", "1/3", "--b", "1/5", "--c", "1/7", "--g", "1/11"]);
    assert_eq!(json(&out)["C0"][0][0], "241/231");

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "df.json", r#"{"a":"1/3","b":"1/5","c":"1/7","g":"1/2","x":0.4,"nodes":256}"#);
    let out = okubo(&["df-solve", "--params", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["relative_residual"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["integrals"].as_array().unwrap().len(), 3);
    let out = okubo(&["df-solve", "--params", &path, "--nodes", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "quadrature_non_convergence");
}

#[test]
fn verify_all_is_reproducible() {
    let a = okubo(&["verify-all", "--seed", "5"]);
    let b = okubo(&["verify-all", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 5);
}
