use std::process::{Command, Output};

use serde_json::Value;

fn tailcast(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tailcast"))
        .args(args)
        .env_remove("TAILCAST_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exponents_reports_table_value() {
    let v = json(&tailcast(&["exponents", "--family", "heavy", "--n", "7", "--t-ratio", "4"]));
    let lambda = v["exponents"][0].as_f64().unwrap();
    assert!((lambda - 0.3363).abs() < 1e-4);
    assert_eq!(v["exponents"].as_array().unwrap().len(), 5);

    let v = json(&tailcast(&["exponents", "--family", "bounded", "--n", "3", "--t", "16"]));
    assert!((v["exponents"][0].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn predict_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.txt");
    std::fs::write(&path, "3.1\n0.4\n1.7\n9.2\n2.2\n5.0\n0.9\n12.5\n").unwrap();
    let p = path.to_str().unwrap();

    let v = json(&tailcast(&["predict", "--input", p, "--n", "7", "--t-ratio", "4"]));
    let x_t = v["x_T"].as_f64().unwrap();
    assert!(x_t > 12.5);
    assert!(v["components"]["u_alpha_star"].is_number());
    let f1 = v["f1"].as_f64().unwrap();
    let xi = v["xi_hat"].as_f64().unwrap();
    assert!((f1 - 1.0 / (1.0 + (-xi).exp())).abs() < 1e-12);

    // At T = N+1 every anchored predictor returns the sample maximum.
    let v = json(&tailcast(&["predict", "--input", p, "--n", "7", "--t-ratio", "1"]));
    assert_eq!(v["x_T"].as_f64().unwrap(), 12.5);

    let v = json(&tailcast(&["predict", "--input", p, "--t-ratio", "2", "--method", "bayes-unif"]));
    assert!(v["components"].is_null());
}

#[test]
fn usage_and_runtime_errors() {
    assert_eq!(tailcast(&["predict", "--n", "7"]).status.code(), Some(2));
    assert_eq!(tailcast(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tailcast(&["exponents", "--family", "heavy", "--n", "7", "--t-ratio", "0.5"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat.txt");
    std::fs::write(&path, "1\n1\n1\n1\n").unwrap();
    let out = tailcast(&["predict", "--input", path.to_str().unwrap(), "--t-ratio", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    assert_eq!(tailcast(&["--help"]).status.code(), Some(0));
}

#[test]
fn seeds_from_flag_env_or_generated() {
    let args = ["evaluate", "--n", "5", "--t-ratios", "2", "--xi", "0.5", "--reps", "2000"];
    let with_flag = tailcast(&[&args[..], &["--seed", "17"]].concat());
    let with_env = Command::new(env!("CARGO_BIN_EXE_tailcast"))
        .args(args)
        .env("TAILCAST_SEED", "17")
        .output()
        .unwrap();
    assert!(with_flag.status.success());
    assert_eq!(with_flag.stdout, with_env.stdout);

    let generated = tailcast(&args);
    assert!(generated.status.success());
    let err = String::from_utf8_lossy(&generated.stderr);
    let seed: u64 = err
        .lines()
        .find_map(|l| l.strip_prefix("seed: "))
        .expect("generated seed is reported")
        .trim()
        .parse()
        .unwrap();
    let replay = tailcast(&[&args[..], &["--seed", &seed.to_string()]].concat());
    assert_eq!(replay.stdout, generated.stdout);
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"method": "data-max", "n": 5, "t_ratios": [1], "xi": [0.5, -0.5], "reps": 3000, "seed": 3, "format": "json"}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&tailcast(&["evaluate", "--config", c]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["target_t"].as_f64().unwrap(), 6.0);

    let out = dir.path().join("out.csv");
    let o = tailcast(&["evaluate", "--config", c, "--format", "csv", "--xi", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("axis,target_ratio,target_t,exceed_count,reps,"));
    assert_eq!(text.lines().count(), 2);

    std::fs::write(&cfg, r#"{"n": 5, "bogus": 1}"#).unwrap();
    assert_eq!(tailcast(&["evaluate", "--config", c]).status.code(), Some(2));
}

#[test]
fn trial_and_density() {
    let out = tailcast(&[
        "trial", "--dist", r#"{"kind":"uniform"}"#, "--m", "15", "--n", "7", "--t-ratios", "1,2", "--reps", "4000",
        "--seed", "5", "--method", "data-max",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0], "uniform");
    assert_eq!(first[2], "16");

    let v = json(&tailcast(&["density", "--n", "4", "--xi", "-1.5", "--t", "0.2,0.6"]));
    let (a, b) = (v["route_a"].as_f64().unwrap(), v["route_b"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-10 * a);
    // Uniform data (ξ = −1) have density (N−2)! on the simplex.
    let v = json(&tailcast(&["density", "--xi", "-1", "--t", "0.2,0.6"]));
    assert!((v["density"].as_f64().unwrap() - 2.0).abs() < 1e-10);
    assert_eq!(tailcast(&["density", "--n", "5", "--xi", "1", "--t", "0.5"]).status.code(), Some(2));
}
