use std::process::{Command, Output};

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .output()
        .expect("failed to run dunkl")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn first_number(out: &Output) -> f64 {
    stdout(out).split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn verify_core_passes() {
    let out = dunkl(&["verify", "--suite", "core", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 5);
    assert!(!text.contains("FAIL"));
}

#[test]
fn zero_multiplicity_kernel_is_exponential() {
    let out = dunkl(&["eval-kernel", "--group", "I2", "--kappa", "0,0", "--z", "1,0", "--w", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(first_number(&out), std::f64::consts::E);
}

#[test]
fn intertwine_x1_on_i2() {
    let out = dunkl(&["intertwine", "--group", "I2", "--kappa", "0.5,0.5", "--poly", "x1", "--z", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let field = |name: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(name)).unwrap();
        line.split_whitespace().nth(1).unwrap().parse().unwrap()
    };
    assert!((field("value") - 0.5).abs() < 1e-12);
    assert_eq!(field("oracle"), 0.5);
    assert!(field("diff") < 1e-12);
}

#[test]
fn xu_line_matches_oracle() {
    let out = dunkl(&[
        "intertwine", "--group", "I5", "--kappa", "0.75", "--poly", "x1^3 - 2*x1*x2^2", "--z", "0.8,0.3",
        "--xu-line", "2", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["diff"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["xu_line"].as_u64(), Some(2));
}

#[test]
fn eval_kernel_json_schema() {
    let out = dunkl(&["eval-kernel", "--group", "I4", "--kappa", "0.5,1", "--z", "1,0.3", "--w", "0.4,-0.6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "eval-kernel");
    assert_eq!(v["group"], "I4");
    assert_eq!(v["alpha"].as_f64(), Some(0.5));
    assert_eq!(v["beta"].as_f64(), Some(1.0));
    assert_eq!(v["z"][1].as_f64(), Some(0.3));
    assert_eq!(v["w"][1].as_f64(), Some(-0.6));
    assert_eq!(v["function"], "dunkl_kernel");
    assert!(v["value"].as_f64().unwrap() > 0.0);
    assert!(v["method"].is_string());
    assert!(v["tolerances"]["uv_order"].is_u64());

    let plain = dunkl(&["eval-kernel", "--group", "I4", "--kappa", "0.5,1", "--z", "1,0.3", "--w", "0.4,-0.6"]);
    assert_eq!(first_number(&plain), v["value"].as_f64().unwrap());
}

#[test]
fn bessel_flag_switches_function() {
    let out = dunkl(&["eval-kernel", "--group", "I3", "--kappa", "1", "--z", "1,0.3", "--w", "0.4,0.6", "--bessel", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["function"], "generalized_bessel");
}

#[test]
fn laplace_prints_value() {
    let out = dunkl(&["laplace", "--group", "I4", "--kappa", "0.5,0.75", "--z", "0.3,0.2", "--w", "0.5,-0.1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(first_number(&out) > 0.0);
}

#[test]
fn transform_of_gaussian_is_gaussian() {
    let out = dunkl(&["transform", "--group", "I4", "--kappa", "0.5,1", "--y", "0.3,0.4", "--input", "gaussian"]);
    assert_eq!(out.status.code(), Some(0));
    let parts: Vec<f64> = stdout(&out).split_whitespace().map(|s| s.parse().unwrap()).collect();
    assert!((parts[0] - (-0.125f64).exp()).abs() < 1e-8);
    assert!(parts[1].abs() < 1e-8);
}

#[test]
fn table_csv_is_bit_stable() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("dunkl-table-a-{}.csv", std::process::id()));
    let b = dir.join(format!("dunkl-table-b-{}.csv", std::process::id()));
    for path in [&a, &b] {
        let out = dunkl(&[
            "table", "--group", "I3", "--kappa", "0.5", "--sweep", "z.r=0:1:0.25", "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let ta = std::fs::read(&a).unwrap();
    let tb = std::fs::read(&b).unwrap();
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
    assert_eq!(ta, tb);

    let text = String::from_utf8(ta).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("group,alpha,beta,z1,z2,w1,w2,value,oracle,abs_err"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let err: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(err < 1e-7, "{row}");
    }
}

#[test]
fn thread_count_does_not_change_table() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_dunkl"))
            .env("DUNKL_THREADS", threads)
            .args(["table", "--group", "I4", "--kappa", "0.5,1.3", "--sweep", "w.phi=0:3:0.5", "--bessel"])
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn config_file_and_overrides() {
    let path = std::env::temp_dir().join(format!("dunkl-cfg-{}.txt", std::process::id()));
    std::fs::write(&path, "uv_order = 24\n").unwrap();
    let out = dunkl(&[
        "eval-kernel", "--config", path.to_str().unwrap(), "--set", "simplex_order=14", "--group", "I4",
        "--kappa", "1,1", "--z", "1,0", "--w", "0,1", "--json",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tolerances"]["uv_order"].as_u64(), Some(24));
    assert_eq!(v["tolerances"]["simplex_order"].as_u64(), Some(14));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["eval-kernel", "--group", "I2"],
        &["eval-kernel", "--group", "J4", "--kappa", "1", "--z", "1,0", "--w", "1,0"],
        &["eval-kernel", "--group", "I3", "--kappa", "0.5,1", "--z", "1,0", "--w", "1,0"],
        &["eval-kernel", "--group", "I4", "--kappa", "1", "--z", "1", "--w", "1,0"],
        &["intertwine", "--group", "I4", "--kappa", "1", "--poly", "x1^", "--z", "1,0"],
        &["intertwine", "--group", "I4", "--kappa", "1", "--poly", "x1", "--z", "1,0", "--xu-line", "1"],
        &["table", "--group", "I4", "--kappa", "1", "--sweep", "z.theta=0:1:0.1"],
        &["verify", "--suite", "nope"],
        &["eval-kernel", "--set", "uv_order", "--group", "I4", "--kappa", "1", "--z", "1,0", "--w", "1,0"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = dunkl(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn bad_thread_env_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .env("DUNKL_THREADS", "zero")
        .args(["verify", "--suite", "core"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
