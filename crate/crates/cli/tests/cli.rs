// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

use zeno_core::register::RecoherenceStage;

fn zeno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeno"))
        .args(args)
        .env_remove("ZENO_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    zeno(args).status.code().expect("exited normally")
}

/// Parses CSV text into header and rows.
fn table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn simulate_free_evolution_final_row() {
    let o = zeno(&[
        "simulate", "--omega", "1", "-T", "0.1", "-n", "100", "--eta", "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = table(&stdout(&o));
    assert_eq!(
        &h[..6],
        [
            "n",
            "eta_n",
            "p_exact",
            "p_second_order",
            "criterion",
            "regime"
        ]
    );
    assert_eq!(rows.len(), 100);
    let last = rows.last().unwrap();
    let p: f64 = last[column(&h, "p_exact")].parse().unwrap();
    let p2: f64 = last[column(&h, "p_second_order")].parse().unwrap();
    assert!((p - 0.1f64.cos().powi(2)).abs() < 1e-12);
    assert!((p2 - 0.99).abs() < 1e-12);
    assert_eq!(last[column(&h, "regime")], "FreeEvolution");
}

#[test]
fn simulate_oracle_agrees_with_projected_chain() {
    let o = zeno(&[
        "simulate", "--omega", "1", "-T", "1", "-n", "10", "--eta", "0", "--oracle", "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = v["summary"]["p_exact"].as_f64().unwrap();
    let po = v["summary"]["p_oracle"].as_f64().unwrap();
    assert!((p - 0.1f64.cos().powi(20)).abs() < 1e-12);
    assert!((p - po).abs() < 1e-12);
}

#[test]
fn oracle_cap_is_a_capacity_error() {
    let o = zeno(&["simulate", "-n", "25", "--oracle"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("2^20"), "{}", stderr(&o));
}

#[test]
fn classify_examples() {
    let o = zeno(&[
        "classify",
        "--schedule",
        "power-law",
        "--alpha",
        "1",
        "--beta",
        "0.5",
    ]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("Zeno, lim p = 1"));

    let o = zeno(&[
        "classify",
        "--schedule",
        "power-law",
        "--alpha",
        "2",
        "--beta",
        "1",
    ]);
    assert!(
        stderr(&o).contains("Intermediate, lim p ≈ 0.4323"),
        "{}",
        stderr(&o)
    );
    assert!(stderr(&o).contains("; agrees"));

    let o = zeno(&[
        "classify",
        "--schedule",
        "exponential",
        "--alpha",
        "1",
        "--beta",
        "0.2",
    ]);
    assert!(stderr(&o).contains("FreeEvolution, lim p = 1 − VT²"));
}

#[test]
fn classify_reports_both_limits() {
    let o = zeno(&["classify", "--eta", "0.7", "--n-max", "4096"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = table(&stdout(&o));
    let regime = column(&h, "regime");
    let tail: Vec<&str> = rows
        .iter()
        .rev()
        .take(2)
        .map(|r| r[regime].as_str())
        .collect();
    assert_eq!(tail, ["numeric:Zeno", "Zeno"]);
    // probe grid 2^4..2^12 plus two limit rows
    assert_eq!(rows.len(), 9 + 2);
}

#[test]
fn sweep_rows_are_ordered_and_p_falls_with_eta() {
    let o = zeno(&[
        "sweep",
        "-n",
        "50",
        "-T",
        "0.5",
        "--grid",
        "eta=1:-0.1:0",
        "--grid",
        "omega=2,1",
    ]);
    // negative step is rejected
    assert_eq!(o.status.code(), Some(2));

    let o = zeno(&[
        "sweep",
        "-n",
        "50",
        "-T",
        "0.5",
        "--grid",
        "omega=2,1",
        "--grid",
        "eta=0:0.1:1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = table(&stdout(&o));
    assert_eq!(rows.len(), 22);
    let (om, eta, p) = (
        column(&h, "grid_omega"),
        column(&h, "grid_eta"),
        column(&h, "p_exact"),
    );
    let keys: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r[om].parse().unwrap(), r[eta].parse().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(keys, sorted);
    for block in rows.chunks(11) {
        let ps: Vec<f64> = block.iter().map(|r| r[p].parse().unwrap()).collect();
        // weaker decoherence, less protection
        assert!(ps.windows(2).all(|w| w[1] <= w[0] + 1e-15), "{ps:?}");
    }
}

#[test]
fn sweep_power_law_in_n_approaches_free_evolution() {
    let o = zeno(&[
        "sweep",
        "--schedule",
        "power-law",
        "--alpha",
        "1",
        "--beta",
        "2",
        "-T",
        "0.1",
        "--grid",
        "n=2^4..2^16",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = table(&stdout(&o));
    let p = column(&h, "p_exact");
    let last: f64 = rows.last().unwrap()[p].parse().unwrap();
    // 1 - VT² to second order; the exact free-evolution value is cos²(0.1)
    assert!((last - 0.99).abs() < 1e-4, "{last}");
    assert!((last - 0.1f64.cos().powi(2)).abs() < 1e-5);
}

#[test]
fn sweep_is_identical_across_thread_counts() {
    let args = ["sweep", "--grid", "n=1:1:40", "--grid", "eta=0:0.25:1"];
    let single = zeno(&args);
    let parallel = Command::new(env!("CARGO_BIN_EXE_zeno"))
        .args(args)
        .env("ZENO_THREADS", "4")
        .output()
        .unwrap();
    assert!(single.status.success() && parallel.status.success());
    assert_eq!(single.stdout, parallel.stdout);
}

#[test]
fn physical_examples() {
    let o = zeno(&[
        "physical",
        "free-particle",
        "--mass",
        "1e-26",
        "--sigma",
        "1e-10",
    ]);
    assert!(o.status.success());
    let (_, rows) = table(&stdout(&o));
    let tc: f64 = rows.iter().find(|r| r[0] == "t_c_s").unwrap()[1]
        .parse()
        .unwrap();
    assert!((tc / 2.68e-12 - 1.0).abs() < 0.01);
    assert!(rows
        .iter()
        .any(|r| r[0] == "reported_t_c_s" && r[1] == "4e-13"));

    let o = zeno(&[
        "physical",
        "gaussian-pointer",
        "--v",
        "1",
        "--sigma",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["schedule"], "power-law(alpha=1, beta=2)");
    assert_eq!(v["summary"]["regime"], "FreeEvolution");

    let o = zeno(&[
        "physical",
        "brownian",
        "--diffusion",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["regime"], "Intermediate");
    assert!((v["summary"]["k"].as_f64().unwrap() - 0.5677).abs() < 1e-4);
}

#[test]
fn recohere_json_round_trips_bit_exactly() {
    let o = zeno(&["recohere", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let stages: Vec<RecoherenceStage> =
        serde_json::from_value(v["summary"]["stages"].clone()).unwrap();
    assert_eq!(stages, zeno_core::recoherence_demo());
    assert_eq!(stages[1].coherence, 0.0);
    assert!((stages[2].coherence - 0.5).abs() < 1e-12);
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"omega": 1.0, "T": 0.1, "n": 100, "eta": 1.0, "format": "json"}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_file = zeno(&["simulate", "--config", cfg]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(v["parameters"]["n"], 100);

    let overridden = zeno(&["simulate", "--config", cfg, "-n", "10", "--format", "csv"]);
    let (_, rows) = table(&stdout(&overridden));
    assert_eq!(rows.len(), 10);
}

#[test]
fn explicit_schedule_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("explicit.json");
    std::fs::write(
        &cfg,
        r#"{"schedule": "explicit", "overlaps": [0.9, [0.0, 0.5], 1.0], "n": 3, "oracle": true, "format": "json"}"#,
    )
    .unwrap();
    let o = zeno(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["regime"], "numeric-only");
    assert!(v["summary"]["oracle_abs_diff"].as_f64().unwrap() < 1e-12);
}

#[test]
fn output_path_receives_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rho.csv");
    let o = zeno(&["recohere", "--output", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("stage,label,"));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["recohere"], 0),
        (&["simulate", "-n", "20", "--oracle"], 0),
        (&["simulate", "-n", "21", "--oracle"], 3),
        (&["simulate", "-n", "0"], 2),
        (&["simulate", "--eta", "1.5"], 2),
        (&["simulate", "--omega", "nan"], 2),
        (&["simulate", "--schedule", "power-law", "--alpha", "1"], 2),
        (&["simulate", "--schedule", "explicit"], 2),
        (&["simulate", "--config", "/nonexistent/zeno.json"], 2),
        (
            &[
                "classify",
                "--schedule",
                "power-law",
                "--alpha",
                "-1",
                "--beta",
                "1",
            ],
            2,
        ),
        (&["classify", "--n-max", "8"], 2),
        (&["sweep"], 2),
        (&["sweep", "--grid", "eta="], 2),
        (&["sweep", "--grid", "eta=1:0.1:0"], 2),
        (&["sweep", "--grid", "alpha=1,2"], 2),
        (
            &["sweep", "--grid", "omega=1:1:1000", "--grid", "T=1:1:1001"],
            3,
        ),
        (&["sweep", "--grid", "eta=0:1e-7:1"], 3),
        (&["physical"], 2),
        (&["physical", "free-particle", "--mass", "1e-26"], 2),
        (&["physical", "brownian", "--diffusion", "-1"], 2),
        (&["no-such-command"], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(args), *expected, "zeno {}", args.join(" "));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let invocations: &[&[&str]] = &[
        &["simulate", "-n", "64", "--eta", "0.3", "--format", "json"],
        &[
            "classify",
            "--schedule",
            "power-law",
            "--alpha",
            "1",
            "--beta",
            "1",
            "--n-max",
            "65536",
        ],
        &["sweep", "--grid", "n=2^2..2^8", "--grid", "eta=0,0.5,1"],
        &["physical", "gaussian-pointer", "--v", "2", "--sigma", "1"],
        &["recohere", "--format", "json"],
    ];
    for args in invocations {
        let a = zeno(args);
        let b = zeno(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "zeno {}", args.join(" "));
    }
}
