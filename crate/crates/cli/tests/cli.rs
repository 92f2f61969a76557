use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use chaoscert::{ChaosStatus, Verdict};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chaoscert"))
        .args(args)
        .env_remove("CHAOSCERT_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn certify(alpha: &str, beta: &str) -> (i32, Verdict) {
    let o = run(&["certify", "--alpha", alpha, "--beta", beta]);
    let verdict = serde_json::from_slice(&o.stdout).expect("verdict json");
    (o.status.code().unwrap(), verdict)
}

#[test]
fn certify_exit_codes_follow_status() {
    let (code, v) = certify("3.9", "1");
    assert_eq!(code, 0);
    assert_eq!(v.status, ChaosStatus::OddCycleAndTurbulent);

    let (code, v) = certify("3.5", "1");
    assert_eq!(code, 1);
    assert_eq!(v.status, ChaosStatus::NoOddCycleNoTurbulence);

    let (code, v) = certify("4.5", "1");
    assert_eq!(code, 2);
    assert_eq!(v.status, ChaosStatus::NotInG);
}

#[test]
fn certify_json_round_trips() {
    let o = run(&["certify", "--alpha", "8", "--beta", "3"]);
    let v: Verdict = serde_json::from_slice(&o.stdout).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(again.trim_end(), stdout(&o).trim_end());
    assert_eq!(v.alpha, 8.0);
    assert_eq!(v.m, 0.25);
    assert!(v.margins.unwrap().min_pi_minus_f3m > 0.0);
}

#[test]
fn usage_errors_exit_64_with_one_line() {
    for args in [
        &["certify", "--alpha", "-1", "--beta", "1"][..],
        &["certify", "--alpha", "abc", "--beta", "1"],
        &["threshold", "--beta", "2", "--tol", "1e-15"],
        &[
            "sweep",
            "--beta-range",
            "1-10",
            "--n",
            "4",
            "--out",
            "x.csv",
        ],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_74() {
    let o = run(&[
        "scan",
        "--nx",
        "16",
        "--ny",
        "16",
        "--out",
        "/nonexistent-dir/fig.csv",
    ]);
    assert_eq!(o.status.code(), Some(74));
}

#[test]
fn threshold_text_and_json() {
    let o = run(&["threshold", "--beta", "2"]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("chaos_threshold 5.574"),
        "{}",
        stdout(&o)
    );
    assert!(stdout(&o).contains("f2m_threshold   4.500"));

    let o = run(&["threshold", "--beta", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["chaos_threshold"].as_f64().unwrap() - 11.795).abs() < 1e-3);
    assert_eq!(v["multiple_crossings"], false);
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn scan_writes_nx_times_ny_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let o = run(&[
        "scan",
        "--nx",
        "40",
        "--ny",
        "30",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = read(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,beta,label"));
    assert_eq!(lines.count(), 40 * 30);
    assert!(stdout(&o).contains("1200 rows"));
}

#[test]
fn curves_contain_m_line_at_quarter_for_beta_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig3.csv");
    assert!(
        run(&["curves", "--beta", "3", "--out", out.to_str().unwrap()])
            .status
            .success()
    );
    let text = read(&out);
    assert_eq!(text.lines().next(), Some("beta,alpha,k,kind"));
    let m_rows: Vec<&str> = text.lines().filter(|l| l.ends_with(",m_line")).collect();
    assert!(!m_rows.is_empty());
    for row in m_rows {
        assert_eq!(row.split(',').nth(2), Some("0.25"), "{row}");
    }
    assert!(text.lines().any(|l| l.ends_with(",fixed")));
    assert!(text.lines().any(|l| l.ends_with(",period2")));
}

#[test]
fn sweep_g_upper_is_increasing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("thresholds.csv");
    let o = run(&[
        "sweep",
        "--beta-range",
        "1:10",
        "--n",
        "19",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = read(&out);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 19);
    assert!(rows.windows(2).all(|w| w[1][2] > w[0][2]));
    for r in &rows {
        assert!(r[1] < r[3] && r[3] < r[4] && r[4] <= r[2], "{r:?}");
    }
}

#[test]
fn outputs_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let jobs: [(&str, &[&str]); 3] = [
        ("scan", &["scan", "--nx", "120", "--ny", "96"]),
        ("curves", &["curves", "--beta", "2.5", "--n", "60"]),
        (
            "sweep",
            &[
                "sweep",
                "--beta-range",
                "0.5:12",
                "--n",
                "12",
                "--tol",
                "1e-10",
            ],
        ),
    ];
    for (name, base) in jobs {
        let mut outputs = Vec::new();
        for (i, threads) in ["1", "4", "4"].iter().enumerate() {
            let out = dir.path().join(format!("{name}-{i}.csv"));
            let mut args = base.to_vec();
            args.extend(["--threads", threads, "--out", out.to_str().unwrap()]);
            assert!(run(&args).status.success(), "{args:?}");
            outputs.push(fs::read(&out).unwrap());
        }
        assert!(
            outputs.windows(2).all(|w| w[0] == w[1]),
            "{name} output differs"
        );
    }
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("chaoscert.toml");
    fs::write(&cfg, "scan_nx = 20\nscan_ny = 18\n").unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "scan",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(read(&out).lines().count(), 1 + 20 * 18);

    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "scan",
        "--ny",
        "16",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(read(&out).lines().count(), 1 + 20 * 16);

    let o = Command::new(env!("CARGO_BIN_EXE_chaoscert"))
        .args(["scan", "--out", out.to_str().unwrap()])
        .env("CHAOSCERT_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(read(&out).lines().count(), 1 + 20 * 18);

    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "threshold",
        "--beta",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(64));
}
