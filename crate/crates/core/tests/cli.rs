use std::path::Path;
use std::process::{Command, Output};

use paecs::{q_analytic, Family, PaecsSpec, C64};

fn paecs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paecs"))
        .args(args)
        .env_remove("PAECS_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn entropy_scan_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = paecs(&[
            "entropy-scan",
            "--family",
            "psi1-",
            "--alpha",
            "0:3:121",
            "--mn",
            "0,0",
            "--mn",
            "2,1",
            "--mn",
            "3,7",
            "--mn",
            "20,4",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert_eq!(read(&a), read(&b));

    let text = String::from_utf8(read(&a)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,m,n,lambda_plus,lambda_minus,entropy_bits");
    assert_eq!(lines.len(), 1 + 121 * 4);
    // α = 0 rows are kept with the marker
    for line in &lines[1..5] {
        assert!(line.starts_with("0.0,"));
        assert!(line.ends_with(",degenerate,degenerate,degenerate"));
    }
    assert!(lines[5].starts_with("0.025,0,0,0.5,0.5,1.0"));
}

#[test]
fn entropy_vs_m_json_rows() {
    let out = paecs(&[
        "entropy-vs-m",
        "--family",
        "psi1-",
        "--alpha",
        "0.2",
        "--n",
        "0,1,4,20",
        "--m-max",
        "20",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4 * 21);
    for (k, n) in [0u64, 1, 4, 20].into_iter().enumerate() {
        let block = &rows[21 * k..21 * (k + 1)];
        assert!(block.iter().all(|r| r["n"] == n));
        let best = block
            .iter()
            .max_by(|x, y| {
                x["entropy_bits"]
                    .as_f64()
                    .unwrap()
                    .total_cmp(&y["entropy_bits"].as_f64().unwrap())
            })
            .unwrap();
        assert_eq!(best["m"], n);
    }
}

#[test]
fn qfunc_csv_values_equal_direct_calls() {
    let out = paecs(&[
        "qfunc", "--family", "psi1+", "--alpha2", "0.05", "--mn", "2,1", "--range", "-4:4",
        "--points", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# family,"));
    assert!(lines[1].starts_with("# psi1+,"));
    assert_eq!(lines[2], "re_z1,re_z2,q_value");
    assert_eq!(lines.len(), 3 + 25);
    let spec = PaecsSpec::real(Family::Psi1Plus, 0.05f64.sqrt(), 2, 1).unwrap();
    for line in &lines[3..] {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let q = q_analytic(&spec, C64::new(v[0], 0.0), C64::new(v[1], 0.0)).unwrap();
        assert_eq!(v[2], q);
    }
}

#[test]
fn state_dump_is_normalized_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    let out = paecs(&[
        "state",
        "--family",
        "psi2-",
        "--alpha",
        "1.0",
        "--mn",
        "3,2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dump: serde_json::Value = serde_json::from_slice(&read(&path)).unwrap();
    assert_eq!(dump["family"], "psi2-");
    let (da, db) = (
        dump["dim_a"].as_u64().unwrap(),
        dump["dim_b"].as_u64().unwrap(),
    );
    let coeffs = dump["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len() as u64, da * db);
    let norm: f64 = coeffs
        .iter()
        .map(|z| z[0].as_f64().unwrap().powi(2) + z[1].as_f64().unwrap().powi(2))
        .sum();
    assert!((norm - 1.0).abs() < 1e-12);
}

#[test]
fn configuration_errors_exit_with_2() {
    for args in [
        &["entropy-scan", "--alpha", "0:3:1"][..],
        &["entropy-scan", "--mn", "3"],
        &["entropy-scan", "--family", "psi3+"],
        &["qfunc", "--range", "4:-4"],
        &["qfunc", "--axes", "re_z1,im_z1"],
        &["state", "--family", "psi1+", "--alpha", "1", "--mn", "41,0"],
        &["verify", "--perturb", "-2"],
        &["no-such-command"],
    ] {
        assert_eq!(paecs(args).status.code(), Some(2), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_paecs"))
        .args(["state", "--family", "psi1+", "--alpha", "1", "--mn", "1,1"])
        .env("PAECS_MAX_DIM", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncation_errors_exit_with_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_paecs"))
        .args(["state", "--family", "psi1+", "--alpha", "3", "--mn", "1,1"])
        .env("PAECS_MAX_DIM", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation"));
    let degenerate = paecs(&["state", "--family", "psi1-", "--alpha", "0", "--mn", "1,1"]);
    assert_eq!(degenerate.status.code(), Some(3));
}

#[test]
fn verify_passes_and_detects_a_perturbed_normalization() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = paecs(&["verify", "--out", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&read(&path)).unwrap();
    assert_eq!(report["overall_pass"], true);
    assert!(report["typo_ledger"].as_array().unwrap().len() >= 2);

    let out = paecs(&["verify", "--perturb", "1e-6"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["overall_pass"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"normalization"), "{failed:?}");
}
