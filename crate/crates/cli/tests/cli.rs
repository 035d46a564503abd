//! End-to-end tests of the `uur` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn uur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = uur(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn write_unitary(path: &Path, rows: &[[[f64; 2]; 2]]) {
    let matrix: Vec<Value> = rows
        .iter()
        .map(|r| {
            Value::from(
                r.iter()
                    .map(|e| Value::from(e.to_vec()))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let body = serde_json::json!({ "dim": rows.len(), "matrix": matrix });
    std::fs::write(path, body.to_string()).unwrap();
}

#[test]
fn omega_identity_is_trivial() {
    let v = json(&["omega", "--preset", "identity:3"]);
    assert!(floats(&v["omega_table"]["omega_k"])
        .iter()
        .all(|&x| (x - 1.0).abs() < 1e-12));
    let w = floats(&v["omega"]["entries"]);
    assert_eq!(w.len(), 9);
    assert!((w[0] - 1.0).abs() < 1e-12 && w[1..].iter().all(|&x| x.abs() < 1e-12));
}

#[test]
fn omega_hadamard_values() {
    let v = json(&["omega", "--preset", "hadamard"]);
    let omega_k = floats(&v["omega_table"]["omega_k"]);
    assert!((omega_k[0] - 0.7285534).abs() < 1e-6 && (omega_k[1] - 1.0).abs() < 1e-12);
    let w = floats(&v["omega"]["entries"]);
    for (a, b) in w.iter().zip([0.7285534, 0.2714466, 0.0, 0.0]) {
        assert!((a - b).abs() < 1e-6);
    }
    let text = stdout(&uur(&["omega", "--preset", "hadamard"]));
    assert!(
        text.contains("omega = (0.7285533906, 0.2714466094, 0.0000000000, 0.0000000000)"),
        "{text}"
    );
}

#[test]
fn omega_fig7_last_value_is_one() {
    let v = json(&["omega", "--preset", "fig7", "--theta", "0.5"]);
    let omega_k = floats(&v["omega_table"]["omega_k"]);
    assert_eq!(omega_k.len(), 4);
    assert!((omega_k[3] - 1.0).abs() < 1e-9);
    assert!(v["reorthonormalization_deviation"].as_f64().unwrap() > 0.0);
}

#[test]
fn bound_examples() {
    let v = json(&["bound", "--preset", "hadamard"]);
    assert!((v["report"]["b_jpdd"].as_f64().unwrap() - 0.584691).abs() < 1e-5);
    assert_eq!(v["report"]["piecewise_branch"], "MaassenUffink");

    for m in ["shannon", "renyi:2", "tsallis:0.5"] {
        let v = json(&["bound", "--preset", "identity:3", "--measure", m]);
        assert!(v["report"]["b_jpdd"].as_f64().unwrap().abs() < 1e-9, "{m}");
        assert!(v["report"]["b_mu"].as_f64().unwrap().abs() < 1e-12, "{m}");
    }

    let v = json(&["bound", "--preset", "hadamard", "--measure", "renyi:2"]);
    let w = floats(&v["report"]["omega"]["entries"]);
    let expected = -w.iter().map(|x| x * x).sum::<f64>().ln();
    let got = v["report"]["b_jpdd"].as_f64().unwrap();
    assert!(got.is_finite() && got >= 0.0 && (got - expected).abs() < 1e-12);

    let text = stdout(&uur(&[
        "bound",
        "--preset",
        "hadamard",
        "--log-base",
        "two",
    ]));
    assert!(
        text.contains("branch: MU_branch") && text.contains("b_mu = 1.0000000000"),
        "{text}"
    );
}

#[test]
fn bad_measure_exits_2() {
    for m in ["renyi", "renyi:1", "gini", "tsallis:abc"] {
        let o = uur(&["bound", "--preset", "hadamard", "--measure", m]);
        assert_eq!(o.status.code(), Some(2), "{m}");
        assert!(stderr(&o).contains("error"), "{m}");
    }
    let o = uur(&["bound", "--preset", "hadamard", "--log-base", "ten"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = uur(&["verify", "--preset", "identity:3", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result: no violations"));

    let o = uur(&[
        "verify",
        "--preset",
        "hadamard",
        "--samples",
        "10000",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = uur(&[
        "verify",
        "--preset",
        "fig7",
        "--theta",
        "2.0",
        "--samples",
        "10000",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    for bad in [
        vec!["verify", "--preset", "hadamard", "--samples", "0"],
        vec!["verify", "--preset", "hadamard", "--samples", "-3"],
        vec!["verify", "--preset", "hadamard", "--tol", "-1"],
        vec!["verify", "--preset", "hadamard", "--bogus"],
    ] {
        assert_eq!(uur(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn verify_is_deterministic() {
    let a = uur(&[
        "verify",
        "--preset",
        "fourier:3",
        "--samples",
        "500",
        "--seed",
        "3",
        "--json",
    ]);
    let b = uur(&[
        "verify",
        "--preset",
        "fourier:3",
        "--samples",
        "500",
        "--seed",
        "3",
        "--json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_examples() {
    for k in ["1", "2"] {
        let v = json(&["oracle", "--preset", "hadamard", "--k", k]);
        let r = &v["reports"][0];
        assert!(r["gap"].as_f64().unwrap().abs() <= 1e-6, "k={k}");
        if k == "2" {
            assert_eq!(r["best_region_is_partition_shaped"], true);
        }
    }
    let v = json(&["oracle", "--preset", "fourier:3", "--k", "3"]);
    assert_eq!(v["reports"][0]["best_region_is_partition_shaped"], true);
    assert!(v["reports"][0]["gap"].as_f64().unwrap() >= -1e-6);

    let v = json(&["oracle", "--preset", "hadamard", "--starts", "8"]);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn oracle_caps_exit_2_and_name_the_cap() {
    let o = uur(&["oracle", "--preset", "fourier:4", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap of 3"), "{}", stderr(&o));

    let o = uur(&[
        "oracle",
        "--preset",
        "fourier:6",
        "--k",
        "1",
        "--family",
        "partition-shaped",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap of 5"), "{}", stderr(&o));

    let o = uur(&["oracle", "--preset", "hadamard", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn source_flag_errors() {
    for bad in [
        vec!["omega"],
        vec!["omega", "--preset", "pauli"],
        vec!["omega", "--preset", "fourier"],
        vec!["omega", "--preset", "hadamard", "--theta", "1"],
        vec!["omega", "--preset", "hadamard", "--unitary", "x.json"],
        vec!["omega", "--unitary", "/definitely/missing.json"],
    ] {
        let o = uur(&bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn unitary_file_validation() {
    let dir = tempfile::tempdir().unwrap();
    let h = 0.5f64.sqrt();

    let good = dir.path().join("good.json");
    write_unitary(&good, &[[[h, 0.0], [h, 0.0]], [[h, 0.0], [-h, 0.0]]]);
    let v = json(&["omega", "--unitary", good.to_str().unwrap()]);
    assert!((floats(&v["omega"]["entries"])[0] - 0.7285534).abs() < 1e-6);

    let rough = dir.path().join("rough.json");
    write_unitary(
        &rough,
        &[[[0.707, 0.0], [0.707, 0.0]], [[0.707, 0.0], [-0.707, 0.0]]],
    );
    let o = uur(&["omega", "--unitary", rough.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not unitary"), "{}", stderr(&o));
    let v = json(&[
        "omega",
        "--unitary",
        rough.to_str().unwrap(),
        "--reorthonormalize",
    ]);
    assert!(v["reorthonormalization_deviation"].as_f64().unwrap() > 1e-4);

    let far = dir.path().join("far.json");
    write_unitary(&far, &[[[1.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]);
    let o = uur(&[
        "omega",
        "--unitary",
        far.to_str().unwrap(),
        "--reorthonormalize",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"dim\": 2, \"matrix\": [[1, 2]]}").unwrap();
    let o = uur(&["omega", "--unitary", garbage.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("garbage.json"));
}

#[test]
fn unitary_file_round_trip_is_bit_identical() {
    use uur_core::io::UnitaryFile;
    use uur_core::measurement::random_unitary;

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.json");
    let u = random_unitary(3, 42);
    std::fs::write(&path, UnitaryFile::from_matrix(&u).to_json()).unwrap();
    let reread = UnitaryFile::parse(&std::fs::read_to_string(&path).unwrap())
        .unwrap()
        .to_matrix()
        .unwrap();
    assert_eq!(reread, u);

    let copy = dir.path().join("copy.json");
    std::fs::write(&copy, UnitaryFile::from_matrix(&reread).to_json()).unwrap();
    let a = uur(&["bound", "--unitary", path.to_str().unwrap(), "--json"]);
    let b = uur(&["bound", "--unitary", copy.to_str().unwrap(), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("pair");
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn scan_fig7_writes_csv_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.csv");
    let o = uur(&[
        "scan-theta",
        "--preset",
        "fig7",
        "--from",
        "0",
        "--to",
        "6.283185307179586",
        "--steps",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,c,b_jpdd,b_mu"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    for r in &rows {
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|x| x.is_finite()) && r[2] >= 0.0 && r[3] >= 0.0);
        assert!((0.0..2.0 * std::f64::consts::PI).contains(&r[0]));
    }

    let meta: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("scan.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert!(meta["max_reorthonormalization_deviation"].as_f64().unwrap() > 0.0);
    assert!(meta["findings"].is_array());

    // byte-stable output
    let again = dir.path().join("again.csv");
    uur(&[
        "scan-theta",
        "--preset",
        "fig7",
        "--steps",
        "8",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&again).unwrap(), csv.as_bytes());
}

#[test]
fn scan_single_point_matches_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("one.csv");
    let o = uur(&[
        "scan-theta",
        "--preset",
        "fig7",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    let row: Vec<f64> = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(row[0], 0.0);

    let v = json(&["bound", "--preset", "fig7", "--theta", "0"]);
    assert!((row[1] - v["report"]["c"].as_f64().unwrap()).abs() <= 1e-12);
    assert!((row[2] - v["report"]["b_jpdd"].as_f64().unwrap()).abs() <= 1e-12);
    assert!((row[3] - v["report"]["b_mu"].as_f64().unwrap()).abs() <= 1e-12);
}

#[test]
fn scan_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    for bad in [
        vec![
            "scan-theta",
            "--preset",
            "fig7",
            "--from",
            "1",
            "--to",
            "1",
            "--out",
            out,
        ],
        vec![
            "scan-theta",
            "--preset",
            "fig7",
            "--steps",
            "0",
            "--out",
            out,
        ],
        vec!["scan-theta", "--preset", "hadamard", "--out", out],
        vec!["scan-theta", "--out", out],
        vec![
            "scan-theta",
            "--preset",
            "fig7",
            "--out",
            "/nonexistent-dir/x.csv",
        ],
    ] {
        assert_eq!(uur(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn scan_accepts_template_file() {
    use uur_core::fixtures::fig7_template;
    use uur_core::io::TemplateFile;

    let dir = tempfile::tempdir().unwrap();
    let template = dir.path().join("t.json");
    std::fs::write(
        &template,
        TemplateFile::from_template(&fig7_template()).to_json(),
    )
    .unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let o = uur(&[
        "scan-theta",
        "--unitary-template",
        template.to_str().unwrap(),
        "--steps",
        "5",
        "--out",
        a.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    uur(&[
        "scan-theta",
        "--preset",
        "fig7",
        "--steps",
        "5",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(uur(&["--help"]).status.code(), Some(0));
    assert_eq!(uur(&["--version"]).status.code(), Some(0));
    assert!(stdout(&uur(&["--help"])).contains("scan-theta"));
}
