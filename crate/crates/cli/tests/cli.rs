//! End-to-end tests of the `dimer` binary: output formats, determinism,
//! exit codes, and the documented invariants of the emitted data.

use std::path::Path;
use std::process::{Command, Output};

fn dimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dimer(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    dimer(args).status.code().expect("exit code")
}

#[test]
fn point_json_round_trips_and_holds_identities() {
    let text = stdout(&["point", "--delta", "-2", "--t", "0.881297", "--eta", "0"]);
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    let corr = &v["correlations"];
    let (i, c, q) = (
        corr["I"].as_f64().unwrap(),
        corr["C"].as_f64().unwrap(),
        corr["Q"].as_f64().unwrap(),
    );
    assert!((i - c - q).abs() < 1e-12, "I = C + Q violated: {i} vs {c} + {q}");
    assert!((q - 0.083061).abs() < 1e-5);
    assert_eq!(v["spectrum"]["ground"].as_f64().unwrap(), -1.0);
    assert!(corr["Qg"].is_number(), "Qg present at zero field");
}

#[test]
fn point_zero_temperature_step() {
    let text = stdout(&["point", "--t", "0", "--eta", "0.3"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["correlations"]["C"].as_f64().unwrap(), 0.0);
    assert_eq!(v["correlations"]["Q"].as_f64().unwrap(), 0.0);
    assert!(v["x"].is_null(), "x is null at T = 0");

    let text = stdout(&["point", "--t", "0", "--eta", "0"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["correlations"]["C"].as_f64().unwrap(), 1.0);
    assert_eq!(v["correlations"]["Q"].as_f64().unwrap(), 0.0);
    assert_eq!(v["correlations"]["E"].as_f64().unwrap(), 0.0);
}

#[test]
fn point_csv_has_fixed_header() {
    let text = stdout(&["point", "--t", "1", "--format", "csv"]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,eta,m,g_par,g_perp,I,C,Q,Q1,Q2,E,Qg"
    );
    assert_eq!(lines.next().unwrap().split(',').count(), 12);
}

#[test]
fn scan_csv_is_bit_stable_and_ordered() {
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "scan".to_string(),
            "--t-range".into(),
            "0.1:2".into(),
            "--t-points".into(),
            "7".into(),
            "--eta-range".into(),
            "-0.4:0.4".into(),
            "--eta-points".into(),
            "3".into(),
            "--out".into(),
            p.display().to_string(),
        ]
    };
    let run = |p: &Path| {
        let a: Vec<String> = args(p);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(exit_code(&refs), 0);
        std::fs::read(p).unwrap()
    };
    let first = run(&path_a);
    let second = run(&path_b);
    assert_eq!(first, second, "CSV output differs between identical runs");

    let text = String::from_utf8(first).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 7 * 3);
    assert_eq!(lines[0], "t,eta,m,g_par,g_perp,I,C,Q,Q1,Q2,E,Qg");
    // t outer, eta inner: the first three rows share the first t value.
    let t_of = |line: &str| line.split(',').next().unwrap().to_string();
    assert_eq!(t_of(lines[1]), t_of(lines[2]));
    assert_eq!(t_of(lines[1]), t_of(lines[3]));
    assert_ne!(t_of(lines[1]), t_of(lines[4]));
    // Qg column: blank off zero field, populated on it.
    let qg_of = |line: &str| line.split(',').nth(11).unwrap().to_string();
    assert!(qg_of(lines[1]).is_empty());
    assert!(!qg_of(lines[2]).is_empty());
    // No temporary file left behind.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn scan_step_axes_and_boundary_rows() {
    // Step-based temperature axis, inclusive of both ends.
    let text = stdout(&[
        "scan",
        "--t-range",
        "1:2",
        "--t-step",
        "0.25",
        "--eta",
        "0",
        "--quantities",
        "Q",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 5);
    assert!(lines[1].starts_with("1.00000000000e0,"));
    assert!(lines[5].starts_with("2.00000000000e0,"));

    // t = 0 row takes the analytic branch; x = 0 row is infinite temperature.
    let text = stdout(&["scan", "--t-range", "0:1", "--t-points", "2", "--quantities", "C,Q"]);
    assert_eq!(text.lines().nth(1).unwrap(), "0,0,1.00000000000e0,0", "{text}");
    let text = stdout(&["scan", "--x-range", "0:1", "--t-points", "2", "--quantities", "Q"]);
    assert!(text.lines().nth(1).unwrap().starts_with("inf,0,0"), "{text}");
}

#[test]
fn scan_output_independent_of_thread_count() {
    let args = |jobs: &str| {
        stdout(&[
            "--jobs",
            jobs,
            "scan",
            "--t-range",
            "0.1:3",
            "--t-points",
            "25",
            "--eta-range",
            "0:1",
            "--eta-points",
            "5",
        ])
    };
    assert_eq!(args("1"), args("4"));
}

#[test]
fn scan_quantity_subset_restricts_columns() {
    let text = stdout(&["scan", "--t", "1", "--eta", "0", "--quantities", "Q,C"]);
    let mut lines = text.lines();
    // Canonical order puts C before Q regardless of the request order.
    assert_eq!(lines.next().unwrap(), "t,eta,C,Q");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 4);
    let c: f64 = row[2].parse().unwrap();
    let q: f64 = row[3].parse().unwrap();
    assert!((c - 0.336029218928376).abs() < 1e-9);
    assert!((q - 0.081702322253292).abs() < 1e-9);
}

#[test]
fn scan_json_round_trips() {
    let text = stdout(&[
        "scan",
        "--t-range",
        "0.5:1.5",
        "--t-points",
        "3",
        "--eta",
        "0",
        "--format",
        "json",
    ]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 3);
    for row in &rows {
        let i = row["I"].as_f64().unwrap();
        let c = row["C"].as_f64().unwrap();
        let q = row["Q"].as_f64().unwrap();
        assert!((i - c - q).abs() < 1e-12);
        assert!(row["Qg"].is_number());
    }
}

#[test]
fn scan_x_range_reports_reduced_temperature() {
    let text = stdout(&[
        "scan",
        "--x-range",
        "0.5:2",
        "--t-points",
        "4",
        "--quantities",
        "Q",
        "--format",
        "json",
    ]);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    let ts: Vec<f64> = rows.iter().map(|r| r["t"].as_f64().unwrap()).collect();
    assert_eq!(ts, vec![2.0, 1.0 / 1.0, 1.0 / 1.5, 0.5]);
}

#[test]
fn scan_single_peak_in_discord() {
    let text = stdout(&[
        "scan",
        "--t-range",
        "0.05:5",
        "--t-points",
        "60",
        "--eta",
        "0",
        "--quantities",
        "Q",
    ]);
    let q: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    let rises = q.windows(2).take_while(|w| w[1] > w[0]).count();
    assert!(rises > 0 && rises < q.len() - 1);
    assert!(q[rises..].windows(2).all(|w| w[1] <= w[0]));
    // Peak near t = 0.8813.
    let peak_t = 0.05 + (5.0 - 0.05) * rises as f64 / 59.0;
    assert!((peak_t - 0.8813).abs() < 0.1, "peak at t = {peak_t}");
}

#[test]
fn solve_max_prints_reference_values() {
    let text = stdout(&["solve-max", "--delta", "-2", "--eta", "0"]);
    assert!(text.contains("t_max    = 8.81297395761e-1"), "{text}");
    assert!(text.contains("q_max    = 8.30612439619e-2"), "{text}");
    assert!(text.contains("residual"));

    // Field symmetry of the in-field search.
    let plus = stdout(&["solve-max", "--eta", "0.5"]);
    let minus = stdout(&["solve-max", "--eta", "-0.5"]);
    let tail = |s: &str| {
        s.lines()
            .filter(|l| l.starts_with("x_max") || l.starts_with("q_max"))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(tail(&plus), tail(&minus));
}

#[test]
fn material_predictions() {
    let text = stdout(&["material", "--name", "gypsum", "--at", "300"]);
    assert!(text.contains("D/k_B    = 7.30660038e-7 K"), "{text}");
    assert!(text.contains("T_max    = 6.43928"), "{text}");
    assert!(text.contains("2.13945"), "{text}");

    let text = stdout(&["material", "--name", "dichloroethane", "--at", "90"]);
    assert!(text.contains("T_max    = 5.16966"), "{text}");
    assert!(text.contains("1.53217"), "{text}");
}

#[test]
fn material_config_overrides_presets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("materials.txt");
    std::fs::write(&path, "# test table\nwater-ice 2.675e8 0.162e-9\ngypsum 2.675e8 0.2e-9\n")
        .unwrap();
    let cfg = path.display().to_string();
    let text = stdout(&["material", "--config", &cfg, "--name", "water-ice"]);
    assert!(text.contains("material = water-ice"));
    // Overridden gypsum has the larger distance, hence a weaker coupling.
    let text = stdout(&["material", "--config", &cfg, "--name", "gypsum"]);
    assert!(text.contains("r        = 2.00000e-10 m"), "{text}");
}

#[test]
fn custom_material_from_gamma_and_r() {
    let text = stdout(&["material", "--gamma", "2.675e8", "--r", "0.158e-9"]);
    assert!(text.contains("material = custom"));
    assert!(text.contains("D/k_B    = 7.30660038e-7 K"));
}

#[test]
fn verify_passes_on_default_style_grid() {
    // Includes the degenerate t = 0 point, where both discord routes are
    // exactly zero on the analytic ground state.
    let text = stdout(&[
        "verify",
        "--t-list",
        "0,0.5,1",
        "--eta-list",
        "0,0.2",
        "--grid-n",
        "24",
        "--refine-iters",
        "20",
    ]);
    assert!(text.contains("verify: PASS"), "{text}");
    assert!(text.lines().count() >= 2 + 6, "per-point diagnostics listed");
    let t0_row = text.lines().find(|l| l.trim_start().starts_with("0 ")).unwrap();
    assert!(t0_row.contains("ok"));
    for field in t0_row.split_whitespace().skip(2).take(3) {
        assert_eq!(field.parse::<f64>().unwrap(), 0.0, "t = 0 row not exact: {t0_row}");
    }
}

#[test]
fn exit_codes() {
    // 0: success.
    assert_eq!(exit_code(&["point", "--t", "1"]), 0);
    // 1: usage errors.
    assert_eq!(exit_code(&["bogus"]), 1);
    assert_eq!(exit_code(&["scan"]), 1);
    assert_eq!(
        exit_code(&["scan", "--t", "1", "--eta", "0.5", "--quantities", "Qg"]),
        1
    );
    assert_eq!(exit_code(&["material", "--name", "unobtainium"]), 1);
    assert_eq!(exit_code(&["verify", "--tolerance", "-1"]), 1);
    // 2: verification failure.
    assert_eq!(
        exit_code(&[
            "verify",
            "--t-list",
            "1",
            "--eta-list",
            "0",
            "--tolerance",
            "1e-18",
            "--grid-n",
            "16",
            "--refine-iters",
            "5",
        ]),
        2
    );
    // 3: numerical-domain errors.
    assert_eq!(exit_code(&["point", "--t", "-1"]), 3);
    assert_eq!(exit_code(&["solve-max", "--delta", "0"]), 3);
    assert_eq!(exit_code(&["material", "--name", "gypsum", "--at", "-3"]), 3);
}

#[test]
fn help_exits_zero() {
    assert_eq!(exit_code(&["--help"]), 0);
    assert_eq!(exit_code(&["scan", "--help"]), 0);
}
