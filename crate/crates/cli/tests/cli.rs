use std::path::Path;
use std::process::{Command, Output};

use dimer_core::phases::classify_ground_state;
use dimer_core::{analytic_spectrum, Fields, ModelParams};
use serde_json::Value;

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
        "dimer {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Header plus rows of raw fields.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

/// CSV and JSON emissions of the same run hold identical values.
fn assert_round_trip(args: &[&str]) {
    let csv_text = stdout(args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&json_args)).unwrap();
    let (header, rows) = parse_csv(&csv_text);
    let cols: Vec<String> = serde_json::from_value(doc["columns"].clone()).unwrap();
    assert_eq!(header, cols);
    let jrows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), jrows.len());
    for (r, j) in rows.iter().zip(jrows) {
        for (field, cell) in r.iter().zip(j.as_array().unwrap()) {
            match cell {
                Value::Number(n) => {
                    let a: f64 = field.parse().unwrap();
                    let b = n.as_f64().unwrap();
                    assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0), "{a} vs {b}");
                }
                Value::Bool(b) => assert_eq!(field, &b.to_string()),
                Value::String(s) => assert_eq!(field, s),
                other => panic!("unexpected cell {other}"),
            }
        }
    }
}

#[test]
fn spectrum_zero_field_defaults() {
    let (header, rows) = parse_csv(&stdout(&["spectrum"]));
    assert_eq!(rows.len(), 1);
    let mut eps: Vec<f64> = (1..=6)
        .map(|k| column(&header, &rows, &format!("eps{k}_over_J"))[0])
        .collect();
    eps.sort_by(f64::total_cmp);
    assert_eq!(eps[0], eps[1]);
    assert!(eps[2] > eps[1] + 0.5);
    assert_eq!(column(&header, &rows, "phi_rad")[0], 0.0);
}

#[test]
fn spectrum_reparses_to_analytic_values() {
    let args = ["spectrum", "--g2", "0.8", "--d-anis", "-0.4", "--delta", "0.7", "--e", "1.3", "--b-range", "0:3:17"];
    let (header, rows) = parse_csv(&stdout(&args));
    let p = ModelParams::new(1.0, 0.7, -0.4, 2.0, 0.8).unwrap();
    let bs = column(&header, &rows, "b_over_J");
    assert_eq!(bs.len(), 17);
    for (i, &b) in bs.iter().enumerate() {
        let s = analytic_spectrum(&p, &Fields::new(b, 1.3));
        for k in 0..6 {
            let v = column(&header, &rows, &format!("eps{}_over_J", k + 1))[i];
            assert!((v - s.eps[k]).abs() < 1e-12);
        }
        assert!((column(&header, &rows, "c2_minus")[i] - s.c2_minus).abs() < 1e-12);
        assert!((column(&header, &rows, "phi_rad")[i] - s.phi).abs() < 1e-12);
    }
}

#[test]
fn csv_and_json_agree() {
    assert_round_trip(&["thermo", "--g2", "0.8", "--b-range", "0:2:21", "--t", "0.05,0.5", "--e", "0.3"]);
    assert_round_trip(&["phase-diagram", "--e-range", "0:2:15", "--b-range", "0:2:15"]);
    assert_round_trip(&["rc", "--b-range", "0.8:2:4", "--t-range", "0.01:4:120"]);
    assert_round_trip(&["validate", "--sample", "5"]);
}

fn labels(args: &[&str]) -> Vec<String> {
    let (header, rows) = parse_csv(&stdout(args));
    let i = header.iter().position(|h| h == "phase").unwrap();
    let mut l: Vec<String> = rows.iter().map(|r| r[i].clone()).filter(|l| !l.contains('|')).collect();
    l.sort();
    l.dedup();
    l
}

#[test]
fn phase_diagram_label_counts() {
    let grid = ["--e-range", "0:3:50", "--b-range", "0:3:50"];
    let iso: Vec<&str> = ["phase-diagram"].into_iter().chain(grid).collect();
    assert_eq!(labels(&iso), ["F+", "QF+"]);
    let mut imbalanced = vec!["phase-diagram", "--g2", "0.8", "--d-anis", "-1"];
    imbalanced.extend(grid);
    assert_eq!(labels(&imbalanced), ["F+", "QF+", "QF-"]);
}

#[test]
fn boundary_vertices_are_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pd.csv");
    stdout(&[
        "phase-diagram", "--g2", "0.8", "--d-anis", "-1", "--e-range", "0:3:40", "--b-range", "0:3:40",
        "--out", out.to_str().unwrap(),
    ]);
    let side = dir.path().join("pd.boundaries.csv");
    let (header, rows) = parse_csv(&read(&side));
    assert!(rows.len() > 40);
    let p = ModelParams::new(1.0, 1.0, -1.0, 2.0, 0.8).unwrap();
    let es = column(&header, &rows, "e_over_J");
    let bs = column(&header, &rows, "b_over_J");
    for (&e, &b) in es.iter().zip(&bs) {
        assert!(classify_ground_state(&p, &Fields::new(b, e)).0.is_degenerate(), "({e}, {b})");
    }
}

#[test]
fn thermo_plateau_and_zero_polarization() {
    let (header, rows) = parse_csv(&stdout(&["thermo", "--b-range", "0.2:0.6:9", "--t", "0.01"]));
    for m in column(&header, &rows, "m_over_ms") {
        assert!((m - 1.0 / 3.0).abs() < 1e-6);
    }
    assert!(column(&header, &rows, "p").iter().all(|&p| p == 0.0));
}

#[test]
fn thermo_electric_sweep_has_magnetization_minimum() {
    let args = [
        "thermo", "--g2", "0.8", "--d-anis", "-1", "--b", "0.7", "--axis", "e", "--e-range", "0:3:61", "--t", "0.05",
    ];
    let (header, rows) = parse_csv(&stdout(&args));
    let m = column(&header, &rows, "m_over_ms");
    let k = (0..m.len()).min_by(|&a, &b| m[a].total_cmp(&m[b])).unwrap();
    assert!(k > 0 && k + 1 < m.len());
    assert!(m[0] - m[k] > 0.05 && m[m.len() - 1] - m[k] > 0.05);
}

#[test]
fn svg_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let runs = [
        vec!["phase-diagram", "--g2", "0.8", "--d-anis", "-1", "--e-range", "0:3:60", "--b-range", "0:3:60"],
        vec!["entropy-map", "--b-range", "0:2:40", "--t-range", "0.01:2:40", "--levels", "0.6931471805599453,1"],
        vec!["delta-s", "--g2", "0.8", "--d-anis", "-1", "--b-range", "0:3:30", "--t-range", "0.01:2:30", "--levels", "0"],
        vec!["isentrope", "--target-s", "0.3,0.6931471805599453", "--b-range", "0:2:41"],
        vec!["thermo", "--b-range", "0:2:21", "--t", "0.1,0.5"],
        vec!["rc", "--b-range", "0.8:2:4", "--t-range", "0.01:4:100"],
        vec!["spectrum", "--b-range", "0:2:21", "--e", "0.5"],
    ];
    for (k, args) in runs.iter().enumerate() {
        let a = dir.path().join(format!("a{k}.svg"));
        let b = dir.path().join(format!("b{k}.svg"));
        for path in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--format", "svg", "--out", path.to_str().unwrap()]);
            stdout(&full);
        }
        let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(sa, sb, "{args:?}");
        assert!(sa.starts_with(b"<svg"));
    }
}

#[test]
fn isolines_sidecar_and_json_member() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("map.csv");
    let args = ["entropy-map", "--b-range", "0:2:41", "--t-range", "0.01:2:41", "--levels", "0.6931471805599453"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    stdout(&with_out);
    let (header, rows) = parse_csv(&read(&out));
    assert_eq!(header, ["b_over_J", "t_over_J", "s_over_kB"]);
    assert_eq!(rows.len(), 41 * 41);
    let (ih, irows) = parse_csv(&read(&dir.path().join("map.isolines.csv")));
    assert_eq!(ih, ["level", "line", "b_over_J", "t_over_J"]);
    assert!(!irows.is_empty());

    let mut json = args.to_vec();
    json.extend(["--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["isolines"]["rows"].as_array().unwrap().len(), irows.len());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("recipe.json");
    std::fs::write(&cfg, r#"{"g2": 0.8, "d_anis": -1.0, "b": 0.3, "e": 0.5}"#).unwrap();
    let from_file = stdout(&["spectrum", "--config", cfg.to_str().unwrap()]);
    let explicit = stdout(&["spectrum", "--g2", "0.8", "--d-anis", "-1", "--b", "0.3", "--e", "0.5"]);
    assert_eq!(from_file, explicit);
    let overridden = stdout(&["spectrum", "--config", cfg.to_str().unwrap(), "--b", "0.9"]);
    let expected = stdout(&["spectrum", "--g2", "0.8", "--d-anis", "-1", "--b", "0.9", "--e", "0.5"]);
    assert_eq!(overridden, expected);

    std::fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(dimer(&["spectrum", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(dimer(&["spectrum", "--j", "-1"]).status.code(), Some(2));
    assert_eq!(dimer(&["spectrum", "--b", "-1"]).status.code(), Some(2));
    assert_eq!(dimer(&["thermo", "--b-range", "2:1:10"]).status.code(), Some(2));
    assert_eq!(dimer(&["thermo", "--t", "0"]).status.code(), Some(2));
    assert_eq!(dimer(&["isentrope", "--target-s", "2.0"]).status.code(), Some(2));
    assert_eq!(dimer(&["validate", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(dimer(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(dimer(&["spectrum", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn validate_default_passes() {
    let out = dimer(&["validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(&String::from_utf8(out.stdout).unwrap());
    let i = header.iter().position(|h| h == "passed").unwrap();
    assert!(rows.iter().all(|r| r[i] == "true"));
}

#[test]
fn validate_reports_failures_without_crashing() {
    let out = dimer(&["validate", "--sample", "10", "--tolerance", "1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    let (header, rows) = parse_csv(&String::from_utf8(out.stdout).unwrap());
    let passed = header.iter().position(|h| h == "passed").unwrap();
    assert!(rows.iter().any(|r| r[passed] == "false"));
    for n in column(&header, &rows, "samples") {
        assert!(n == 10.0 || n == 50.0, "{n}");
    }
}
