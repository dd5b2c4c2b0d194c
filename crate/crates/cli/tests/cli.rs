use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fclock(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fclock")).current_dir(dir).args(args).output().expect("binary runs")
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn json(dir: &Path, name: &str) -> Value {
    serde_json::from_slice(&read(dir, name)).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn two_gate_curve_peaks_at_one() {
    let dir = TempDir::new().unwrap();
    let o = fclock(
        dir.path(),
        &["pk-curve", "--k", "2", "--t-min", "0", "--t-max", "3", "--points", "301", "--out", "pk.csv"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(read(dir.path(), "pk.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,P"));
    let (t, p) = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse::<f64>().unwrap(), b.parse::<f64>().unwrap())
        })
        .fold((0.0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    assert!((t - std::f64::consts::PI / 2f64.sqrt()).abs() < 0.01);
    assert!((p - 1.0).abs() < 1e-5);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("first maximum P=1.0000000000 at t=2.221441"), "{stdout}");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("run.toml"),
        "k = [9999]\nt_min = 4900.0\nt_max = 5100.0\npoints = 801\nsvg = true\nout = \"peak.csv\"\n",
    )
    .unwrap();
    let names = ["peak.csv", "peak.meta.json", "peak.svg"];
    assert!(fclock(d, &["pk-curve", "--config", "run.toml"]).status.success());
    let first: Vec<Vec<u8>> = names.iter().map(|n| read(d, n)).collect();
    assert!(fclock(d, &["pk-curve", "--config", "run.toml"]).status.success());
    let second: Vec<Vec<u8>> = names.iter().map(|n| read(d, n)).collect();
    assert_eq!(first, second);

    let sweep = ["sweep", "--k-log", "100:2000:6", "--out", "s.json", "--seed", "3"];
    assert!(fclock(d, &sweep).status.success());
    let a = read(d, "s.json");
    assert!(fclock(d, &sweep).status.success());
    assert_eq!(a, read(d, "s.json"));
}

#[test]
fn worker_count_does_not_change_outputs() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let run = |jobs: &str, out: &str| {
        let o = fclock(d, &["sweep", "--k", "12,57,230,901,1500", "--jobs", jobs, "--out", out]);
        assert!(o.status.success(), "{}", stderr(&o));
        (read(d, out), json(d, &out.replace(".csv", ".meta.json")))
    };
    let (serial, meta1) = run("1", "serial.csv");
    let (parallel, meta4) = run("4", "parallel.csv");
    assert_eq!(serial, parallel);
    assert!(meta1["config"].get("jobs").is_none());
    assert_eq!(meta1["config"]["k"], meta4["config"]["k"]);
}

#[test]
fn flags_override_config_file_over_defaults() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    std::fs::write(d.join("c.toml"), "k = [4]\nseed = 11\npoints = 50\n[peak]\nnoise_floor = 1e-9\n").unwrap();
    let o = fclock(d, &["pk-curve", "--config", "c.toml", "--points", "20", "--out", "c.csv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let meta = json(d, "c.meta.json");
    let cfg = &meta["config"];
    assert_eq!(cfg["k"], serde_json::json!([4]));
    assert_eq!(cfg["seed"], 11);
    assert_eq!(cfg["points"], 20);
    assert_eq!(cfg["t_max"], 12.0);
    assert_eq!(cfg["peak"]["noise_floor"], 1e-9);
    assert_eq!(cfg["peak"]["coarse_factor"], 0.05);
    assert_eq!(String::from_utf8(read(d, "c.csv")).unwrap().lines().count(), 21);
}

#[test]
fn unknown_config_keys_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "kk = 3\n").unwrap();
    let o = fclock(dir.path(), &["sweep", "--config", "bad.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("kk"));
}

#[test]
fn malformed_flags_exit_with_usage_error() {
    let dir = TempDir::new().unwrap();
    assert_eq!(fclock(dir.path(), &["sweep", "--k-log", "100:10"]).status.code(), Some(2));
    assert_eq!(fclock(dir.path(), &["sweep"]).status.code(), Some(2));
    assert_eq!(fclock(dir.path(), &["pk-curve", "--t-min", "5", "--t-max", "1"]).status.code(), Some(2));
    assert_eq!(fclock(dir.path(), &["fit", "--law", "prob"]).status.code(), Some(2));
    assert_eq!(fclock(dir.path(), &["nonsense"]).status.code(), Some(2));
}

fn assert_plot(svg: &[u8], min_series: usize) -> roxmltree::Document<'_> {
    let text = std::str::from_utf8(svg).unwrap();
    let doc = roxmltree::Document::parse(text).expect("valid XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert!(root.descendants().any(|n| n.attribute("id") == Some("axes")));
    assert!(root.descendants().filter(|n| n.has_tag_name("line")).count() >= 2);
    let series = root.descendants().filter(|n| n.attribute("class") == Some("series")).count();
    assert!(series >= min_series);
    let meta = root.descendants().find(|n| n.has_tag_name("metadata")).unwrap().text().unwrap();
    let meta: Value = serde_json::from_str(meta).unwrap();
    assert_eq!(meta["tool"], "fclock");
    doc
}

#[test]
fn svg_plots_are_valid_and_carry_fit_overlays() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert!(fclock(d, &["sweep", "--k-log", "100:3000:8", "--out", "sw.csv", "--svg"]).status.success());
    assert_plot(&read(d, "sw.svg"), 2);

    let o = fclock(d, &["fit", "sw.csv", "--law", "spacing", "--out", "fit.json", "--svg"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let svg = read(d, "fit.svg");
    let doc = assert_plot(&svg, 2);
    assert!(doc.descendants().any(|n| n.attribute("stroke-dasharray").is_some()));
    let fit = json(d, "fit.json");
    assert_eq!(fit["result"]["law"], "spacing");
    assert!((fit["result"]["fit"]["exponent"].as_f64().unwrap() - 1.0 / 3.0).abs() < 0.05);

    assert!(fclock(d, &["pk-curve", "--k", "30", "--out", "pk.csv", "--svg"]).status.success());
    assert_plot(&read(d, "pk.svg"), 1);
}

#[test]
fn fit_reads_back_every_law() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert!(fclock(d, &["sweep", "--k-log", "100:2000:6", "--out", "sw.csv"]).status.success());
    for law in ["tau", "prob", "spacing", "runtime"] {
        let out = format!("{law}.json");
        let o = fclock(d, &["fit", "sw.csv", "--law", law, "--out", &out]);
        assert!(o.status.success(), "{law}: {}", stderr(&o));
        assert_eq!(json(d, &out)["result"]["fit"]["points"], 6);
    }
    let tau = json(d, "tau.json");
    assert!((tau["result"]["fit"]["coefficient"].as_f64().unwrap() - 0.5).abs() < 0.02);
}

#[test]
fn gap_writes_summary_per_k_curves_and_fit() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let o = fclock(d, &["gap", "--k", "50,100,200,400,800", "--grid-size", "129", "--out", "gap.csv", "--svg"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = String::from_utf8(read(d, "gap.csv")).unwrap();
    assert_eq!(summary.lines().next(), Some("k,s_min,gap_min"));
    assert_eq!(summary.lines().count(), 6);
    let curve = String::from_utf8(read(d, "gap_k100.csv")).unwrap();
    assert_eq!(curve.lines().next(), Some("s,gap"));
    assert_eq!(curve.lines().count(), 130);
    let report = json(d, "gap.json");
    assert!((report["result"]["scaling"]["fit"]["exponent"].as_f64().unwrap() + 2.0).abs() < 0.05);
    assert!(report["result"]["rows"].as_array().unwrap().iter().all(|r| r["above_lower_bound"] == true));
    assert_plot(&read(d, "gap.svg"), 3);
}

#[test]
fn partial_failures_are_listed_and_exit_nonzero() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let o = fclock(d, &["asymptotics", "--k", "3,100,400", "--out", "a.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("k=3"));
    let a = json(d, "a.json");
    assert_eq!(a["result"]["rows"].as_array().unwrap().len(), 2);
    assert_eq!(a["metadata"]["failures"][0]["k"], 3);
    assert!((a["result"]["integral_coefficient"].as_f64().unwrap() - 3.2013).abs() < 1e-3);

    let o = fclock(d, &["sweep", "--k", "1,100", "--out", "s.csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("k=1"));
    assert_eq!(String::from_utf8(read(d, "s.csv")).unwrap().lines().count(), 2);
}

#[test]
fn verify_levels_pass_quickly() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let start = std::time::Instant::now();
    let o = fclock(d, &["verify", "--level", "quick", "--out", "q.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(start.elapsed().as_secs() < 60);
    assert_eq!(json(d, "q.json")["result"]["passed"], true);

    let o = fclock(d, &["verify", "--level", "full", "--out", "f.json", "--svg"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = json(d, "f.json");
    for suite in report["result"]["suites"].as_array().unwrap() {
        assert!(suite["max_residual"].as_f64().unwrap() <= 1e-9, "{suite}");
    }
    assert_plot(&read(d, "f.svg"), 2);
}

#[test]
fn verify_accepts_a_well_formed_gate_file() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let gates = serde_json::json!({
        "n": 1,
        "gates": [
            [[0, 0], [1, 0], [1, 0], [0, 0]],
            [[h, 0], [h, 0], [h, 0], [-h, 0]],
            [[1, 0], [0, 0], [0, 0], [0, 1]]
        ]
    });
    std::fs::write(d.join("g.json"), gates.to_string()).unwrap();
    let o = fclock(d, &["verify", "--gates", "g.json", "--out", "v.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let suites = json(d, "v.json")["result"]["suites"].clone();
    assert!(suites.as_array().unwrap().iter().any(|s| s["name"] == "gate_file_structure" && s["passed"] == true));
}

#[test]
fn corrupted_gate_file_names_the_field() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let cases = [
        (r#"{"n": 1, "gates": [[[0, 0], [1, 0], [1, 0]]]}"#, "gates[0]"),
        (r#"{"n": 1, "gates": [[[0, 0], [1, 0], [1, "x"], [0, 0]]]}"#, "gates[0][2]"),
        (r#"{"n": 1, "gates": [[[1, 0], [1, 0], [0, 0], [1, 0]]]}"#, "gates[0]"),
        (r#"{"gates": []}"#, "`n`"),
        (r#"{"n": 1, "gates": [], "extra": 1}"#, "extra"),
        ("{not json", "<root>"),
    ];
    for (text, field) in cases {
        std::fs::write(d.join("bad.json"), text).unwrap();
        let o = fclock(d, &["verify", "--gates", "bad.json", "--out", "v.json"]);
        assert_eq!(o.status.code(), Some(4), "{text}");
        let err = stderr(&o);
        assert!(err.contains(field), "{text}: {err}");
        assert!(err.contains("bad.json"));
    }
}
