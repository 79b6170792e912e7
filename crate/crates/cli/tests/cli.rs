use std::path::Path;
use std::process::Command;

use puremono::newton::ValuedPoint;
use puremono_cli::output::AnalyzeOutput;
use puremono_cli::render::{ascii, axis_units, log2_q8, svg, Plot};
use puremono_cli::scan::{read_csv, CSV_COLUMNS};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["puremono"];
    argv.extend_from_slice(args);
    let code = puremono_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_puremono"));
    for (k, _) in std::env::vars() {
        if k.starts_with("MONO_") {
            cmd.env_remove(k);
        }
    }
    cmd
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(name);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

fn analyze_json(p: &str, r: &str, m: &str, verify: bool) -> String {
    let mut args = vec!["analyze", "--p", p, "--r", r, "--m", m, "--format", "json"];
    if verify {
        args.push("--verify");
    }
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    out
}

#[test]
fn analyze_reports_two_adic_verdict() {
    let out: Value = serde_json::from_str(&analyze_json("2", "2", "17", false)).unwrap();
    assert_eq!(out["status"], "NOT_MONOGENIC");
    assert_eq!(out["provenance"], "THEOREM_MONO2");
    assert_eq!(out["certificate"]["witness"]["primes"], 3);
    assert_eq!(out["certificate"]["witness"]["irreducibles"], "2");
}

#[test]
fn analyze_reports_monogenic_field() {
    let (code, out, _) = run(&["analyze", "--p", "7", "--r", "1", "--m", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("MONOGENIC_ZALPHA"));
    assert!(out.contains("THEOREM_PIB"));
}

#[test]
fn non_squarefree_m_exits_with_validation_code() {
    let (code, _, err) = run(&["analyze", "--p", "2", "--r", "2", "--m", "80"]);
    assert_eq!(code, 2);
    assert!(err.contains("m not squarefree"), "{err}");
}

#[test]
fn other_validation_failures_exit_2() {
    for args in [
        vec!["analyze", "--p", "4", "--r", "1", "--m", "3"],
        vec!["analyze", "--p", "2", "--r", "0", "--m", "3"],
        vec!["analyze", "--p", "2", "--r", "1", "--m", "1"],
        vec!["analyze", "--p", "2", "--r", "1"],
        vec!["analyze", "--p", "2", "--r", "17", "--m", "3"],
        vec!["analyze", "--bogus"],
        vec!["scan", "--p", "2", "--r", "1", "--m-from", "9", "--m-to", "3", "--out", "/tmp/x"],
    ] {
        let (code, _, _) = run(&args);
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn negative_m_is_accepted_and_flagged() {
    let out: Value = serde_json::from_str(&analyze_json("3", "1", "-5", false)).unwrap();
    assert_eq!(out["input"]["m"], "-5");
    assert_eq!(out["certificate"]["m_negative"], true);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("analyze"));
}

#[test]
fn json_output_validates_against_schema() {
    let analyze = schema("analyze.schema.json");
    for (p, r, m, verify) in [
        ("2", "2", "17", true),
        ("3", "3", "161", true),
        ("5", "1", "7", false),
        ("7", "2", "2", false),
        ("2", "2", "-7", true),
        ("3", "2", "10", false),
    ] {
        let value: Value = serde_json::from_str(&analyze_json(p, r, m, verify)).unwrap();
        let msgs: Vec<String> = match analyze.validate(&value) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{p} {r} {m}: {msgs:?}");
    }
}

#[test]
fn json_round_trips_losslessly() {
    for (p, r, m) in [("3", "3", "161"), ("5", "1", "7"), ("2", "3", "33"), ("13", "1", "123456789012345678901")] {
        let text = analyze_json(p, r, m, false);
        let parsed: AnalyzeOutput = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json() + "\n", text);
        let again: AnalyzeOutput = serde_json::from_str(&parsed.to_json()).unwrap();
        assert_eq!(again, parsed);
    }
}

#[test]
fn verify_runs_oracles() {
    let out: Value = serde_json::from_str(&analyze_json("3", "3", "161", true)).unwrap();
    let checks = out["oracle"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["agree"] == true));
}

#[test]
fn scan_writes_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let (code, out, err) = run(&[
        "scan", "--p", "2", "--r", "2", "--m-from", "2", "--m-to", "40", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("SKIPPED"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    let rows = read_csv(&text).unwrap();
    assert_eq!(rows.len(), 39);
    let r17 = rows.iter().find(|r| r.m == 17).unwrap();
    assert_eq!(r17.status.as_deref(), Some("NOT_MONOGENIC"));
    assert_eq!(r17.p1, Some(3));
    assert_eq!(r17.n1.as_deref(), Some("2"));
    let r4 = rows.iter().find(|r| r.m == 4).unwrap();
    assert_eq!(r4.skipped_reason.as_deref(), Some("not squarefree"));
}

#[test]
fn scan_filter_and_jsonl_rows_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let (code, _, err) = run(&[
        "scan", "--p", "2", "--r", "3", "--m-from", "-200", "--m-to", "400", "--residue", "1", "--modulus", "32",
        "--format", "jsonl", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let row_schema = schema("scan_row.schema.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut n = 0;
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(row_schema.is_valid(&v), "{line}");
        assert_eq!(v["m"].as_i64().unwrap().rem_euclid(32), 1);
        n += 1;
    }
    assert_eq!(n, 19);
}

#[test]
fn scan_output_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "8"] {
        let path = dir.path().join(format!("s{jobs}.csv"));
        let (code, _, _) = run(&[
            "scan", "--p", "3", "--r", "2", "--m-from", "-150", "--m-to", "150", "--jobs", jobs, "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn unwritable_output_exits_3() {
    let (code, _, _) = run(&["scan", "--p", "2", "--r", "1", "--m-from", "2", "--m-to", "5", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&[
        "render", "--p", "2", "--r", "1", "--m", "3", "--at", "2", "--format", "svg", "--out", "/nonexistent/dir/x.svg",
    ]);
    assert_eq!(code, 3);
}

fn four_vertex_fixture() -> Plot {
    let pts = [(0, 5), (1, 3), (2, 4), (3, 3), (4, 2), (5, 1), (6, 2), (7, 1), (8, 3), (9, 0)];
    Plot::from_points("fixture", pts.iter().map(|&(x, y)| ValuedPoint::new(x, y)).collect()).unwrap()
}

#[test]
fn four_vertex_fixture_marks_nine_index_points() {
    let plot = four_vertex_fixture();
    let v: Vec<(u64, u64)> = plot.hull.vertices().iter().map(|q| (q.x, q.y)).collect();
    assert_eq!(v, vec![(0, 5), (1, 3), (5, 1), (9, 0)]);
    assert_eq!(plot.index_points.len(), 9);
    let text = svg(std::slice::from_ref(&plot), false, "");
    assert_eq!(text.matches(r#"class="index""#).count(), 9);
    let art = ascii(&[plot], "");
    assert!(art.contains("index points: 9"));
}

#[test]
fn ascii_grid_is_eighty_columns() {
    let dir = tempfile::tempdir().unwrap();
    for (p, r, m, q) in [("3", "3", "161", "3"), ("2", "6", "65", "2"), ("2", "2", "3", "3")] {
        let path = dir.path().join("a.txt");
        let (code, _, err) = run(&[
            "render", "--p", p, "--r", r, "--m", m, "--at", q, "--format", "ascii", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.lines().all(|l| l.chars().count() == 80), "{text}");
    }
}

#[test]
fn render_at_divisor_of_m_is_single_side() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    let (code, _, _) = run(&[
        "render", "--p", "2", "--r", "2", "--m", "3", "--at", "3", "--format", "ascii", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let sides: Vec<&str> = text.lines().filter(|l| l.starts_with("side ")).map(str::trim_end).collect();
    assert_eq!(sides, vec!["side (0,1)-(4,0) slope -1/4"]);
}

#[test]
fn svg_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("f{i}.svg"));
        let (code, _, _) = run(&[
            "render", "--p", "2", "--r", "6", "--m", "129", "--at", "2", "--format", "svg", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        outs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    let text = String::from_utf8(outs.pop().unwrap()).unwrap();
    assert!(text.starts_with("<?xml"));
    assert!(text.contains(r#"version="1.1""#));
    assert!(text.contains("log scale"));
    for attr in ["x", "y", "cx", "cy", "x1", "y1", "x2", "y2", "r", "width", "height", "points"] {
        let key = format!(" {attr}=\"");
        for chunk in text.split(key.as_str()).skip(1) {
            let value = &chunk[..chunk.find('"').unwrap()];
            for n in value.split([' ', ',']) {
                assert!(n.parse::<u64>().is_ok(), "{attr}={value}");
            }
        }
    }
}

#[test]
fn log_axis_is_monotone_and_integer() {
    assert_eq!(log2_q8(1), 0);
    assert_eq!(log2_q8(2), 256);
    assert_eq!(log2_q8(32), 5 * 256);
    assert_eq!(log2_q8(3), 405); // 256 * 1.58496...
    let mut prev = 0;
    for x in 1..5000 {
        let u = axis_units(x, false);
        assert!(u >= prev);
        prev = u;
    }
    assert_eq!(axis_units(64, false), 32 * 256 + 32 * 256);
    assert_eq!(axis_units(64, true), 64 * 256);
}

#[test]
fn flags_beat_env_beats_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mono.toml");
    std::fs::write(&cfg, "[analyze]\np = 2\nr = 2\nm = \"17\"\nformat = \"json\"\n").unwrap();

    let out = bin().args(["analyze", "--config", cfg.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["input"]["m"], "17");

    let out = bin()
        .args(["analyze", "--config", cfg.to_str().unwrap()])
        .env("MONO_M", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["input"]["m"], "3");

    let out = bin()
        .args(["analyze", "--m", "7"])
        .env("MONO_CONFIG", cfg.to_str().unwrap())
        .env("MONO_M", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["input"]["m"], "7");
}

#[test]
fn bad_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mono.toml");
    std::fs::write(&cfg, "[analyze]\nq = 2\n").unwrap();
    let out = bin().args(["analyze", "--config", cfg.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["analyze", "--config", "/nonexistent/mono.toml"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
