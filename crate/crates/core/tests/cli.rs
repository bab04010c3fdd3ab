use std::path::Path;
use std::process::{Command, Output};

use ale_expansion::equations::{parse_system, parse_table, parse_types_report, APPENDIX_G};
use ale_expansion::scalar::Rational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ale-expansion")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// The embedded table with the sign of the ζ₁₂ coefficient of Con[1,1,2,3]
/// flipped.
fn corrupted_fixture(dir: &Path) -> String {
    let needle = "\"Con[1,1,2,3]\": {\n   \"zeta12\": \"-1/18\"";
    assert!(APPENDIX_G.contains(needle));
    let bad = APPENDIX_G.replacen(needle, "\"Con[1,1,2,3]\": {\n   \"zeta12\": \"1/18\"", 1);
    let path = dir.join("bad.json");
    std::fs::write(&path, bad).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn verify_metric_report() {
    let o = run(&["verify-metric"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "trace=0, div=0, harmonic=0, degree=-4");
}

#[test]
fn reproduce_boundary_structured() {
    let o = run(&["reproduce-boundary", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn check_table_passes_with_builtin_fixture() {
    let o = run(&["check-table", "--fixture", "appendixG"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("all relations implied; free unknowns: 21"));
}

#[test]
fn corrupted_fixture_names_exactly_that_relation() {
    let dir = tempfile::tempdir().unwrap();
    let bad = corrupted_fixture(dir.path());
    let o = run(&["check-table", "--fixture", &bad, "--format", "structured"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["not_implied"], serde_json::json!(["Con[1,1,2,3]"]));
    // The violated equations are listed too; the only relation named is the corrupted one.
    let relations: Vec<&str> =
        v["failures"].as_array().unwrap().iter().filter_map(|f| f.as_str()).filter(|f| f.starts_with("relation")).collect();
    assert_eq!(relations, ["relation Con[1,1,2,3] not implied"]);
    let err = stderr(&o);
    assert!(err.lines().all(|l| l.starts_with("failed: ")));
    assert_eq!(err.lines().filter(|l| l.contains("not implied")).collect::<Vec<_>>(), ["failed: relation Con[1,1,2,3] not implied"]);
}

#[test]
fn assemble_and_solve_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for n in 0..2 {
        for cmd in ["assemble", "solve"] {
            let out = dir.path().join(format!("{cmd}{n}.json"));
            let o = run(&[cmd, "--format", "structured", "--out", out.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            docs.push(std::fs::read(&out).unwrap());
        }
    }
    assert_eq!(docs[0], docs[2]);
    assert_eq!(docs[1], docs[3]);
    let sys = parse_system::<Rational>(std::str::from_utf8(&docs[0]).unwrap()).unwrap();
    assert_eq!(sys.len(), 800);
    assert_eq!(sys.equations.iter().filter(|e| e.label.contains("[sigma")).count(), 240);
    let table = parse_table::<Rational>(std::str::from_utf8(&docs[1]).unwrap()).unwrap();
    assert_eq!(table.free.len(), 21);
}

#[test]
fn differential_family_alone() {
    let o = run(&["solve", "--families", "differential"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "Con[1,1,1,1] = CVol"), "{}", stdout(&o));
}

#[test]
fn emit_groups_types_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.json");
    std::fs::write(&table, APPENDIX_G).unwrap();
    let o = run(&["emit", "--table", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Type I (4 entries)"));
    assert!(text.contains("Type II (48 entries)"));
    let o = run(&["emit", "--table", table.to_str().unwrap(), "--format", "structured"]);
    let back = parse_types_report::<Rational>(&stdout(&o)).unwrap();
    assert_eq!(back, parse_table::<Rational>(APPENDIX_G).unwrap());
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "families = [\"differential\"]\nformat = \"structured\"\n").unwrap();
    let o = run(&["solve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = parse_table::<Rational>(&stdout(&o)).unwrap();
    assert!(t.free.len() > 21);
    // Flags win over the file.
    let o = run(&["verify-metric", "--config", cfg.to_str().unwrap(), "--format", "text"]);
    assert!(stdout(&o).starts_with("trace=0"));
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--families", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["quadrature", "--tol", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["quadrature", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(run(&["check-table", "--fixture", "/nonexistent/table.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "colour = \"red\"\n").unwrap();
    assert_eq!(run(&["verify-metric", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{}").unwrap();
    assert_eq!(run(&["check-table", "--fixture", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn quadrature_suite_passes() {
    let o = run(&["quadrature", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
