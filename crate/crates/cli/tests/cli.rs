use std::path::PathBuf;
use std::process::{Command, Output};

use logtk_cli::manifest::parse_manifest;
use logtk_cli::run::run_tasks;
use logtk_core::{replay, CheckOptions};

fn manifest(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests").join(name)
}

fn shipped() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    v.sort();
    assert!(v.len() >= 5);
    v
}

fn logtk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logtk")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn log_point_is_log_regular() {
    let o = logtk(&["check", "log-regular", manifest("logpoint.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("regular [log-regular]: holds"));
}

#[test]
fn node_fails_with_a_tor1_witness() {
    let o = logtk(&["check", "log-regular", manifest("node.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("tor1: homology of dimension 1"), "{out}");
    assert!(out.contains("cycles outside the boundaries: (y, 0)"), "{out}");
    let o = logtk(&["check", "kato", manifest("node.toml").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(dim A, dim A/I + rank) = (1, 2)"));
}

#[test]
fn non_sharp_chart_is_indeterminate() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
[monoid.M]
generators = ["a", "b"]
relations = ["a + b = 0"]

[ring.R]
vars = ["x"]

[prelog.P]
ring = "R"
monoid = "M"
alpha = { a = "1 + x", b = "1 - x + x^2" }
"#;
    let path = write_temp(&dir, "unit.toml", text);
    let o = logtk(&["check", "log-regular", &path]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(2), "{out}{}", stderr(&o));
    assert!(out.contains("indeterminate"), "{out}");
}

#[test]
fn snf_prints_the_diagonal_and_factors() {
    let o = logtk(&["abgroup", "snf", "--matrix", "2,4;0,6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("D = diag(2, 6)\n"), "{out}");
    assert!(out.contains("U =\n") && out.contains("V =\n"));
    let o = logtk(&["abgroup", "describe", "--matrix", "2,4;0,6"]);
    assert_eq!(stdout(&o).trim(), "Z/2 + Z/6");
}

#[test]
fn field_flag_overrides_the_manifest() {
    let path = manifest("kummer.toml");
    let p = path.to_str().unwrap();
    assert_eq!(logtk(&["check", "log-smooth", p]).status.code(), Some(0));
    assert_eq!(logtk(&["--field", "Fp(2)", "check", "log-smooth", p]).status.code(), Some(0));
    assert_eq!(logtk(&["--field", "Fp(3)", "check", "log-smooth", p]).status.code(), Some(1));
}

#[test]
fn json_reports_have_the_documented_keys() {
    let o = logtk(&["--json", "run", manifest("node.toml").to_str().unwrap()]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    for l in lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        let keys = ["task", "procedure", "status", "certificate", "preconditions", "stats", "ms"];
        assert_eq!(v.as_object().unwrap().len(), keys.len());
        let at: Vec<usize> = keys.iter().map(|k| l.find(&format!("\"{k}\":")).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]), "{l}");
    }
}

#[test]
fn runs_are_deterministic_up_to_timings() {
    let strip = |s: String| -> Vec<serde_json::Value> {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("ms");
                v
            })
            .collect()
    };
    for m in shipped() {
        let p = m.to_str().unwrap();
        let a = stdout(&logtk(&["--json", "run", p]));
        let b = stdout(&logtk(&["--json", "run", p]));
        assert_eq!(strip(a), strip(b), "{p}");
    }
}

#[test]
fn emitted_reports_replay() {
    let dir = tempfile::tempdir().unwrap();
    for m in shipped() {
        let o = logtk(&["--json", "run", m.to_str().unwrap()]);
        let path = write_temp(&dir, "reports.json", &stdout(&o));
        let r = logtk(&["replay", &path]);
        assert_eq!(r.status.code(), Some(0), "{}: {}", m.display(), stdout(&r));
        assert_eq!(logtk(&["--replay", &path]).status.code(), Some(0));
    }
}

#[test]
fn tampered_reports_do_not_replay() {
    let dir = tempfile::tempdir().unwrap();
    let o = logtk(&["--json", "check", "log-regular", manifest("node.toml").to_str().unwrap()]);
    let text = stdout(&o).replace("\"status\":\"fails\"", "\"status\":\"holds\"");
    let path = write_temp(&dir, "bad.json", &text);
    let r = logtk(&["replay", &path]);
    assert_eq!(r.status.code(), Some(2));
    assert!(stdout(&r).contains("FAILED"));
}

#[test]
fn undefined_monoid_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let text = "[ring.R]\nvars = [\"x\"]\n\n[prelog.P]\nring = \"R\"\nmonoid = \"Nowhere\"\nalpha = {}\n";
    let path = write_temp(&dir, "bad.toml", text);
    let o = logtk(&["print", &path]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("unresolved reference to monoid `Nowhere`"), "{err}");
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn syntax_errors_are_positioned() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.toml", "[ring.R]\nvars = [\"x\",\n  = 3\n");
    let o = logtk(&["print", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("syntax error at line 3"), "{}", stderr(&o));
}

#[test]
fn shipped_manifests_print_and_parse_back() {
    for m in shipped() {
        let text = std::fs::read_to_string(&m).unwrap();
        let parsed = parse_manifest(&text).unwrap();
        let printed = parsed.print();
        let again = parse_manifest(&printed).unwrap();
        assert_eq!(again.print(), printed, "{}", m.display());
        assert_eq!(again.tasks, parsed.tasks);
        assert_eq!(again.monoids, parsed.monoids);
        assert_eq!(again.rings, parsed.rings);
        for (n, p) in &parsed.prelogs {
            assert_eq!(again.prelogs[n].value.alpha, p.value.alpha);
        }
        let o = logtk(&["print", m.to_str().unwrap()]);
        assert_eq!(stdout(&o), printed);
    }
}

#[test]
fn every_certificate_replays_to_its_status() {
    let opts = CheckOptions::default();
    for m in shipped() {
        let parsed = parse_manifest(&std::fs::read_to_string(&m).unwrap()).unwrap();
        let tasks: Vec<_> = parsed.tasks.iter().map(|(n, t)| (n.clone(), t.clone())).collect();
        for r in run_tasks(&parsed, &tasks, &opts) {
            let rep = replay(&r.certificate);
            assert!(rep.ok(), "{} {}: {:?}", m.display(), r.task, rep.failures);
            assert_eq!(rep.replayed, r.status);
        }
    }
}

#[test]
fn diff_prints_a_labeled_presentation() {
    let o = logtk(&["--json", "diff", manifest("node.toml").to_str().unwrap(), "node"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["labels"].as_array().unwrap().len(), 2);
    let o = logtk(&["fundamental", manifest("tower.toml").to_str().unwrap(), "diagonal"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent: true"));
}
