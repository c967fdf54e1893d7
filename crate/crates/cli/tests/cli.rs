use std::process::{Command, Output};

fn hyperres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn path_in_text() {
    let o = hyperres(&["charpoly", "path", "2", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("λ^35 · (λ^3−1)^6 · (λ^3−2)^9\ndegree 80"));
}

#[test]
fn latex_output() {
    let o = hyperres(&["charpoly", "edge", "3", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), "\\lambda^{3}(\\lambda^{3}-1)^{3}");
}

#[test]
fn json_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.json");
    let o = hyperres(&["charpoly", "star", "2", "3", "--format", "json", "--verify-at", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["metadata"]["family"], "star");
    assert_eq!(doc["total_degree"], "80");
    assert_eq!(doc["verification"]["entries"][0]["equal"], true);
}

#[test]
fn starlike_carries_the_degree_note() {
    let o = hyperres(&["charpoly", "starlike", "3", "2", "1", "1"]);
    let out = stdout(&o);
    assert!(out.contains("degree 2304"));
    assert!(out.contains("2294"));
}

#[test]
fn negative_and_fractional_sample_points() {
    let o = hyperres(&["charpoly", "edge", "4", "--verify-at", "-1", "5/2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches(": ok").count(), 2);
}

#[test]
fn parameter_and_guard_errors_exit_2() {
    assert_eq!(hyperres(&["charpoly", "path", "0", "3"]).status.code(), Some(2));
    assert_eq!(hyperres(&["charpoly", "path", "3", "1"]).status.code(), Some(2));
    assert_eq!(hyperres(&["charpoly", "path", "4", "3", "--verify-at", "2"]).status.code(), Some(2));
    assert_eq!(hyperres(&["charpoly", "path", "2", "3", "--verify-at", "1/0"]).status.code(), Some(2));
    assert_eq!(hyperres(&["chipfire", "critical", "12"]).status.code(), Some(2));
    assert_eq!(hyperres(&["chipfire", "firing-graph", "2", "3", "--config", "5,0,0,0"]).status.code(), Some(2));
    assert_eq!(hyperres(&["charpoly", "bogus"]).status.code(), Some(2));
}

#[test]
fn chipfire_commands() {
    let o = hyperres(&["chipfire", "critical", "4"]);
    assert!(stdout(&o).ends_with("16 critical configurations\n"));

    let o = hyperres(&["chipfire", "strata", "2", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!([4, 3, 9]));

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = hyperres(&["chipfire", "firing-graph", "3", "3", "--config", "1,1,1,1,0,0", "--dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("in B_2"));
    assert!(out.contains("13 nodes"));
    assert!(out.contains("tail: 8 nodes"));
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn selftest_passes_and_corruption_exits_3() {
    let o = hyperres(&["selftest", "--level", "quick"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches(" PASS ").count(), 10);

    let o = hyperres(&["selftest", "--corrupt-closed-form"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("mismatch"));
}
