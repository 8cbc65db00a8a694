use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ugs-pursuit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn network() -> String {
    data("example_network.json").display().to_string()
}

#[test]
fn zero_metric_solve_reports_earliest_exit() {
    let zero = data("zero_metric.json").display().to_string();
    let o = run(&["solve", "--network", &network(), "--metric", &zero]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("tolerable delay: 11.8300"), "{}", stdout(&o));
}

#[test]
fn realizable_prints_eight_sets_and_eight_rows() {
    let o = run(&["realizable", "--network", &network(), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sets"].as_array().unwrap().len(), 8);
    let log = v["log"].as_array().unwrap();
    assert_eq!(log.len(), 8);
    assert_eq!(log[4]["node"], 4);
    assert_eq!(log[4]["sets"], serde_json::json!([[4], [2, 3, 4], [2, 3]]));
}

#[test]
fn single_edge_paths() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("edge.json");
    std::fs::write(
        &file,
        r#"{"nodes": [{"id": 1}, {"id": 2}], "edges": [{"from": 1, "to": 2, "time": 3.5}], "entry": 1}"#,
    )
    .unwrap();
    let o = run(&["paths", "--network", file.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("path 1: 1 -> 2  length 3.50"), "{text}");
    assert!(!text.contains("path 2"));
}

#[test]
fn saved_policy_replays_identically() {
    let dir = tempfile::tempdir().unwrap();
    let policy = dir.path().join("policy.json");
    let net = network();
    for strict in [false, true] {
        let mut args = vec!["solve", "--network", &net, "--speed", "1.62", "--no-prune", "--format", "json"];
        if strict {
            args.push("--strict-resolution");
        }
        let o = run(&args);
        assert!(o.status.success());
        std::fs::write(&policy, &o.stdout).unwrap();
        let d = serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["meta"]["tolerable_delay"]
            .as_f64()
            .unwrap();
        let t0 = format!("{d}");
        for k in ["1", "2", "3", "4"] {
            let mut base = vec!["simulate", "--network", &net, "--speed", "1.62", "--path", k, "--t0", &t0, "--format", "json"];
            if strict {
                base.push("--strict-resolution");
            }
            let fresh = run(&base);
            let mut with_policy = base.clone();
            with_policy.extend(["--policy", policy.to_str().unwrap()]);
            let saved = run(&with_policy);
            assert!(fresh.status.success() && saved.status.success());
            assert_eq!(fresh.stdout, saved.stdout, "path {k}");
            assert!(stdout(&saved).contains("\"outcome\":\"captured\""));
        }
    }
}

#[test]
fn require_positive_exit_status() {
    let net = network();
    let ok = run(&["solve", "--network", &net, "--speed", "1.62", "--require-positive"]);
    assert_eq!(ok.status.code(), Some(0));

    // A pursuer barely faster than the evader cannot afford any delay.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("slow.json");
    std::fs::write(&file, r#"{"kind": "euclidean", "speed": 1.0001}"#).unwrap();
    let slow = run(&["solve", "--network", &net, "--metric", file.to_str().unwrap(), "--require-positive"]);
    assert_eq!(slow.status.code(), Some(3), "{}", stdout(&slow));
}

#[test]
fn validation_errors_exit_with_two() {
    let net = network();
    assert_eq!(run(&["solve", "--network", &net, "--speed", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--network", &net]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--network", "/nonexistent.json", "--speed", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cyclic = dir.path().join("cyclic.json");
    std::fs::write(
        &cyclic,
        r#"{"nodes": [{"id": 1}, {"id": 2}, {"id": 3}],
            "edges": [{"from": 1, "to": 2, "time": 1}, {"from": 2, "to": 3, "time": 1}, {"from": 3, "to": 2, "time": 1}],
            "entry": 1}"#,
    )
    .unwrap();
    let o = run(&["paths", "--network", cyclic.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cyclic.json"));

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, "{\"nodes\": [\n").unwrap();
    let o = run(&["paths", "--network", truncated.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn tree_renders_dot_and_json() {
    let net = network();
    let dot = run(&["tree", "--network", &net, "--speed", "1.62"]);
    assert!(stdout(&dot).starts_with("digraph"));
    assert!(stdout(&dot).contains("D=4.84"));
    let json = run(&["tree", "--network", &net, "--speed", "1.62", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["ugs"], 1);
    assert_eq!(v["set"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn verify_and_speed_studies() {
    let net = network();
    let v = run(&["verify", "--network", &net, "--speed", "1.62", "--t0", "4.8", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(report["all_captured"], true);

    let c = run(&["critical-speed", "--network", &net, "--lo", "0.5", "--hi", "1.61", "--format", "json"]);
    let speed = serde_json::from_slice::<serde_json::Value>(&c.stdout).unwrap()["critical_speed"]
        .as_f64()
        .unwrap();
    assert!(speed > 1.0 && speed < 1.61);
    let bad = run(&["critical-speed", "--network", &net, "--lo", "1.7", "--hi", "2.0"]);
    assert_eq!(bad.status.code(), Some(2));

    let s = run(&["sweep", "--network", &net, "--grid", "0.5,1.61,1.62"]);
    let csv = stdout(&s);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "V,D,delay,mu");
    assert_eq!(lines[1], "0.5,,,");
    assert!(lines[3].starts_with("1.62,4.839"));
}

#[test]
fn seeded_networks_are_reproducible() {
    let a = run(&["solve", "--seed", "11", "--format", "json"]);
    let b = run(&["solve", "--seed", "11", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
