use std::process::{Command, Output};

fn grouplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouplab"))
        .args(args)
        .env_remove("GROUPLAB_ORDER_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn show_holomorph_of_five() {
    let out = grouplab(&["show", "holomorph_cyclic(5)"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("order         20"));
    assert!(text.contains("supersoluble  yes"));
    assert!(text.contains("k=1           none of Y, X, K, F"));
    assert!(text.contains("k=2           Y X K F"));
}

#[test]
fn show_trivial_and_symmetric_five() {
    let text = stdout(&grouplab(&["show", "cyclic(1)", "--k", "1,4"]));
    assert!(text.contains("order         1"));
    assert!(text.contains("k=1           Y X K F"));
    assert!(text.contains("k=4           Y X K F"));
    let text = stdout(&grouplab(&["show", "sym(5)", "--k", "1"]));
    assert!(text.contains("order         120"));
    assert!(text.contains("supersoluble  no"));
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let out = grouplab(&["check", "holomorph_cyclic(5)", "k-submodular", "--gen", "(2 5)(3 4)", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains(": true") && text.contains("chain:") && text.contains("2-modular"));

    let out = grouplab(&["check", "holomorph_cyclic(7)", "k-submodular", "--gen", "(2 4 3 7 5 6)", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));

    let out = grouplab(&["check", "holomorph_cyclic(7)", "f-subnormal", "--gen", "(2 4 3 7 5 6)", "--class", "U_k", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));

    let out = grouplab(&["check", "sym(4)", "modular"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("order 24"));
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["check", "sym(3)", "normal", "--gen", "(1 9)"][..],
        &["check", "sym(3)", "normal", "--gen", "(1 2"],
        &["check", "sym(3)", "f-subnormal"],
        &["show", "nonsense(3)"],
        &["show", "sym(6)", "--order-cap", "100"],
        &["verify", "--suite", "T3.1", "--k", "0"],
        &["verify", "--suite", "T9.9", "--k", "1"],
        &["classify", "sym(3)", "--class", "Q"],
    ] {
        assert_eq!(grouplab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn order_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_grouplab"))
        .args(["show", "sym(5)"])
        .env("GROUPLAB_ORDER_CAP", "60")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_reports_membership() {
    let out = grouplab(&["classify", "holomorph_cyclic(5)", "--class", "K", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = grouplab(&["classify", "holomorph_cyclic(5)", "--class", "K", "--k", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&grouplab(&["classify", "sym(4)", "--k", "1"]));
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.ends_with(" no")));
}

#[test]
fn group_specs_from_json_files() {
    let dir = std::env::temp_dir().join(format!("grouplab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.json");
    std::fs::write(&path, r#"{"kind":"generators","degree":3,"cycles":["(1 2)","(1 2 3)"]}"#).unwrap();
    let text = stdout(&grouplab(&["show", &format!("@{}", path.display()), "--k", "1"]));
    assert!(text.contains("order         6"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_equivalence_suites() {
    let out = grouplab(&["verify", "--suite", "T3.1,T3.2", "--k", "1,2,3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = grouplab(&["verify", "--suite", "R1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

fn report(jobs: &str, path: &std::path::Path) -> serde_json::Value {
    let out = grouplab(&["verify", "--suite", "L,R3", "--k", "1,2", "--order-cap", "50", "--jobs", jobs, "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    for r in v.as_array_mut().unwrap() {
        for e in r["entries"].as_array_mut().unwrap() {
            e["elapsed_ms"] = 0.into();
        }
    }
    v
}

#[test]
fn jobs_do_not_change_reports() {
    let dir = std::env::temp_dir().join(format!("grouplab-jobs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let one = report("1", &dir.join("one.json"));
    let four = report("4", &dir.join("four.json"));
    assert_eq!(one, four);
    assert_eq!(one[0]["schema_version"], 1);
    assert_eq!(one[0]["suite"], "L");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn export_lattice_formats() {
    let dot = stdout(&grouplab(&["export-lattice", "sym(3)", "--emit-dot"]));
    assert!(dot.starts_with("digraph lattice {"));
    assert_eq!(dot.matches(" -> ").count(), 8);
    let json: serde_json::Value = serde_json::from_str(&stdout(&grouplab(&["export-lattice", "sym(4)"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 30);
}

#[test]
fn corpus_list_names_entries() {
    let text = stdout(&grouplab(&["corpus", "list"]));
    assert!(text.lines().any(|l| l.starts_with("holomorph_cyclic(5)")));
    assert!(text.trim_end().ends_with("groups"));
}
