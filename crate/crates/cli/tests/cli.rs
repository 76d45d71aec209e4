use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn nsct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsct"))
        .args(args)
        .env_remove("NSCT_MAX_ORDER")
        .output()
        .expect("run nsct")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn info_summaries() {
    let o = nsct(&["info", &data("c3xc3.json")]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in [
        "order: 9",
        "exponent: 3",
        "conjugacy classes: 9",
        "normal subgroups: 6",
    ] {
        assert!(out.contains(line), "{out}");
    }
    let o = nsct(&["info", &data("trivial.json"), "--format", "json"]);
    assert_eq!(json(&o)["order"], 1);
    let o = nsct(&["info", &data("ut4_2.json"), "--format", "json"]);
    assert_eq!(json(&o)["order"], 64);
}

#[test]
fn factor_subgroups_of_c3xc4() {
    let o = nsct(&[
        "nsct",
        &data("c3xc4.json"),
        "--subgroups",
        "gen:4",
        "gen:3",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    let mut sizes: Vec<usize> = v["superclasses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["elements"].as_array().unwrap().len())
        .collect();
    sizes.sort();
    assert_eq!(sizes, [1, 2, 3, 6]);
    assert_eq!(v["table"].as_array().unwrap().len(), 4);
}

#[test]
fn all_normal_subgroups_of_c3xc3() {
    let o = nsct(&[
        "nsct",
        &data("c3xc3.json"),
        "--subgroups",
        "all",
        "--dixon",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let table: Vec<Vec<i64>> = serde_json::from_value(json(&o)["table"].clone()).unwrap();
    assert_eq!(table.len(), 5);
    assert_eq!(table[0], [1, 1, 1, 1, 1]);
    for row in &table[1..] {
        let mut r = row.clone();
        r.sort();
        assert_eq!(r, [-1, -1, -1, 2, 2]);
    }
}

#[test]
fn non_normal_generators_take_the_normal_closure() {
    // element 2 of the S3 file is a transposition; its normal closure is S3
    let o = nsct(&[
        "lattice",
        &data("s3.json"),
        "--subgroups",
        "gen:2",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let nodes = json(&o)["nodes"].as_array().unwrap().clone();
    assert_eq!(nodes.len(), 2);
    assert_eq!(nodes[1]["order"], 6);
    let o = nsct(&["nsct", &data("s3.json"), "--subgroups", "gen:2"]);
    assert!(o.status.success());
}

#[test]
fn finest_agreement() {
    let o = nsct(&["finest", &data("c3xc3.json"), "--method", "all", "--dixon"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(!out.contains("FAIL"), "{out}");
    assert!(out.contains("lattice: 6 nodes; 5 superclasses"), "{out}");

    let o = nsct(&[
        "finest",
        &data("s3.json"),
        "--method",
        "all",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert!(v["agreement"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    assert_eq!(v["superclasses"].as_array().unwrap().len(), 3);

    let o = nsct(&["finest", &data("trivial.json"), "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["superclasses"].as_array().unwrap().len(), 1);
}

#[test]
fn finest_single_methods() {
    for method in ["closure", "idempotents", "grouping"] {
        let o = nsct(&["finest", &data("c3xc4.json"), "--method", method]);
        assert!(o.status.success(), "{method}: {}", stderr(&o));
        assert!(!stdout(&o).is_empty());
    }
    let o = nsct(&[
        "finest",
        &data("c3.json"),
        "--method",
        "idempotents",
        "--no-table",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lattice_outputs() {
    let o = nsct(&[
        "lattice",
        &data("c3xc4.json"),
        "--subgroups",
        "gen:4",
        "gen:3",
        "--dot",
    ]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 4);
    assert_eq!(dot.matches("[label=").count(), 4);

    let o = nsct(&["lattice", &data("c3.json"), "--format", "json"]);
    assert_eq!(json(&o)["nodes"].as_array().unwrap().len(), 2);

    let patterns = [
        "(1,4)",
        "(1,3),(1,4)",
        "(1,4),(2,4)",
        "(1,2),(1,3),(1,4)",
        "(1,3),(1,4),(2,4)",
        "(1,4),(2,4),(3,4)",
        "(1,2),(1,3),(1,4),(2,4)",
        "(1,3),(1,4),(2,3),(2,4)",
        "(1,3),(1,4),(2,4),(3,4)",
        "(1,2),(1,3),(1,4),(2,3),(2,4)",
        "(1,2),(1,3),(1,4),(2,4),(3,4)",
        "(1,3),(1,4),(2,3),(2,4),(3,4)",
    ];
    let specs: Vec<String> = patterns.iter().map(|p| format!("pattern:{p}")).collect();
    let mut args = vec!["lattice", &data("ut4_2.json")]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    args.push("--subgroups".into());
    args.extend(specs);
    args.extend(["--format".into(), "json".into()]);
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = nsct(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["nodes"].as_array().unwrap().len(), 14);
}

#[test]
fn chartab_compute_and_check() {
    let o = nsct(&["chartab", &data("c3.json"), "--dixon", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["chars"].as_array().unwrap().len(), 3);

    let o = nsct(&[
        "chartab",
        &data("c3xc3.json"),
        "--check",
        &data("c3xc3_table.json"),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("valid"));

    let o = nsct(&[
        "chartab",
        &data("c3xc3.json"),
        "--check",
        &data("c3xc3_table_corrupt.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invariant violation"), "{}", stdout(&o));

    let o = nsct(&["chartab", &data("s3.json"), "--check-idempotents"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn computed_tables_check_as_valid() {
    let o = nsct(&["chartab", &data("c3xc4.json"), "--format", "json"]);
    let file = temp_file(&stdout(&o));
    let o = nsct(&[
        "chartab",
        &data("c3xc4.json"),
        "--check",
        file.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn supplied_table_is_used() {
    let o = nsct(&[
        "nsct",
        &data("c3xc3.json"),
        "--subgroups",
        "all",
        "--chartab",
        &data("c3xc3_table.json"),
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let with_file = json(&o);
    let o = nsct(&[
        "nsct",
        &data("c3xc3.json"),
        "--subgroups",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(json(&o)["table"], with_file["table"]);
}

#[test]
fn input_errors_exit_2() {
    let o = nsct(&["nsct", &data("s3.json"), "--subgroups", "gen:x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("gen:x"));

    let o = nsct(&["nsct", &data("s3.json"), "--subgroups", "pattern:(1,2)"]);
    assert_eq!(o.status.code(), Some(2));

    let o = nsct(&["info", "/nonexistent/group.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/group.json"));

    let bad = temp_file("{\"kind\": \"cayley\",\n \"order\": 2,\n \"table\": [[0, 1], [1 0]]}");
    let o = nsct(&["info", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let not_a_group = temp_file(r#"{"kind": "cayley", "order": 2, "table": [[0, 1], [0, 1]]}"#);
    let o = nsct(&["info", not_a_group.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn order_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nsct"))
        .args(["info", &data("ut4_2.json")])
        .env("NSCT_MAX_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn moved_identity_is_reported() {
    // C2 written with the identity in position 1
    let f = temp_file(r#"{"kind": "cayley", "order": 2, "table": [[1, 0], [0, 1]]}"#);
    let o = nsct(&["info", f.path().to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["relabeling"], serde_json::json!([1, 0]));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn outputs_are_deterministic() {
    let runs: &[&[&str]] = &[
        &["nsct", "c3xc4.json", "--subgroups", "gen:4", "gen:3"],
        &[
            "nsct",
            "c3xc3.json",
            "--subgroups",
            "all",
            "--format",
            "json",
        ],
        &[
            "nsct",
            "c3xc3.json",
            "--subgroups",
            "all",
            "--format",
            "latex",
        ],
        &["finest", "ut4_2.json", "--method", "all"],
        &[
            "lattice",
            "c3xc4.json",
            "--subgroups",
            "gen:4",
            "gen:3",
            "--dot",
        ],
        &["chartab", "s3.json", "--format", "json"],
    ];
    for args in runs {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    data(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = nsct(&args);
        let b = nsct(&args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn latex_layout() {
    let o = nsct(&[
        "nsct",
        &data("c3xc4.json"),
        "--subgroups",
        "gen:4",
        "gen:3",
        "--format",
        "latex",
    ]);
    let out = stdout(&o);
    assert!(out.starts_with("\\begin{array}{c|cccc}"), "{out}");
    assert_eq!(out.matches("\\\\").count(), 5);
}
