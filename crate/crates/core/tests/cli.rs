use std::process::{Command, Output};

fn borsuk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borsuk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn capacity_of_sphere_wedge() {
    let o = borsuk(&["capacity", "S^2 v S^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("capacity:  Finite(4)"), "{}", stdout(&o));
}

#[test]
fn capacity_of_cp3_is_unknown() {
    let o = borsuk(&["capacity", "CP^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Unknown"));
}

#[test]
fn compare_reports_the_counterexample() {
    let o = borsuk(&["compare", "S^2 v S^4", "CP^2", "--bound", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("counterexample: yes"), "{out}");
    assert!(out.contains("C(X) = Finite(4)"));
    assert!(out.contains("C(Y) = Finite(2)"));
}

#[test]
fn compare_json() {
    let o = borsuk(&["--json", "compare", "S^2 v S^4", "CP^2", "--bound", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "compare");
    assert_eq!(v["is_counterexample"], true);
    assert_eq!(v["exact_comparison"], true);
    assert_eq!(v["compared_up_to"], 5);
    assert_eq!(v["capacity_x"]["value"], 4);
    assert_eq!(v["capacity_y"]["kind"], "finite");
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["--json", "capacity", "M(Z/4 + Z/2, 3) v S^2", "--enumerate"];
    let first = borsuk(&args);
    let second = borsuk(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let pos = |k: &str| text.find(&format!("\"{k}\":")).unwrap();
    assert!(pos("command") < pos("space") && pos("space") < pos("capacity") && pos("rule") < pos("dominated"));
}

#[test]
fn homology_table() {
    let o = borsuk(&["homology", "CP^2", "--bound", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o)
        .lines()
        .skip(2)
        .take(6)
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(rows, ["0 Z", "1 0", "2 Z", "3 0", "4 Z", "5 0"]);
}

#[test]
fn homology_json_for_lens_tower() {
    let o = borsuk(&["--json", "homology", "K(Z/3, 1)", "--bound", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact_above_bound"], false);
    let texts: Vec<&str> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["group"]["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["Z", "Z/3", "0", "Z/3", "0"]);
}

#[test]
fn summands_listing() {
    let o = borsuk(&["summands", "Z/4 + Z/2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("direct summands up to isomorphism: 4"));
    let listed: Vec<&str> = out.lines().filter(|l| l.starts_with("  ")).map(str::trim).collect();
    assert_eq!(listed, ["0", "Z/2", "Z/4", "Z/2 + Z/4"]);
}

#[test]
fn enumerate_lists_sub_wedges() {
    let o = borsuk(&["capacity", "S^1 v S^2", "--enumerate"]);
    let out = stdout(&o);
    let listed: Vec<&str> = out.lines().filter(|l| l.starts_with("  ")).map(str::trim).collect();
    assert_eq!(listed, ["*", "S^1", "S^2", "S^1 v S^2"]);
}

#[test]
fn error_paths_have_codes_and_statuses() {
    let cases: [(&[&str], i32, &str); 6] = [
        (&["capacity", "M(Z, 1)"], 1, "domain_error"),
        (&["capacity", "CP^1"], 1, "domain_error"),
        (&["homology", "S^2 v"], 1, "parse_error"),
        (&["homology", "K(Z/2, 3)"], 2, "unsupported_space"),
        (&["capacity", "S^3 x K(Z,2)", "--enumerate"], 2, "unsupported_capacity"),
        (&["bogus"], 1, "usage_error"),
    ];
    for (args, code, reason) in cases {
        let o = borsuk(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        let first = stderr(&o).lines().next().unwrap_or_default().to_string();
        assert!(first.starts_with(&format!("error[{reason}]")), "{args:?}: {first}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn json_errors_go_to_stderr() {
    let o = borsuk(&["--json", "capacity", "M(Z, 1)"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(v["error"], "domain_error");
}

#[test]
fn parse_error_reports_column() {
    let o = borsuk(&["capacity", "S^2 v S^3 &"]);
    assert!(stderr(&o).contains("column 11"), "{}", stderr(&o));
}
