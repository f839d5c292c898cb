use std::process::{Command, Output};

fn zstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zstar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_index_reports_value_and_method() {
    let o = zstar(&["eval-index", "3,(2)"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("value\t1.28986813369645"), "{s}");
    assert!(s.contains("method\ttail-l"));
}

#[test]
fn eval_index_json_parses() {
    let o = zstar(&["--format", "json", "eval-index", "(2,1)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["method"], "periodic");
    assert!((v["value"].as_str().unwrap().parse::<f64>().unwrap() - 3.0).abs() < 1e-5);
}

#[test]
fn eval_zstar_at_one_is_divergent() {
    let o = zstar(&["eval-zstar", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "+inf (divergent index (2,{1}^inf))");
}

#[test]
fn eval_zstar_prints_both_paths() {
    let s = stdout(&zstar(&["eval-zstar", "1/2"]));
    let field = |key: &str, col: usize| -> String {
        let line = s
            .lines()
            .find(|l| l.starts_with(key))
            .unwrap_or_else(|| panic!("{key} missing: {s}"));
        line.split('\t').nth(col).unwrap().to_string()
    };
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    assert!((field("digit_series", 1).parse::<f64>().unwrap() - zeta2).abs() < 1e-8);
    assert_eq!(field("index", 1), "3,(1)");
    assert!((field("index", 2).parse::<f64>().unwrap() - zeta2).abs() < 1e-8);
    assert!(field("delta", 1).parse::<f64>().unwrap() < 1e-8);
}

#[test]
fn derivative_marks_divergent_left_side() {
    let s = stdout(&zstar(&["derivative", "--side", "both", "--at", "1/2"]));
    let lines: Vec<&str> = s.lines().collect();
    assert!(lines[0].starts_with("left\tDIVERGES"), "{s}");
    assert!(lines[1].starts_with("right\t1.2898681336"), "{s}");
}

#[test]
fn invert_round_trips() {
    let s = stdout(&zstar(&["invert", "2"]));
    let z: f64 = s
        .lines()
        .find(|l| l.starts_with("zstar"))
        .unwrap()
        .split('\t')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((z - 2.0).abs() < 1e-6);
}

#[test]
fn graph_writes_csv() {
    let s = stdout(&zstar(&["graph", "--n", "4"]));
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "z,zstar");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("0.5,1.6449340"));
}

#[test]
fn verify_selected_criterion_passes() {
    let o = zstar(&["verify", "--only", "1,2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("criterion\tidentity"));
    assert!(
        s.lines()
            .skip(1)
            .filter(|l| !l.starts_with('#'))
            .all(|l| l.ends_with("PASS")),
        "{s}"
    );
}

#[test]
fn verify_exit_status_reflects_failures() {
    // criterion 15 carries a bound that does not hold at r = 1
    let o = zstar(&["verify", "--only", "15"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(zstar(&["eval-index", "1,2"]).status.code(), Some(2));
    assert_eq!(zstar(&["nonsense"]).status.code(), Some(2));
    assert_eq!(zstar(&["eval-zstar", "0"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&zstar(&["graph", "--n", "16"]));
    let b = stdout(&zstar(&["graph", "--n", "16"]));
    assert_eq!(a, b);
}
