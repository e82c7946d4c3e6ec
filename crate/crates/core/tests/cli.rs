use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const K2: &str = r#"{"vertices":2,"edges":[{"u":0,"v":1,"w":"1"}]}"#;
const TRIANGLE: &str = r#"{"vertices":3,"edges":[{"u":0,"v":1,"w":"1"},{"u":1,"v":2,"w":"1"},{"u":0,"v":2,"w":"1"}]}"#;
const K4: &str = r#"{"vertices":4,"edges":[{"u":0,"v":1,"w":"1"},{"u":0,"v":2,"w":"1"},{"u":0,"v":3,"w":"1"},{"u":1,"v":2,"w":"1"},{"u":1,"v":3,"w":"1"},{"u":2,"v":3,"w":"1"}]}"#;
const TWO_K2: &str = r#"{"vertices":4,"edges":[{"u":0,"v":1,"w":"1"},{"u":2,"v":3,"w":"1"}]}"#;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_potts-sp"))
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = binary()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn doc_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("potts-sp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eval_k2_at_three() {
    let o = with_stdin(&["eval", "-", "3"], K2);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "12");
}

#[test]
fn eval_from_file_with_rational_q() {
    let path = doc_file("tri.json", TRIANGLE);
    let o = binary().args(["eval", path.to_str().unwrap(), "1/2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    // 1/8 + 3/4 + 3/2 + 1/2
    assert_eq!(stdout(&o).trim(), "23/8");
}

#[test]
fn eval_chromatic_triangle() {
    let o = with_stdin(&["eval", "-", "3", "--v-all", "-1"], TRIANGLE);
    assert_eq!(stdout(&o).trim(), "6");
    // At q = 2 the series step divides by zero.
    let o = with_stdin(&["eval", "-", "2", "--v-all", "-1"], TRIANGLE);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("singular"), "{}", stderr(&o));
}

#[test]
fn eval_rejects_k4_with_residual_size() {
    let o = with_stdin(&["eval", "-", "2"], K4);
    assert_eq!(o.status.code(), Some(4));
    let message = stderr(&o);
    assert!(
        message.contains("4 vertices") && message.contains("6 edges"),
        "{message}"
    );
}

#[test]
fn input_errors_have_distinct_codes() {
    let o = with_stdin(&["eval", "-", "2"], "{not json");
    assert_eq!(o.status.code(), Some(3));
    let o = binary()
        .args(["eval", "/nonexistent/graph.json", "2"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = binary().args(["frobnicate"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn poly_output() {
    let o = with_stdin(&["poly", "-"], K2);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("q + q^2"));
    assert!(text.contains(r#"#data {"coefficients":["0","1","1"]}"#), "{text}");

    let o = with_stdin(&["poly", "-", "--chromatic"], TRIANGLE);
    assert_eq!(stdout(&o).lines().next(), Some("2q - 3q^2 + q^3"));
    let o = with_stdin(&["chromatic", "-"], TRIANGLE);
    assert_eq!(stdout(&o).lines().next(), Some("2q - 3q^2 + q^3"));

    // (q^2 + q)^2
    let o = with_stdin(&["poly", "-"], TWO_K2);
    assert_eq!(stdout(&o).lines().next(), Some("q^2 + 2q^3 + q^4"));
}

#[test]
fn tree_output() {
    let o = with_stdin(&["tree", "-"], TRIANGLE);
    assert_eq!(stdout(&o), "P(\n  S(\n    Q(0)\n    Q(2)\n  )\n  Q(1)\n)\n");
}

#[test]
fn check_matches_and_skips() {
    let o = with_stdin(&["check", "-"], TRIANGLE);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("MATCH").count(), 5, "{text}");
    assert!(text.contains(r#"#data {"match":5,"mismatch":0,"skip":0}"#));

    let o = with_stdin(&["check", "--v-all", "-1", "-", "1", "2", "3"], TRIANGLE);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("q=2 sp=- oracle=0 SKIP(singular)"), "{text}");
    assert!(text.contains(r#"#data {"match":2,"mismatch":0,"skip":1}"#), "{text}");
}

#[test]
fn generated_graph_checks() {
    let generated = binary().args(["gen", "--ops", "12", "--seed", "42"]).output().unwrap();
    assert_eq!(generated.status.code(), Some(0));
    let o = with_stdin(&["check", "-"], &stdout(&generated));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""mismatch":0"#));
}

#[test]
fn gen_is_deterministic() {
    let run = || stdout(&binary().args(["gen", "--ops", "30", "--seed", "7"]).output().unwrap());
    assert_eq!(run(), run());
    let other = stdout(&binary().args(["gen", "--ops", "30", "--seed", "8"]).output().unwrap());
    assert_ne!(run(), other);

    let k2 = stdout(
        &binary()
            .args(["gen", "--ops", "0", "--wmin", "1", "--wmax", "1"])
            .output()
            .unwrap(),
    );
    assert_eq!(k2.trim(), K2);
}

#[test]
fn bench_csv_header() {
    let o = binary()
        .args(["bench", "--sizes", "10,20", "--direct"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("edges,vertices,mode,q,seed,wall_time_seconds"));
    let modes: Vec<&str> = lines.map(|l| l.split(',').nth(2).unwrap()).collect();
    assert_eq!(modes, ["float", "direct-float", "float", "direct-float"]);

    let path = doc_file("bench.csv", "");
    let o = binary()
        .args([
            "bench",
            "--sizes",
            "5",
            "--mode",
            "exact",
            "--csv",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(
        written.starts_with("edges,vertices,mode,q,seed,wall_time_seconds\n5,"),
        "{written}"
    );
}

#[test]
fn bench_rejects_descending_sizes() {
    let o = binary().args(["bench", "--sizes", "20,10"]).output().unwrap();
    assert_ne!(o.status.code(), Some(0));
}
