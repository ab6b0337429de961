use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use reebpair::formats::{graph_to_string, load_diagram, load_graph, parse_graph};
use reebpair_core::fixtures;
use reebpair_core::PairClass;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reebpair"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pair_fixture_all_engines() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.json", &graph_to_string(&fixtures::sixteen_node()));
    let mut outputs = Vec::new();
    for algo in ["multipass", "singlepass", "oracle"] {
        let out = dir.path().join(format!("{algo}.csv"));
        let r = run(&["pair", s(&input), "--algo", algo, "-o", s(&out)]);
        assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
        let d = load_diagram(&out).unwrap();
        assert_eq!(d.len(), 8);
        assert_eq!(d.count(PairClass::Cycle), 3);
        outputs.push(out);
    }
    for pair in outputs.windows(2) {
        assert_eq!(code(&run(&["diff", s(&pair[0]), s(&pair[1])])), 0);
    }
}

#[test]
fn pair_to_stdout() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.json", &graph_to_string(&fixtures::sixteen_node()));
    let r = run(&["pair", s(&input)]);
    assert_eq!(code(&r), 0);
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.starts_with("class,birth_id,death_id"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn conditioned_input_is_unchanged() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.json", &graph_to_string(&fixtures::sixteen_node()));
    let out = dir.path().join("c.json");
    let report = dir.path().join("r.json");
    let r = run(&["condition", s(&input), "-o", s(&out), "--report", s(&report)]);
    assert_eq!(code(&r), 0);
    assert_eq!(load_graph(&out).unwrap(), fixtures::sixteen_node());
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["inserted"].as_array().unwrap().len(), 0);
    assert_eq!(rep["removed"].as_array().unwrap().len(), 0);
}

#[test]
fn degenerate_minimum_is_split() {
    let dir = TempDir::new().unwrap();
    // A has two upward edges and nothing below it
    let text = r#"{"format":"reeb-graph","version":1,
        "nodes":[{"id":"A","f":0},{"id":"B","f":1},{"id":"C","f":2}],
        "edges":[["A","B"],["A","C"]]}"#;
    let input = write(&dir, "g.json", text);
    let out = dir.path().join("c.json");
    let r = run(&["condition", s(&input), "-o", s(&out)]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    let g = load_graph(&out).unwrap();
    assert_eq!(g.node_count(), 4);
    assert!(g.validate_conditioned().is_ok());
    let extra: Vec<_> = g.nodes().filter(|&v| g.is_synthetic(v)).collect();
    assert_eq!(extra.len(), 1);
    assert_eq!(g.kind(extra[0]), reebpair_core::CriticalKind::Minimum);
    assert_eq!(g.kind(g.node("A").unwrap()), reebpair_core::CriticalKind::UpFork);
}

#[test]
fn malformed_input_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.json", "{ not json");
    assert_eq!(code(&run(&["pair", s(&input)])), 3);
    let dangling = write(
        &dir,
        "dangling.json",
        r#"{"format":"reeb-graph","version":1,"nodes":[{"id":"A","f":0}],"edges":[["A","Z"]]}"#,
    );
    assert_eq!(code(&run(&["pair", s(&dangling)])), 3);
    assert_eq!(code(&run(&["pair", "/nonexistent/graph.json"])), 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["pair"])), 2);
    assert_eq!(code(&run(&["generate", "graph", "--n", "5", "--p2", "1.5"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn oracle_size_guard() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.json", &graph_to_string(&fixtures::sixteen_node()));
    let r = run(&["pair", s(&input), "--algo", "oracle", "--oracle-max-nodes", "10"]);
    assert_eq!(code(&r), 3);
    assert!(!r.stderr.is_empty());
}

#[test]
fn diff_reports_differences() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "w.json", &graph_to_string(&fixtures::virtual_edge_witness()));
    let good = dir.path().join("good.csv");
    let bad = dir.path().join("bad.csv");
    assert_eq!(code(&run(&["pair", s(&input), "--algo", "oracle", "-o", s(&good)])), 0);
    let r = run(&[
        "pair",
        s(&input),
        "--algo",
        "singlepass",
        "--sweep",
        "asc",
        "--no-virtual-edges",
        "-o",
        s(&bad),
    ]);
    assert_eq!(code(&r), 0);
    let r = run(&["diff", s(&good), s(&bad)]);
    assert_eq!(code(&r), 1);
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("< ")));
    assert!(text.lines().any(|l| l.starts_with("> ")));
}

#[test]
fn generate_and_cut() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.json");
    let r = run(&["generate", "graph", "--n", "40", "--seed", "3", "--condition", "-o", s(&g)]);
    assert_eq!(code(&r), 0);
    let graph = load_graph(&g).unwrap();
    assert!(graph.validate_conditioned().is_ok());
    let rank = graph.cycle_rank();
    assert!(rank >= 2);
    let c = dir.path().join("c.json");
    assert_eq!(code(&run(&["cut-cycles", s(&g), "--k", "2", "-o", s(&c)])), 0);
    assert_eq!(load_graph(&c).unwrap().cycle_rank(), rank - 2);
    let k = (rank + 1).to_string();
    assert_eq!(code(&run(&["cut-cycles", s(&g), "--k", &k])), 3);
}

#[test]
fn generate_tree_node_count() {
    let r = run(&["generate", "tree", "--n", "25", "--mode", "join"]);
    assert_eq!(code(&r), 0);
    let g = parse_graph(std::str::from_utf8(&r.stdout).unwrap()).unwrap();
    assert_eq!(g.node_count(), 101);
    assert_eq!(g.cycle_rank(), 0);
}

#[test]
fn bench_smoke() {
    let r = run(&["bench", "--suite", "trees", "--sizes", "20", "--reps", "1"]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    let text = String::from_utf8(r.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("algo") && header.contains("median_ms"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn plot_marks_every_pair() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.json", &graph_to_string(&fixtures::sixteen_node()));
    let csv = dir.path().join("d.csv");
    assert_eq!(code(&run(&["pair", s(&input), "-o", s(&csv)])), 0);
    let r = run(&["plot", s(&csv)]);
    assert_eq!(code(&r), 0);
    let svg = String::from_utf8(r.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle class=\"pair").count(), 8);
    assert_eq!(svg.matches("pair cycle").count(), 3);
}

#[test]
fn stdin_pipeline() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = bin()
        .args(["pair", "-", "--algo", "singlepass"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(graph_to_string(&fixtures::sixteen_node()).as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 9);
}
