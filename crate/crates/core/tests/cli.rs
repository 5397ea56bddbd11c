use std::fs;
use std::process::{Command, Output};

use desmallworld::harness::REPORT_HEADER;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_desmallworld"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn generated_graph_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let edges = dir.path().join("removed.txt");
    let status = cli(&[
        "--generate",
        "ws",
        "--n",
        "100",
        "--budget",
        "5",
        "--method",
        "sb,omw",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
        "--edges-out",
        edges.to_str().unwrap(),
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), REPORT_HEADER.join(","));
    assert!(lines.next().unwrap().starts_with("sb,3,5,5,"));
    assert!(lines
        .next()
        .unwrap()
        .starts_with("omw,3,5,,1.0,0.05,5.0,100,200,"));
    for m in ["sb", "omw"] {
        let removed = fs::read_to_string(dir.path().join(format!("removed.txt.{m}"))).unwrap();
        assert_eq!(removed.lines().count(), 5);
    }
    assert!(String::from_utf8_lossy(&status.stderr).contains("ranking by delta"));
}

#[test]
fn loaded_graph_keeps_labels() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    fs::write(&graph, "# comment\n10 20\n20 30\n30 10\n30 40\n40 40\n").unwrap();
    let edges = dir.path().join("cut.txt");
    let status = cli(&[
        "--graph",
        graph.to_str().unwrap(),
        "--k",
        "2",
        "--budget",
        "1",
        "--method",
        "oracle",
        "--edges-out",
        edges.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert!(stdout
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("oracle,2,1,,,,,4,4,6,3,3,3.0,"));
    assert_eq!(fs::read_to_string(&edges).unwrap(), "30 40\n");
}

#[test]
fn errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 2\n3 x\n").unwrap();
    let missing = dir.path().join("missing.txt");
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "--generate",
            "ws",
            "--n",
            "50",
            "--budget",
            "1",
            "--method",
            "pagerank",
        ],
        vec!["--generate", "ws", "--n", "50", "--budget", "1000"],
        vec!["--generate", "ws", "--n", "50", "--budget", "2", "--k", "1"],
        vec!["--graph", bad.to_str().unwrap(), "--budget", "1"],
        vec!["--graph", missing.to_str().unwrap(), "--budget", "1"],
        vec!["--budget", "1"],
    ];
    for args in cases {
        let out = cli(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let parse = cli(&["--graph", bad.to_str().unwrap(), "--budget", "1"]);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 2"));
}
