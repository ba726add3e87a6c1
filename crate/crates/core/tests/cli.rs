use std::fs;
use std::process::{Command, Output};

use cubepath::bench::CSV_HEADER;
use cubepath::cube_model::{ring8, write_curve};

fn cubepath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubepath"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_ring8() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ring8.txt");
    fs::write(&f, write_curve(&ring8())).unwrap();
    let o = cubepath(&["validate", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("8 cubes, 4 critical edges, 0 end angles\n"), "{out}");
    assert!(out.contains("first-class: unknown (requires solve)"));
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "cube 0 0 0\ncube 1 0 x\n").unwrap();
    let o = cubepath(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));

    let open = dir.path().join("open.txt");
    fs::write(&open, "cube 0 0 0\ncube 1 0 0\ncube 2 0 0\ncube 3 0 0\n").unwrap();
    let o = cubepath(&["validate", open.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not closed"));
}

#[test]
fn esp_and_oracle_on_ring8() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ring8.txt");
    fs::write(&f, write_curve(&ring8())).unwrap();
    let path = dir.path().join("path.txt");
    let o = cubepath(&[
        "esp",
        f.to_str().unwrap(),
        "--variant",
        "edge",
        "--epsilon",
        "1e-10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let line = stdout(&o);
    assert!(line.starts_with("length=4.0000000000000000e0 loops="), "{line}");
    assert!(line.contains(" time_ms="));
    let written = cubepath::rubberband::parse_path(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!((written.length - 4.0).abs() < 1e-9);

    let o = cubepath(&["esp", f.to_str().unwrap(), "--seed-oracle", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed_length=4.0"));

    let o = cubepath(&["esp", f.to_str().unwrap(), "--epsilon", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("epsilon must be > 0"));

    let graph = dir.path().join("graph.txt");
    let o = cubepath(&[
        "oracle",
        f.to_str().unwrap(),
        "--m",
        "2",
        "--dump-graph",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .lines()
        .last()
        .unwrap()
        .starts_with("length=4.0000000000000000e0"));
    assert!(fs::read_to_string(&graph)
        .unwrap()
        .lines()
        .any(|l| l.starts_with("arc ")));

    let o = cubepath(&["oracle", f.to_str().unwrap(), "--m", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bench_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    let o = cubepath(&["bench", "--per-size", "0", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&csv).unwrap(), format!("{CSV_HEADER}\n"));

    let csv = dir.path().join("small.csv");
    let svg = dir.path().join("small.svg");
    let o = cubepath(&[
        "bench",
        "--sizes",
        "10..50",
        "--step",
        "20",
        "--per-size",
        "2",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let recs = cubepath::bench::read_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(recs.len(), 6);
    assert!(fs::read_to_string(&svg).unwrap().contains("R²"));
    assert!(stderr(&o).contains("R^2"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(cubepath(&[]).status.code(), Some(1));
    assert_eq!(cubepath(&["esp"]).status.code(), Some(1));
    assert_eq!(cubepath(&["bench", "--sizes", "50..10"]).status.code(), Some(1));
    assert_eq!(cubepath(&["esp", "/nonexistent/curve.txt"]).status.code(), Some(1));
    assert_eq!(cubepath(&["--help"]).status.code(), Some(0));
}
