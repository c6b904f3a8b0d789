//! End-to-end tests driving the compiled binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xbc"))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn temp_edges(lines: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(lines.as_bytes()).expect("write temp");
    f.flush().expect("flush temp");
    f
}

#[test]
fn compute_betweenness_prints_every_vertex() {
    let p3 = temp_edges("0 1\n1 2\n");
    let out = run(&["compute", "--graph", &p3.path().display().to_string(), "--measure", "b"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0: 0\n1: 2\n2: 0\n");
}

#[test]
fn compute_set_measures_and_unordered_halving() {
    let fixture = data("figure1.edges");
    let out = run(&["compute", "--graph", &fixture, "--measure", "xb", "--set", "2,6,7"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2-6-7: 32\n");

    let halved = run(&[
        "compute", "--graph", &fixture, "--measure", "xb", "--set", "2,6,7", "--unordered",
    ]);
    assert_eq!(stdout(&halved), "2-6-7: 16\n");

    let gb = run(&["compute", "--graph", &fixture, "--measure", "gb", "--set", "2,6,7"]);
    assert_eq!(stdout(&gb), "2-6-7: 36\n");
    let cb = run(&["compute", "--graph", &fixture, "--measure", "cb", "--set", "2,6,7"]);
    assert_eq!(stdout(&cb), "2-6-7: 0\n");
}

#[test]
fn group_betweenness_of_singleton_matches_betweenness() {
    let karate = data("karate.edges");
    let gb = run(&["compute", "--graph", &karate, "--measure", "gb", "--set", "33"]);
    assert!(gb.status.success());
    let gb_value: u64 = stdout(&gb)
        .trim()
        .split(": ")
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();

    let b = run(&["compute", "--graph", &karate, "--measure", "b"]);
    let b_value: u64 = stdout(&b)
        .lines()
        .find(|l| l.starts_with("33: "))
        .unwrap()
        .split(": ")
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(gb_value, b_value);
}

#[test]
fn methods_agree_on_every_invocation() {
    let karate = data("karate.edges");
    for measure in ["xb", "gb"] {
        let ie = run(&[
            "compute", "--graph", &karate, "--measure", measure, "--set", "0,33,2", "--method",
            "ie",
        ]);
        let direct = run(&[
            "compute", "--graph", &karate, "--measure", measure, "--set", "0,33,2", "--method",
            "direct",
        ]);
        assert!(ie.status.success() && direct.status.success());
        assert_eq!(stdout(&ie), stdout(&direct), "measure {measure}");
    }
}

#[test]
fn estimate_is_deterministic_and_labeled() {
    let karate = data("karate.edges");
    let args = [
        "estimate", "--graph", &karate, "--set", "0,33", "--sampler", "pair", "--samples",
        "20000", "--seed", "42",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second), "same seed, same bytes");
    let text = stdout(&first);
    assert!(text.contains("set: 0-33\n"));
    assert!(text.contains("sampler: pair\n"));
    assert!(text.contains("samples: 20000\n"));
    assert!(text.contains("seed: 42\n"));
}

#[test]
fn estimate_single_draw_on_tiny_path() {
    let p3 = temp_edges("0 1\n1 2\n");
    let path = p3.path().display().to_string();
    for sampler in ["source", "pair", "path", "general"] {
        let out = run(&[
            "estimate", "--graph", &path, "--set", "1", "--sampler", sampler, "--samples", "1",
        ]);
        assert!(out.status.success(), "sampler {sampler}");
        let text = stdout(&out);
        assert!(text.contains("mean: 2\n"), "sampler {sampler}: {text}");
        assert!(text.contains("variance: 0\n"), "sampler {sampler}: {text}");
        assert!(text.contains("seed: 0\n"), "default seed is the constant 0");
    }
}

#[test]
fn estimate_unordered_presentation() {
    let p3 = temp_edges("0 1\n1 2\n");
    let out = run(&[
        "estimate",
        "--graph",
        &p3.path().display().to_string(),
        "--set",
        "1",
        "--sampler",
        "source",
        "--samples",
        "5",
        "--unordered",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("convention: unordered\n"));
    assert!(text.contains("mean: 1\n"), "{text}");
}

#[test]
fn correlate_karate_shape_and_csv() {
    let karate = data("karate.edges");
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("pairs.csv");
    let out = run(&[
        "correlate",
        "--graph",
        &karate,
        "--out",
        &csv_path.display().to_string(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sets: 561\n"));
    for line in text.lines().skip(1) {
        let value: f64 = line.split(": ").nth(1).unwrap().parse().unwrap();
        assert!((-1.0..=1.0).contains(&value), "{line}");
    }

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let comments: Vec<&str> = csv.lines().filter(|l| l.starts_with('#')).collect();
    assert!(comments.iter().any(|l| l.starts_with("# tool: xbc ")));
    assert!(comments.iter().any(|l| l.starts_with("# graph: ")));
    assert!(comments.iter().any(|l| *l == "# convention: ordered"));
    assert!(comments.iter().any(|l| l.starts_with("# pearson_xb_gb: ")));
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "set,xb,gb,cb");
    assert_eq!(rows.len(), 1 + 561);
}

#[test]
fn correlate_csv_rows_round_trip_through_compute() {
    let karate = data("karate.edges");
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("pairs.csv");
    let out = run(&[
        "correlate",
        "--graph",
        &karate,
        "--out",
        &csv_path.display().to_string(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let rows: Vec<&str> = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("set,"))
        .collect();
    // Spot-check rows spread across the file against fresh computations.
    for &row in [rows[0], rows[280], rows[560]].iter() {
        let mut cols = row.split(',');
        let label = cols.next().unwrap();
        let set = label.replace('-', ",");
        let expect_xb = cols.next().unwrap();
        let expect_gb = cols.next().unwrap();
        let expect_cb = cols.next().unwrap();
        for (measure, expected) in [("xb", expect_xb), ("gb", expect_gb), ("cb", expect_cb)] {
            let out = run(&["compute", "--graph", &karate, "--measure", measure, "--set", &set]);
            assert_eq!(stdout(&out), format!("{label}: {expected}\n"));
        }
    }
}

#[test]
fn bench_emits_requested_shape() {
    let fixture = data("figure1.edges");
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let out = run(&[
        "bench",
        "--graph",
        &fixture,
        "--sizes",
        "2..3",
        "--trials",
        "4",
        "--out",
        &csv_path.display().to_string(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("cache build: "));
    assert!(text.contains("k=2: trials 4, median "));
    assert!(text.contains("k=3: trials 4, median "));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.lines().any(|l| l == "k,trials,max_seconds,median_seconds"));
    assert!(csv.lines().any(|l| l.starts_with("# seed: 0")));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 1 + 2);
}

#[test]
fn compute_csv_report() {
    let fixture = data("figure1.edges");
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("set.csv");
    let out = run(&[
        "compute",
        "--graph",
        &fixture,
        "--measure",
        "xb",
        "--set",
        "2,6,7",
        "--out",
        &csv_path.display().to_string(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, vec!["set,xb,gb,cb", "2-6-7,32,36,0"]);
}

#[test]
fn usage_errors_exit_one() {
    let karate = data("karate.edges");
    let cases: Vec<Vec<&str>> = vec![
        vec!["compute", "--graph", &karate, "--measure", "b", "--set", "1"],
        vec!["compute", "--graph", &karate, "--measure", "b", "--method", "ie"],
        vec!["compute", "--graph", &karate, "--measure", "xb"],
        vec!["compute", "--graph", &karate, "--measure", "cb", "--set", "1,2", "--method", "ie"],
        vec!["compute", "--graph", &karate, "--measure", "xb", "--set", "99"],
        vec!["estimate", "--graph", &karate, "--set", "0,33", "--sampler", "pair", "--samples", "0"],
        vec!["bench", "--graph", &karate, "--sizes", "five"],
        vec!["bench", "--graph", &karate, "--sizes", "2..3", "--trials", "0"],
        vec!["compute", "--graph", &karate, "--measure", "nope", "--set", "1"],
        vec!["nonsense"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn data_errors_exit_two() {
    let missing = run(&["compute", "--graph", "/no/such/file", "--measure", "b"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("/no/such/file"));

    let garbled = temp_edges("0 1\nnot numbers\n");
    let parse = run(&[
        "compute", "--graph", &garbled.path().display().to_string(), "--measure", "b",
    ]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(stderr(&parse).contains("line 2"), "{}", stderr(&parse));

    let split = temp_edges("0 1\n2 3\n");
    let disconnected = run(&[
        "compute", "--graph", &split.path().display().to_string(), "--measure", "b",
    ]);
    assert_eq!(disconnected.status.code(), Some(2));
}

#[test]
fn allow_disconnected_takes_largest_component() {
    // Component {0,1,2} (a path) beats component {8,9}.
    let split = temp_edges("0 1\n1 2\n8 9\n");
    let out = run(&[
        "compute",
        "--graph",
        &split.path().display().to_string(),
        "--measure",
        "b",
        "--allow-disconnected",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0: 0\n1: 2\n2: 0\n");
}

#[test]
fn guard_and_overflow_exit_three() {
    let karate = data("karate.edges");
    let big_set = run(&[
        "compute",
        "--graph",
        &karate,
        "--measure",
        "xb",
        "--set",
        "0,1,2,3,4,5,6,7,8,9,10,11,12",
        "--method",
        "ie",
    ]);
    assert_eq!(big_set.status.code(), Some(3), "{}", stderr(&big_set));

    let too_many_sets = run(&["correlate", "--graph", &karate, "--size", "20"]);
    assert_eq!(too_many_sets.status.code(), Some(3));
}

#[test]
fn help_and_version_exit_zero() {
    let help = run(&["--help"]);
    assert!(help.status.success());
    for sub in ["compute", "estimate", "correlate", "bench"] {
        assert!(stdout(&help).contains(sub));
    }
    let version = run(&["--version"]);
    assert!(version.status.success());
    assert!(stdout(&version).starts_with("xbc "));
}
