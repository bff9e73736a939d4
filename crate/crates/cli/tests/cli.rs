use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FIB7_SLP: &str = "SLP 7\n1 -> 'b'\n2 -> 'a'\n3 -> 2 1\n4 -> 3 2\n5 -> 4 3\n6 -> 5 4\n7 -> 6 5\n";

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slp-edit"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn kitten_sitting() {
    let dir = TempDir::new().unwrap();
    put(&dir, "a.txt", "kitten");
    put(&dir, "b.txt", "sitting");
    let out = run(&["distance", "a.txt", "b.txt", "--scoring", "lev"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3\n");
    let out = run(&["distance", "a.txt", "b.txt", "--algorithm", "baseline"], dir.path());
    assert_eq!(stdout(&out), "3\n");
}

#[test]
fn same_file_is_zero() {
    let dir = TempDir::new().unwrap();
    put(&dir, "a.txt", "abracadabra");
    let out = run(&["distance", "a.txt", "a.txt"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn expand_fibonacci_grammar() {
    let dir = TempDir::new().unwrap();
    put(&dir, "fib.slp", FIB7_SLP);
    let out = run(&["expand", "fib.slp"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "abaababaabaab");
}

#[test]
fn compress_round_trips_both_methods() {
    let dir = TempDir::new().unwrap();
    let text = "the cat sat on the mat\nthe cat sat on the hat\n\t'quoted' \\ é\n";
    put(&dir, "in.txt", text);
    for method in ["lz78", "balanced"] {
        let out = run(&["compress", "in.txt", "--method", method, "-o", "in.slp"], dir.path());
        assert_eq!(out.status.code(), Some(0), "{method}");
        let out = run(&["expand", "in.slp"], dir.path());
        assert_eq!(stdout(&out), text, "{method}");
    }
}

#[test]
fn ingestion_format_does_not_change_distance() {
    let dir = TempDir::new().unwrap();
    put(&dir, "a.txt", &"abaab".repeat(30));
    put(&dir, "b.txt", &"abbab".repeat(25));
    run(&["compress", "a.txt", "-o", "a.slp"], dir.path());
    run(
        &["compress", "b.txt", "--method", "balanced", "-o", "b.slp"],
        dir.path(),
    );
    let want = stdout(&run(
        &["distance", "a.txt", "b.txt", "--algorithm", "baseline"],
        dir.path(),
    ));
    for (a, b) in [
        ("a.txt", "b.txt"),
        ("a.slp", "b.txt"),
        ("a.txt", "b.slp"),
        ("a.slp", "b.slp"),
    ] {
        for x in [None, Some("3"), Some("17")] {
            let mut args = vec!["distance", a, b];
            if let Some(x) = x {
                args.extend(["--block-size", x]);
            }
            assert_eq!(stdout(&run(&args, dir.path())), want, "{a} {b} {x:?}");
        }
    }
}

#[test]
fn scoring_file_and_stats() {
    let dir = TempDir::new().unwrap();
    put(&dir, "a.txt", "ab");
    put(&dir, "b.txt", "ba");
    put(
        &dir,
        "cost.tsv",
        "ALPHABET\tab\nDEL\ta\t1.5\nDEL\tb\t1\nINS\ta\t1\nINS\tb\t2\nSUB\ta\tb\t4\nSUB\tb\ta\t4\n",
    );
    let out = run(
        &[
            "distance",
            "a.txt",
            "b.txt",
            "--scoring",
            "cost.tsv",
            "--stats",
            "run.stats",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // delete a, insert a at the end: 1.5 + 1
    assert_eq!(stdout(&out), "2.5\n");
    let stats = fs::read_to_string(dir.path().join("run.stats")).unwrap();
    for key in ["N_A=2", "N_B=2", "x=", "boundary_cells_propagated=", "total_work="] {
        assert!(stats.lines().any(|l| l.starts_with(key)), "{key} missing from\n{stats}");
    }
}

#[test]
fn input_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    put(&dir, "a.txt", "abc");
    put(&dir, "bad.slp", "SLP 2\n1 -> 'a'\n2 -> 1 3\n");
    put(&dir, "lev.tsv", "ALPHABET\tab\n");
    for args in [
        vec!["distance", "a.txt", "missing.txt"],
        vec!["expand", "bad.slp"],
        vec!["distance", "a.txt", "bad.slp"],
        vec!["distance", "a.txt", "a.txt", "--scoring", "lev.tsv"],
        vec!["distance", "a.txt", "a.txt", "--block-size", "1"],
        vec!["nonsense"],
    ] {
        let out = run(&args, dir.path());
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn selftest_passes() {
    let dir = TempDir::new().unwrap();
    let out = run(&["selftest", "--cases", "12"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agree"));
}

#[test]
fn bench_prints_trend() {
    let dir = TempDir::new().unwrap();
    let out = run(&["bench", "--max-exp", "9"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 3);
}
