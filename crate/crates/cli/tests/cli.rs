//! End-to-end tests against the built binary: output bytes, files, and the
//! exit-code contract (0 success, 1 verification/mapping failure, 2 usage).

use std::path::Path;
use std::process::{Command, Output};

fn nimpos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nimpos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn seq_plain_output() {
    let out = nimpos(&["seq", "--family", "a", "--k", "3", "--to", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 1\n1 4\n2 7\n3 16\n4 19\n5 28\n6 43\n7 64\n");
}

#[test]
fn seq_capital_d_k5() {
    let out = nimpos(&["seq", "--family", "D", "--k", "5", "--to", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 1\n1 10\n2 15\n3 100\n4 65\n");
}

#[test]
fn seq_rejects_zero_piles() {
    let out = nimpos(&["seq", "--family", "a", "--k", "0", "--to", "3"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty(), "diagnostic belongs on stderr");
}

#[test]
fn seq_rejects_unknown_family() {
    let out = nimpos(&["seq", "--family", "q", "--k", "3", "--to", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn seq_jsonl_parses() {
    let out = nimpos(&["seq", "--family", "A", "--k", "4", "--to", "3", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    let values: Vec<String> = stdout(&out)
        .lines()
        .map(|line| {
            let v: serde_json::Value = serde_json::from_str(line).expect("valid json");
            v["value"].as_str().expect("value is a string").to_string()
        })
        .collect();
    assert_eq!(values, ["1", "7", "14", "50"]);
}

#[test]
fn oracle_subcommand_matches_seq() {
    let seq = nimpos(&["seq", "--family", "d", "--k", "4", "--to", "10"]);
    let oracle = nimpos(&["oracle", "--family", "d", "--k", "4", "--to", "10"]);
    assert_eq!(code(&oracle), 0);
    assert_eq!(seq.stdout, oracle.stdout);
}

#[test]
fn verify_passes_on_known_ranges() {
    let out = nimpos(&["verify", "--family", "A", "--k", "4", "--to", "13"]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let out = nimpos(&["verify", "--family", "d", "--k", "2", "--to", "10"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_guardrail_exits_2() {
    let out = nimpos(&["verify", "--family", "a", "--k", "12", "--to", "1000"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn map_position_to_cell() {
    let out = nimpos(&["map", "--position", "14,11,5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("cell 10,-3"));
    let segments: Vec<&str> = lines.collect();
    assert_eq!(
        segments,
        [
            "segment (1,1,0) length 8",
            "segment (1,0,1) length 4",
            "segment (1,1,0) length 2",
            "segment (0,1,1) length 1",
        ]
    );
}

#[test]
fn map_cell_to_position() {
    let out = nimpos(&["map", "--cell", "10,-3", "--gen", "15"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("position 14,11,5"));
}

#[test]
fn map_rejects_n_position() {
    let out = nimpos(&["map", "--position", "1,1,1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn map_rejects_dead_cell() {
    let out = nimpos(&["map", "--cell", "9,9", "--gen", "4"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn evolve_nim_records() {
    let out = nimpos(&["evolve", "--k", "4", "--to", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().last(), Some("4 13 63"));

    let out = nimpos(&["evolve", "--k", "3", "--to", "0"]);
    assert_eq!(stdout(&out), "0 1 1\n");
}

#[test]
fn evolve_grid_matches_nim3() {
    let grid = nimpos(&["evolve", "--grid", "--to", "9"]);
    let nim = nimpos(&["evolve", "--k", "3", "--to", "9"]);
    assert_eq!(code(&grid), 0);
    assert_eq!(grid.stdout, nim.stdout);
}

#[test]
fn bfile_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let strpath = path.to_str().unwrap();

    let out = nimpos(&["bfile", "--family", "d", "--k", "3", "--to", "16", "--out", strpath]);
    assert_eq!(code(&out), 0);
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("0 1\n1 3\n2 3\n3 9\n"));
    assert!(content.ends_with("15 45\n16 3\n"));
    assert_eq!(content.lines().count(), 17);

    // byte-exact reproducibility
    let again = dir.path().join("b2.txt");
    nimpos(&["bfile", "--family", "d", "--k", "3", "--to", "16", "--out", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn bfile_empty_range() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    let out = nimpos(&[
        "bfile", "--family", "A", "--k", "5", "--from", "5", "--to", "4",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), b"");
}

#[test]
fn bfile_unwritable_path_exits_2() {
    let out = nimpos(&[
        "bfile", "--family", "a", "--k", "3", "--to", "3",
        "--out", "/nonexistent-dir/b.txt",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let out = nimpos(&["render", "--to", "6", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap());
    let doc = String::from_utf8(bytes_a).unwrap();
    assert_eq!(doc.matches("<circle").count(), 37);
    assert_eq!(doc.matches("<line").count(), 36);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = nimpos(&["seq", "--family", "D", "--k", "4", "--to", "40"]);
    let b = nimpos(&["seq", "--family", "D", "--k", "4", "--to", "40"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn memo_cache_round_trip(){
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.bin");
    let cache_arg = cache.to_str().unwrap();

    let first = nimpos(&["seq", "--family", "A", "--k", "6", "--to", "50", "--memo-cache", cache_arg]);
    assert_eq!(code(&first), 0);
    assert!(cache.exists());

    let second = nimpos(&["seq", "--family", "A", "--k", "6", "--to", "50", "--memo-cache", cache_arg]);
    assert_eq!(code(&second), 0);
    assert_eq!(first.stdout, second.stdout);

    // the cache also feeds other commands
    let verify = nimpos(&["verify", "--family", "A", "--k", "6", "--to", "10", "--memo-cache", cache_arg]);
    assert_eq!(code(&verify), 0);
}

#[test]
fn corrupt_memo_cache_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.bin");
    std::fs::write(&cache, b"garbage").unwrap();
    let out = nimpos(&["seq", "--family", "a", "--k", "3", "--to", "3", "--memo-cache", cache.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn seq_out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a5.txt");
    let to_file = nimpos(&["seq", "--family", "a", "--k", "5", "--to", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&to_file), 0);
    let to_stdout = nimpos(&["seq", "--family", "a", "--k", "5", "--to", "8"]);
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
    assert!(Path::new(&path).exists());
}
