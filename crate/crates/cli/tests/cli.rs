use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn edgemin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgemin")).args(args).output().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn minimize_json_golden() {
    let out = edgemin(&["minimize", path_str(&golden("example.txt")), "--json"]);
    assert!(out.status.success());
    assert_eq!(out.stdout, fs::read(golden("minimize.json")).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["k_star"], 2);
    assert_eq!(v["m_star"], 7);
}

#[test]
fn minimize_text_golden() {
    let out = edgemin(&["minimize", path_str(&golden("example.txt"))]);
    assert!(out.status.success());
    assert_eq!(out.stdout, fs::read(golden("minimize.txt")).unwrap());
}

#[test]
fn minimize_without_early_termination_agrees() {
    let a = edgemin(&["minimize", path_str(&golden("example.txt")), "--json"]);
    let b = edgemin(&["minimize", path_str(&golden("example.txt")), "--json", "--no-early-term"]);
    let a: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    for key in ["n", "k_star", "m_star", "nodes"] {
        assert_eq!(a[key], b[key], "{key}");
    }
}

#[test]
fn analyze_golden() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("m.tsv");
    let out = edgemin(&["analyze", path_str(&golden("example.txt")), "--out", path_str(&tsv)]);
    assert!(out.status.success());
    assert_eq!(fs::read(&tsv).unwrap(), fs::read(golden("analyze.tsv")).unwrap());

    let out = edgemin(&["analyze", path_str(&golden("example.txt")), "--max-k", "3"]);
    let rows = String::from_utf8(out.stdout).unwrap();
    assert_eq!(rows.lines().count(), 4);
    assert!(rows.lines().any(|l| l == "2\t7\t6"));
}

#[test]
fn tunnel_golden_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let tbwt = dir.path().join("ex.tbwt");
    let back = dir.path().join("ex.out");
    assert!(edgemin(&["tunnel", path_str(&golden("example.txt")), "--out", path_str(&tbwt)]).status.success());
    assert_eq!(fs::read(&tbwt).unwrap(), fs::read(golden("example.tbwt")).unwrap());
    assert!(edgemin(&["untunnel", path_str(&tbwt), "--out", path_str(&back)]).status.success());
    assert_eq!(fs::read(&back).unwrap(), fs::read(golden("example.txt")).unwrap());
}

#[test]
fn empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty");
    fs::write(&p, b"").unwrap();
    let out = edgemin(&["minimize", path_str(&p), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((v["k_star"].as_u64(), v["m_star"].as_u64()), (Some(1), Some(1)));
    let tbwt = dir.path().join("e.tbwt");
    let back = dir.path().join("e.out");
    assert!(edgemin(&["tunnel", path_str(&p), "--out", path_str(&tbwt)]).status.success());
    assert!(edgemin(&["untunnel", path_str(&tbwt), "--out", path_str(&back)]).status.success());
    assert_eq!(fs::read(&back).unwrap(), b"");
}

#[test]
fn exit_codes() {
    assert_eq!(edgemin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(edgemin(&["minimize"]).status.code(), Some(1));
    assert_eq!(edgemin(&["--help"]).status.code(), Some(0));
    assert_eq!(edgemin(&["minimize", "/no/such/file"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let nul = dir.path().join("nul");
    fs::write(&nul, b"AB\0CD").unwrap();
    assert_eq!(edgemin(&["minimize", path_str(&nul)]).status.code(), Some(2));
    assert_eq!(edgemin(&["minimize", path_str(&nul), "--strip-nul"]).status.code(), Some(0));
    assert_eq!(
        edgemin(&["analyze", path_str(&golden("example.txt")), "--max-k", "9"]).status.code(),
        Some(2)
    );

    let bad = dir.path().join("bad.tbwt");
    let mut data = fs::read(golden("example.tbwt")).unwrap();
    data.truncate(data.len() - 3);
    fs::write(&bad, &data).unwrap();
    let out = edgemin(&["untunnel", path_str(&bad), "--out", path_str(&dir.path().join("x"))]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncated"));
}

#[test]
fn bench_rows_are_sorted_and_errors_continue() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    fs::create_dir(&data).unwrap();
    fs::write(data.join("b_repeat"), b"abcab".repeat(200)).unwrap();
    fs::write(data.join("a_example"), b"AGTGGTGG").unwrap();
    fs::create_dir(data.join("c_subdir")).unwrap();
    let out_path = dir.path().join("bench.tsv");
    let out = edgemin(&["bench", path_str(&data), "--out", path_str(&out_path)]);
    assert!(out.status.success());
    let tsv = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("file\tinput_length\tk_star\tm_star\tedge_ratio"));
    let ex: Vec<&str> = lines[1].split('\t').collect();
    assert_eq!(&ex[..4], &["a_example", "9", "2", "7"]);
    assert_eq!(ex.len(), lines[0].split('\t').count());
    let rep: Vec<&str> = lines[2].split('\t').collect();
    assert_eq!(rep[0], "b_repeat");
    let ratio: f64 = rep[4].parse().unwrap();
    assert!(ratio > 0.0 && ratio < 0.4, "{ratio}");
}
