use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmc")).args(args).output().expect("spawn qmc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn majority_of_three_from_bits_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("maj.bits");
    // points 0..7, x1 least significant: ones at 3, 5, 6, 7
    fs::write(&file, "00010111\n").unwrap();
    let out = qmc(&["primes", "--input", path_str(&file)]);
    assert!(out.status.success(), "{:?}", out);
    assert_eq!(stdout(&out), "*11\n1*1\n11*\n");

    let sparse = qmc(&["primes", "--input", path_str(&file), "--algo", "sparse"]);
    assert_eq!(sparse.stdout, out.stdout);
    let dashed = qmc(&["primes", "--input", path_str(&file), "--wildcard-char", "-"]);
    assert_eq!(stdout(&dashed), "-11\n1-1\n11-\n");
}

#[test]
fn empty_support_prints_nothing() {
    let out = qmc(&["primes", "--n", "5", "--density", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn dense_and_sparse_output_is_byte_identical() {
    for (n, d) in [("9", "0.4"), ("12", "0.8")] {
        let a = qmc(&["primes", "--n", n, "--density", d, "--seed", "7"]);
        let b = qmc(&["primes", "--n", n, "--density", d, "--seed", "7", "--algo", "sparse"]);
        assert!(a.status.success() && b.status.success());
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn output_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("out.txt");
    let out = qmc(&["primes", "--n", "4", "--density", "1", "--output", path_str(&file)]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&file).unwrap(), "****\n");
}

#[test]
fn verify_against_oracle_and_across_engines() {
    let out = qmc(&["verify", "--algo", "dense,oracle", "--n", "8", "--density", "0.5", "--count", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().filter(|l| l.ends_with(" ok")).count(), 5);

    for n in [4, 7, 10, 14] {
        let n = n.to_string();
        let out = qmc(&["verify", "--n", &n, "--density", "0.6", "--count", "12", "--seed", "100"]);
        assert_eq!(out.status.code(), Some(0), "n={n}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn injected_fault_is_reported() {
    let out = qmc(&["verify", "--n", "6", "--density", "0.5", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("mismatch"), "{err}");
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn gen_constant_one() {
    let out = qmc(&["gen", "--n", "4", "--density", "1.0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1".repeat(16));
}

#[test]
fn gen_is_deterministic_across_runs() {
    let args = ["gen", "--n", "12", "--density", "0.3", "--seed", "42", "--format", "hex"];
    let a = qmc(&args);
    let b = qmc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, qmc(&["gen", "--n", "12", "--density", "0.3", "--seed", "43", "--format", "hex"]).stdout);
}

#[test]
fn bench_emits_one_record() {
    let out = qmc(&["bench", "--n", "8", "--density", "0.5", "--algo", "sparse"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    for key in ["\"engine\":\"sparse\"", "\"n\":8", "\"seconds\"", "\"peak_bytes\"", "\"prime_count\""] {
        assert!(lines[0].contains(key), "{key} missing from {}", lines[0]);
    }
    let range = qmc(&["bench", "--n", "5..7", "--density", "0.2,0.8"]);
    assert_eq!(stdout(&range).lines().count(), 6);
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(qmc(&["primes"]).status.code(), Some(1));
    assert_eq!(qmc(&["primes", "--bogus"]).status.code(), Some(1));
    assert_eq!(qmc(&["primes", "--n", "4", "--density", "1.5"]).status.code(), Some(1));
    assert_eq!(qmc(&["primes", "--n", "4", "--density", "0.5", "--wildcard-char", "x"]).status.code(), Some(1));
    assert_eq!(qmc(&["--help"]).status.code(), Some(0));

    // malformed input file
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bits");
    fs::write(&bad, "0120\n").unwrap();
    let out = qmc(&["primes", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let both = qmc(&["primes", "--input", path_str(&bad), "--density", "0.5"]);
    assert_eq!(both.status.code(), Some(1));

    // resource limits
    let capped = qmc(&["primes", "--n", "12", "--density", "0.5", "--mem-cap", "1K"]);
    assert_eq!(capped.status.code(), Some(2));
    let oracle = qmc(&["primes", "--n", "13", "--density", "0.5", "--algo", "oracle"]);
    assert_eq!(oracle.status.code(), Some(2));
}

#[test]
fn declared_n_is_checked_against_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.bits");
    fs::write(&file, "0110").unwrap();
    assert!(qmc(&["primes", "--input", path_str(&file), "--n", "2"]).status.success());
    assert_eq!(qmc(&["primes", "--input", path_str(&file), "--n", "3"]).status.code(), Some(1));
}

#[test]
fn format_flag_overrides_extension() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.txt");
    fs::write(&file, ".i 3\n3\n5\n6\n7\n").unwrap();
    assert_eq!(qmc(&["primes", "--input", path_str(&file)]).status.code(), Some(1));
    let out = qmc(&["primes", "--input", path_str(&file), "--format", "minterms"]);
    assert_eq!(stdout(&out), "*11\n1*1\n11*\n");
}
