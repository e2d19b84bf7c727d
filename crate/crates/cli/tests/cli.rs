use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn deltaplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltaplus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn tau_prints_ddf_and_point_values() {
    let dir = TempDir::new().unwrap();
    let eps1 = write(&dir, "eps1.ddf", "DDF v1\njump 1 1\n");
    let e = eps1.to_str().unwrap();
    let base = [
        "tau", "--tnorm", "M", "--conorm", "plus", "--f", e, "--g", e,
    ];

    let o = deltaplus(&base);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "DDF v1\njump 2 1\n");

    let o = deltaplus(&[&base[..], &["--at", "2"]].concat());
    assert_eq!(stdout(&o), "regularized 0  raw 0\n");
    let o = deltaplus(&[&base[..], &["--at", "5/2"]].concat());
    assert_eq!(stdout(&o), "regularized 1  raw 1\n");

    let o = deltaplus(&[&base[..], &["--emit-points"]].concat());
    assert_eq!(stdout(&o), "0 0\n2 0\n3 1\n");
}

#[test]
fn tau_raw_differs_on_a_plateau() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.ddf", "DDF v1\njump 3/2 1\n");
    let g = write(&dir, "g.ddf", "DDF v1\n# comment\njump 9/5 1\n");
    let o = deltaplus(&[
        "tau",
        "--tnorm",
        "M",
        "--conorm",
        "osum_trunc:2",
        "--f",
        f.to_str().unwrap(),
        "--g",
        g.to_str().unwrap(),
        "--at",
        "2",
    ]);
    assert_eq!(stdout(&o), "regularized 0  raw 1\n");
}

#[test]
fn missing_and_malformed_files_name_the_path() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.ddf");
    let bad = write(&dir, "bad.ddf", "DDF v1\njump 2 1/2\njump 1 1\n");
    let good = write(&dir, "good.ddf", "DDF v1\n");
    for (f, needle) in [(&missing, "nope.ddf"), (&bad, "bad.ddf")] {
        let o = deltaplus(&[
            "tau",
            "--tnorm",
            "M",
            "--conorm",
            "plus",
            "--f",
            f.to_str().unwrap(),
            "--g",
            good.to_str().unwrap(),
        ]);
        assert_ne!(o.status.code(), Some(0));
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{err}");
    }
    let err = String::from_utf8_lossy(
        &deltaplus(&[
            "tau",
            "--tnorm",
            "M",
            "--conorm",
            "plus",
            "--f",
            bad.to_str().unwrap(),
            "--g",
            good.to_str().unwrap(),
        ])
        .stderr,
    )
    .into_owned();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn classify_exit_codes() {
    let o = deltaplus(&["classify", "--tnorm", "D", "--conorm", "plus"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("D with plus: Triangle"));

    let o = deltaplus(&["classify", "--tnorm", "D", "--conorm", "max"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NotTriangle [c_left_when_nonarchimedean]"));

    let o = deltaplus(&[
        "--output",
        "records",
        "classify",
        "--tnorm",
        "M",
        "--conorm",
        "osum_trunc:2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("governing=a_LCS "));

    let o = deltaplus(&["classify", "--tnorm", "Q", "--conorm", "plus"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn check_and_mine_exit_codes() {
    let o = deltaplus(&[
        "check",
        "--tnorm",
        "W",
        "--conorm",
        "plus",
        "--law",
        "associativity",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = deltaplus(&[
        "check",
        "--tnorm",
        "W",
        "--conorm",
        "plus",
        "--law",
        "nosuchlaw",
    ]);
    assert_eq!(o.status.code(), Some(64));

    let args = [
        "--output", "records", "mine", "--tnorm", "nM_hat", "--conorm", "plus", "--budget", "5000",
        "--seed", "42",
    ];
    let o = deltaplus(&args);
    assert_eq!(o.status.code(), Some(2));
    let record = stdout(&o);
    assert!(record.contains("verdict=fail") && record.contains("seed=42"));
    // Byte-identical on replay.
    assert_eq!(stdout(&deltaplus(&args)), record);

    let dir = TempDir::new().unwrap();
    let path = write(&dir, "witness.rec", &record);
    let o = deltaplus(&["replay", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = deltaplus(&[
        "mine", "--tnorm", "nM", "--conorm", "max", "--budget", "300",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn catalog_lists_both_families() {
    let o = deltaplus(&["--output", "records", "catalog", "--budget", "300"]);
    let out = stdout(&o);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("kind=tnorm ")).count(),
        6
    );
    assert_eq!(
        out.lines()
            .filter(|l| l.starts_with("kind=tconorm "))
            .count(),
        6
    );
    assert!(out.contains("kind=tnorm name=nM_hat t_norm=yes weakly_left_continuous=no"));
    assert!(out.contains("name=nilpotent_rat t_conorm=yes continuous=yes LCS=yes LS=no"));
    assert!(
        !out.contains('!'),
        "a checker contradicts a declared flag:\n{out}"
    );
}
