use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ogq(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ogq"))
        .args(args)
        .env("OGQ_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr)
        .unwrap_or_else(|_| panic!("stderr is not json: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn gw_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = ogq(
        dir.path(),
        &[
            "gw",
            "--n",
            "2",
            "--g",
            "0",
            "--d",
            "1",
            "--insertions",
            "1;1;1",
        ],
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1");
    let o = ogq(
        dir.path(),
        &[
            "gw",
            "--n",
            "3",
            "--g",
            "0",
            "--d",
            "0",
            "--insertions",
            "1",
        ],
    );
    assert_eq!(stdout(&o), "0");
    let o = ogq(
        dir.path(),
        &[
            "--format",
            "json",
            "gw",
            "--n",
            "3",
            "--g",
            "2",
            "--d",
            "2",
            "--insertions",
            "2,1;2",
            "--trace",
        ],
    );
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["trace"]["agree"], true);
    assert_eq!(v["value"], v["trace"]["value"]);
}

#[test]
fn gw_matches_the_rank_four_count() {
    // N(3, 4, 0) = 2^3 · Ñ(1; 0) and Ñ(1; 0) = <>_{3,1} / 4 at n = 2.
    let dir = tempfile::tempdir().unwrap();
    let gw: u64 = stdout(&ogq(
        dir.path(),
        &["gw", "--n", "2", "--g", "3", "--d", "1", "--insertions", ""],
    ))
    .parse()
    .unwrap();
    let o = ogq(
        dir.path(),
        &[
            "--format", "json", "count", "--g", "3", "--rank", "4", "--ell", "0",
        ],
    );
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let n: u64 = v["N"].as_str().unwrap().parse().unwrap();
    assert_eq!(n, 2 * gw);
}

#[test]
fn gw_bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = ogq(
        dir.path(),
        &[
            "gw",
            "--n",
            "3",
            "--g",
            "0",
            "--d",
            "0",
            "--insertions",
            "3",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "InvalidPartition");
    let o = ogq(
        dir.path(),
        &[
            "gw",
            "--n",
            "3",
            "--g",
            "0",
            "--d",
            "0",
            "--insertions",
            "1,x",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "Parse");
    let o = ogq(dir.path(), &["gw", "--n", "3", "--g", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn count_examples_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for (args, want) in [
        (["3", "4", "0"], "16"),
        (["5", "5", "0"], "1024"),
        (["6", "6", "1"], "4096"),
    ] {
        let o = ogq(
            dir.path(),
            &[
                "--format", "json", "count", "--g", args[0], "--rank", args[1], "--ell", args[2],
            ],
        );
        assert!(o.status.success());
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["N"], want);
        assert_eq!(v["schema"], "ogq-count/1");
    }
    let o = ogq(
        dir.path(),
        &[
            "--format", "json", "count", "--g", "4", "--rank", "6", "--ell", "0",
        ],
    );
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], Value::Null);
    assert_eq!(stderr_json(&o)["error"], "NotApplicable");
    let o = ogq(
        dir.path(),
        &["count", "--g", "2", "--rank", "3", "--ell", "0"],
    );
    assert_eq!(o.status.code(), Some(3));
    let err = stderr_json(&o);
    assert_eq!(err["error"], "NotCovered");
    assert!(err["diagnostic"]
        .as_str()
        .unwrap()
        .contains("N(g,3,0,1-g) = 2^g"));
    assert!(!stdout(&o).contains("N ="));
    let o = ogq(
        dir.path(),
        &["count", "--g", "3", "--rank", "2", "--ell", "0"],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn float_mode_reports_both_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let o = ogq(
        dir.path(),
        &[
            "--mode", "float", "--format", "json", "count", "--g", "9", "--rank", "6", "--ell", "0",
        ],
    );
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], "524288");
    assert_eq!(v["float"]["nearest"], "524288");
    let o = ogq(
        dir.path(),
        &[
            "--mode",
            "float",
            "gw",
            "--n",
            "2",
            "--g",
            "0",
            "--d",
            "1",
            "--insertions",
            "1;1;1",
        ],
    );
    assert_eq!(stdout(&o), "1");
}

#[test]
fn qmul_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (n, a, b, want) in [
        ("2", "1", "1", "q*t[]"),
        ("3", "", "2,1", "t[2,1]"),
        ("3", "1", "2,1", "q*t[]"),
        ("2", "t[1] + 2*t[]", "1", "q*t[] + 2*t[1]"),
    ] {
        let o = ogq(dir.path(), &["qmul", "--n", n, "--a", a, "--b", b]);
        assert!(
            o.status.success(),
            "{a} * {b}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert_eq!(stdout(&o), want);
    }
    let o = ogq(dir.path(), &["qmul", "--n", "3", "--a", "3", "--b", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn table_is_cached_byte_stable_and_guards_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let o = ogq(dir.path(), &["--format", "json", "table", "--n", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "written");
    let path = v["path"].as_str().unwrap().to_string();
    let first = fs::read(&path).unwrap();
    let doc: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(doc["schema"], "ogq-table/1");
    let nonzero: Vec<_> = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["c"] != "0")
        .collect();
    assert_eq!(nonzero.len(), doc["entries"].as_array().unwrap().len());

    let o = ogq(dir.path(), &["--format", "json", "table", "--n", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "unchanged");
    assert_eq!(fs::read(&path).unwrap(), first);

    let stale = String::from_utf8(first.clone())
        .unwrap()
        .replace("ogq-table/1", "ogq-table/0");
    fs::write(&path, stale).unwrap();
    let o = ogq(dir.path(), &["--format", "json", "table", "--n", "2"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("StaleCache"));
    assert_eq!(fs::read(&path).unwrap(), first);

    let o = ogq(
        dir.path(),
        &["--format", "json", "table", "--n", "4", "--max-d", "2"],
    );
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let doc: Value =
        serde_json::from_str(&fs::read_to_string(v["path"].as_str().unwrap()).unwrap()).unwrap();
    for e in doc["entries"].as_array().unwrap() {
        assert!(e["c"].as_str().unwrap().parse::<u64>().is_ok());
        assert!(e["d"].as_u64().unwrap() <= 2);
    }
}

#[test]
fn cache_dir_flag_beats_the_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = ogq(
        env_dir.path(),
        &[
            "--cache-dir",
            flag_dir.path().to_str().unwrap(),
            "table",
            "--n",
            "2",
        ],
    );
    assert!(o.status.success());
    assert_eq!(fs::read_dir(flag_dir.path()).unwrap().count(), 1);
    assert_eq!(fs::read_dir(env_dir.path()).unwrap().count(), 0);
}

#[test]
fn unwritable_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let o = ogq(&blocker.join("sub"), &["table", "--n", "2"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stderr_json(&o)["error"], "Io");
}

#[test]
fn ntilde_runs_and_explains_degree_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    // At n = 2, g = 3, e = -2: the trivial-bundle number is <>_{3,1} = 8.
    let o = ogq(
        dir.path(),
        &[
            "ntilde", "--g", "3", "--n", "2", "--ell", "0", "--e", "-2", "--Q", "1",
        ],
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "8");
    let o = ogq(
        dir.path(),
        &[
            "ntilde", "--g", "2", "--n", "3", "--ell", "0", "--e", "-2", "--Q", "1",
        ],
    );
    assert!(stdout(&o).contains("expected"));
    let o = ogq(
        dir.path(),
        &[
            "ntilde", "--g", "2", "--n", "3", "--ell", "0", "--e", "-2", "--Q", "a1^",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["duality", "counts", "recursion"] {
        let o = ogq(dir.path(), &["verify", "--suite", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    }
    let o = ogq(dir.path(), &["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}
