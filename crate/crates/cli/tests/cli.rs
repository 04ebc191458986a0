//! End-to-end runs of the `partavoid` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partavoid")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_counts(o: &Output) -> Vec<u64> {
    stdout(o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
}

#[test]
fn count_motzkin_prefix() {
    let o = run(&["count", "--patterns", "1212,111", "--max-n", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut motzkin = vec![1u64, 1];
    for n in 2..=8u64 {
        let prev = motzkin[n as usize - 1];
        let rest: u64 = (0..=n - 2).map(|k| motzkin[k as usize] * motzkin[(n - 2 - k) as usize]).sum();
        motzkin.push(prev + rest);
    }
    assert_eq!(csv_counts(&o), motzkin);
}

#[test]
fn count_vanishes_and_bell() {
    let o = run(&["count", "--patterns", "123,1111", "--max-n", "8", "--format", "csv"]);
    let counts = csv_counts(&o);
    assert!(counts[1..7].iter().all(|&c| c > 0));
    assert_eq!(&counts[7..], &[0, 0]);

    let o = run(&["count", "--max-n", "6", "--format", "csv"]);
    let mut row = vec![1u64];
    let mut bell = vec![1u64];
    for _ in 0..6 {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        bell.push(next[0]);
        row = next;
    }
    assert_eq!(csv_counts(&o), bell);
}

#[test]
fn classify_against_fixtures() {
    let o = run(&["classify", "--family", "three_k", "--k", "4", "--fixture", "three-four"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("diff: none"));
    assert!(stdout(&o).contains("anchor:"));

    let o = run(&["classify", "--family", "nc_tau", "--size", "4", "--notion", "wilf", "--fixture", "nc-size4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_does_not_depend_on_workers() {
    let args = |w: &'static str| {
        ["classify", "--family", "nc_tau", "--size", "4", "--notion", "nc", "--max-n", "10", "--format", "json", "--workers", w]
    };
    let one = run(&args("1"));
    let three = run(&args("3"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 7);
    assert!(v["classes"][0]["first_separating_n_vs_next_class"].is_u64());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["classify", "--family", "three_k"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--family", "four_four", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--patterns", "1x3", "--max-n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--max-n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify-gf", "--entry", "no_such_entry"]).status.code(), Some(2));
    assert_eq!(run(&["bound-3k", "--k", "4", "--workers", "0"]).status.code(), Some(2));
}

#[test]
fn verify_gf_entries() {
    let o = run(&["verify-gf", "--entry", "tm1", "--order", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let oracles = v["entries"][0]["oracles"].as_array().unwrap();
    assert_eq!(oracles.len(), 2);
    assert!(!v["entries"][0]["anchor"].as_str().unwrap().is_empty());

    let o = run(&["verify-gf", "--entry", "nc_12321", "--order", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let exp: Vec<u64> = v["entries"][0]["expansion"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    for n in 1..=10u32 {
        assert_eq!(exp[n as usize], 3u64.pow(n - 1).div_ceil(2));
    }
}

#[test]
fn bound_search_and_bijections() {
    let o = run(&["bound-3k", "--k", "6", "--max-n", "14", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["observed"], 7);
    assert_eq!(v["bound"], 7);

    let o = run(&["search-simcomp", "--k", "8", "--max-n", "14"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("collisions: 0"));

    let o = run(&["bijections", "--max-n", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("partavoid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("counts.csv");
    let o = run(&["count", "--patterns", "122", "--max-n", "5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,count\n"));
    assert!(text.ends_with("5,16\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
