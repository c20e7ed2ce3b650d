use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hypergreedy"));
    c.env_remove("HG_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hypergreedy")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut rows = vec![r.headers().unwrap().iter().map(str::to_string).collect()];
    rows.extend(r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()));
    rows
}

fn petersen_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/petersen.hg")
}

#[test]
fn theory_row_for_petersen_parameters() {
    let rows = csv_rows(&stdout(&["theory", "--d", "3", "--r", "1", "--g", "5"]));
    assert_eq!(rows[0].join(","), "d,r,g,u,f,epsilon,lower_per_n,caro_tuza,akpss,asymptotic");
    let row = &rows[1];
    assert_eq!(&row[..3], ["3", "1", "5"]);
    assert_eq!(row[3].parse::<f64>().unwrap(), 0.5);
    assert_eq!(row[4].parse::<f64>().unwrap(), 0.375);
    assert_eq!(row[5].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn theory_expands_parameter_lists() {
    let rows = csv_rows(&stdout(&["theory", "--d", "2,3,4", "--r", "1,2", "--g", "5,7"]));
    assert_eq!(rows.len(), 1 + 3 * 2 * 2);
    let single = csv_rows(&stdout(&["theory", "--d", "4", "--r", "2", "--g", "7"]));
    assert!(rows.contains(&single[1]));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let args = ["theory", "--d", "2,5", "--r", "1,3", "--g", "6"];
    let csv = csv_rows(&stdout(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: Value = serde_json::from_str(&stdout(&json_args)).unwrap();
    let objs = json.as_array().unwrap();
    assert_eq!(objs.len(), csv.len() - 1);
    for (row, obj) in csv[1..].iter().zip(objs) {
        for (h, cell) in csv[0].iter().zip(row) {
            let v = &obj[h];
            if cell.is_empty() {
                assert!(v.is_null(), "{h}");
            } else {
                assert_eq!(cell.parse::<f64>().unwrap(), v.as_f64().unwrap(), "{h}");
            }
        }
    }
}

#[test]
fn girth_of_petersen_file() {
    let path = petersen_file();
    let out = stdout(&["girth", "--input", path.to_str().unwrap()]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("girth 5"));
    let witness = lines.next().unwrap();
    assert!(witness.starts_with("witness "));
    assert_eq!(witness.split_whitespace().count(), 1 + 2 * 5);
}

#[test]
fn gen_then_girth_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.hg");
    let p = path.to_str().unwrap();
    stdout(&["gen", "--spec", "loosecycle:r=2,k=6", "--out", p]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("p hg 12 6")), "{text}");
    assert!(stdout(&["girth", "--input", p]).starts_with("girth 6\n"));
    assert!(stdout(&["girth", "--spec", "loosecycle:r=2,k=2"]).starts_with("girth 2\n"));
    assert_eq!(stdout(&["girth", "--spec", "tree:d=2,r=1,h=3,variant=tilde"]), "girth acyclic\n");
}

#[test]
fn oracle_paths() {
    assert_eq!(stdout(&["oracle", "--mode", "paths", "--r", "2", "--l", "2"]), "count 8, probability 1/15\n");
    assert_eq!(stdout(&["oracle", "--mode", "paths", "--r", "2", "--l", "1"]), "count 2, probability 1/3\n");
    let json: Value =
        serde_json::from_str(&stdout(&["oracle", "--mode", "paths", "--r", "2", "--l", "2", "--format", "json"])).unwrap();
    assert_eq!(json[0]["count"], 8);
    assert_eq!(json[0]["probability"]["numerator"], 1);
    assert_eq!(json[0]["probability"]["denominator"], 15);
}

#[test]
fn oracle_greedy_on_small_tree() {
    let csv = csv_rows(&stdout(&["oracle", "--mode", "greedy", "--spec", "tree:d=2,r=1,h=1,variant=full", "--format", "csv"]));
    assert_eq!(csv[1], ["0", "1/3"]);
    assert_eq!(csv.last().unwrap(), &["sum", "5/3"]);
}

#[test]
fn simulate_is_seeded_and_thread_independent() {
    let args = ["simulate", "--spec", "regular:r=1,d=3,n=60,g=5,seed=3", "--trials", "3000", "--seed", "11"];
    let a = stdout(&[&args[..], &["--threads", "1"]].concat());
    let b = stdout(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(a, b);
    let via_env = bin().args(args.iter().filter(|&&x| x != "--seed" && x != "11")).env("HG_SEED", "11").output().unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), a);
    let rows = csv_rows(&a);
    assert!(rows[0].join(",").starts_with("instance,n,d,r,girth,trials,seed,mean_per_n,stderr,var_per_n,f,epsilon,verdict"));
    assert_eq!(rows[1][6], "11");
}

#[test]
fn simulate_root_rate_of_small_tree() {
    let rows = csv_rows(&stdout(&["simulate", "--spec", "tree:d=2,r=1,h=1,variant=full", "--trials", "40000"]));
    let col = rows[0].iter().position(|h| h == "root_rate").unwrap();
    let rate: f64 = rows[1][col].parse().unwrap();
    assert!((rate - 1.0 / 3.0).abs() < 0.015, "{rate}");
    let lo: f64 = rows[1][col + 2].parse().unwrap();
    let hi: f64 = rows[1][col + 3].parse().unwrap();
    assert!(lo < rate && rate < hi);
}

#[test]
fn simulate_per_vertex_json() {
    let json: Value = serde_json::from_str(&stdout(&[
        "simulate", "--spec", "cycle:n=5", "--trials", "500", "--per-vertex", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json[0]["per_vertex_rate"].as_array().unwrap().len(), 5);
    assert_eq!(json[0]["d"], 2);
    assert!(["PASS", "FAIL", "VACUOUS"].contains(&json[0]["verdict"].as_str().unwrap()));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["theory", "--d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["theory", "--d", "3", "--r", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["girth", "--input", "a.hg", "--spec", "petersen"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--mode", "escape", "--spec", "petersen"]).status.code(), Some(2));

    let bad = run(&["theory", "--d", "1", "--r", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error"));
    assert_eq!(run(&["girth", "--input", "/definitely/missing.hg"]).status.code(), Some(1));
    assert_eq!(run(&["oracle", "--mode", "greedy", "--spec", "cycle:n=30"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "--spec", "tree:d=2"]).status.code(), Some(1));
}

#[test]
fn verify_single_criterion() {
    let out = stdout(&["verify", "--quick", "--only", "1,4"]);
    assert!(out.lines().next().unwrap().starts_with("PASS [ 1]"), "{out}");
    assert!(out.ends_with("2/2 passed\n"));
}

#[test]
fn recursion_log_converges() {
    let rows = csv_rows(&stdout(&["recursion", "--d", "2", "--r", "1", "--grid", "2000"]));
    let last = rows.last().unwrap();
    let f0: f64 = last[1].parse().unwrap();
    // 1 - F(0) should approach u(3, 1) = 1/2
    assert!((1.0 - f0 - 0.5).abs() < 1e-4);
    assert!(rows[1..].iter().all(|r| r[5] == "true"));
}
