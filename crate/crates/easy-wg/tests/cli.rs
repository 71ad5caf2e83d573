//! End-to-end tests of the command-line binary: JSON payloads, text
//! output, exit codes, and the disk cache.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_easy-wg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

fn json_err_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is valid JSON")
}

#[test]
fn integrate_emits_exact_value() {
    let out = run(&[
        "integrate",
        "--category",
        "s",
        "--n",
        "3",
        "--i",
        "1,2",
        "--j",
        "1,2",
    ]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["value"], "1/6");

    let out = run(&[
        "--format",
        "text",
        "integrate",
        "--category",
        "o",
        "--n",
        "5",
        "--i",
        "1,1",
        "--j",
        "1,1",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1/5");
}

#[test]
fn char_moments_asymptotic_polynomial() {
    let out = run(&[
        "char-moments",
        "--category",
        "s+",
        "--k",
        "6",
        "--asymptotic",
    ]);
    let v = json_of(&out);
    assert_eq!(v["coeffs"]["1"], "1");
    assert_eq!(v["coeffs"]["2"], "15");
    assert_eq!(v["coeffs"]["6"], "1");

    // moment 6 of the half-liberated character is 3! at t = 1
    let out = run(&["char-moments", "--category", "o*", "--k", "6"]);
    assert_eq!(json_of(&out)["coeffs"]["3"], "6");

    // exact finite-n truncated moment
    let out = run(&[
        "char-moments",
        "--category",
        "s",
        "--k",
        "2",
        "--n",
        "8",
        "--s",
        "4",
    ]);
    assert_eq!(json_of(&out)["value"], "5/7");
}

#[test]
fn classify_identifies_categories() {
    let out = run(&[
        "classify",
        "--generator",
        "abc/cba",
        "--no-crossing",
        "--bound",
        "8",
    ]);
    let v = json_of(&out);
    assert_eq!(v["identified_as"], "o*");
    assert_eq!(v["complete"], true);

    let out = run(&[
        "classify",
        "--generator",
        "/ab",
        "--no-crossing",
        "--bound",
        "6",
    ]);
    assert_eq!(json_of(&out)["identified_as"], "b#+");
}

#[test]
fn enumerate_lists_partitions() {
    let out = run(&["enumerate", "--k", "0", "--l", "4", "--category", "o"]);
    let v = json_of(&out);
    assert_eq!(v["count"], 3);
    assert_eq!(v["partitions"][0], "/aabb");

    // text format is newline-delimited canonical words
    let out = run(&[
        "--format",
        "text",
        "enumerate",
        "--k",
        "0",
        "--l",
        "4",
        "--category",
        "o",
    ]);
    let words: Vec<&str> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .trim()
        .lines()
        .collect();
    assert_eq!(words, vec!["/aabb", "/abab", "/abba"]);
}

#[test]
fn closure_reports_size_and_elements() {
    let out = run(&["closure", "--generator", "/aa", "--bound", "4", "--list"]);
    let v = json_of(&out);
    assert_eq!(v["complete"], true);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), v["size"].as_u64().unwrap() as usize);
    assert!(elements.iter().any(|e| e == "aa/"));
}

#[test]
fn laws_cumulants_and_bp_round_trip() {
    let out = run(&["laws", "--law", "g", "--k", "4"]);
    let v = json_of(&out);
    assert_eq!(v["kind"], "classical");
    // Gaussian: m_2 = t, m_4 = 3 t^2
    assert_eq!(v["moments"][1]["1"], "1");
    assert_eq!(v["moments"][3]["2"], "3");

    let out = run(&[
        "cumulants",
        "--kind",
        "free",
        "--k",
        "4",
        "--category",
        "h+",
    ]);
    let v = json_of(&out);
    assert_eq!(v["cumulants"][1]["1"], "1");
    assert!(v["cumulants"][2].as_object().unwrap().is_empty());

    // BP of the Gaussian moments is the semicircle: m_4 goes 3 t^2 -> 2 t^2
    let out = run(&["bp", "--moments-json", r#"[{}, {"1":"1"}, {}, {"2":"3"}]"#]);
    let v = json_of(&out);
    assert_eq!(v["moments"][3]["2"], "2");
}

#[test]
fn mc_check_compares_against_exact() {
    let out = run(&[
        "mc-check",
        "--group",
        "s",
        "--n",
        "3",
        "--i",
        "1,2",
        "--j",
        "1,2",
        "--samples",
        "1e4",
        "--seed",
        "42",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["exact"], "1/6");
    assert_eq!(v["samples"], 10000);
    assert!(v["sigmas"].as_f64().unwrap() < 4.0);
}

#[test]
fn exit_codes_distinguish_domain_and_usage_errors() {
    // singular Gram matrix is a domain error
    let out = run(&["wg", "--category", "s", "--k", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_err_of(&out)["kind"], "domain");

    // unknown category name is a usage error
    let out = run(&[
        "integrate",
        "--category",
        "zz",
        "--n",
        "3",
        "--i",
        "1",
        "--j",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_err_of(&out)["kind"], "usage");

    // so is a malformed partition word
    let out = run(&["classify", "--generator", "a(b", "--bound", "4"]);
    assert_eq!(out.status.code(), Some(2));

    // and a missing subcommand
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wg_uses_the_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let first = run(&[
        "--cache-dir",
        path,
        "wg",
        "--category",
        "s",
        "--k",
        "2",
        "--n",
        "3",
    ]);
    assert!(first.status.success());
    let cached_files = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(cached_files > 0, "cache directory stays empty");
    let second = run(&[
        "--cache-dir",
        path,
        "wg",
        "--category",
        "s",
        "--k",
        "2",
        "--n",
        "3",
    ]);
    assert_eq!(first.stdout, second.stdout);
    let v = json_of(&second);
    assert_eq!(v["weingarten"][0][0], "1/2");
    assert_eq!(v["weingarten"][0][1], "-1/6");
}
