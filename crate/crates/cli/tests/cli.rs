//! End-to-end tests of the `mhodge` binary.

use std::path::Path;
use std::process::{Command, Output};

use mhodge_core::complete_intersection::ci_hodge_oracle;
use mhodge_core::record::{Payload, ResultRecord};
use serde_json::Value;

fn mhodge(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mhodge"))
        .args(args)
        .env("MHODGE_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn hp_genus_two_matches_two_quadrics_in_p5() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(
        dir.path(),
        &[
            "hp", "--rank", "2", "--degree", "1", "--genus", "2", "--format", "json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["degree"], 1);
    assert_eq!(v["genus"], 2);
    assert_eq!(v["fixed_determinant"], true);
    assert_eq!(v["dimension"], 3);

    let oracle = ci_hodge_oracle(&[2, 2], 5).unwrap();
    let expected: Vec<Value> = oracle
        .nonzero()
        .map(|(p, q, h)| serde_json::json!([p, q, h.to_string()]))
        .collect();
    assert_eq!(v["coefficients"], Value::Array(expected));
}

#[test]
fn non_coprime_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(
        dir.path(),
        &["hp", "--rank", "2", "--degree", "2", "--genus", "3"],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not coprime"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn other_invalid_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["hp", "-r", "2", "-d", "1", "-g", "1"][..],
        &["hp", "-r", "2", "-g", "3", "--format", "yaml"],
        &["hp", "-d", "1", "-g", "3"],
        &["chern", "-r", "2", "-d", "1", "-g", "4", "--format", "csv"],
        &["bounds", "--rank", "1"],
        &["verify", "--suite", "nope"],
        &["verify", "--grid", "r=4..2"],
    ] {
        let out = mhodge(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn rank_one_is_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(
        dir.path(),
        &["hp", "--rank", "1", "--degree", "1", "--genus", "5"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dimension"], 0);
    assert_eq!(v["coefficients"], serde_json::json!([[0, 0, "1"]]));
}

#[test]
fn varying_determinant_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(
        dir.path(),
        &["hp", "-r", "2", "-d", "1", "-g", "2", "--varying-det"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["fixed_determinant"], false);
    assert_eq!(v["dimension"], 5);
    // (1 + x)^2 (1 + y)^2 contributes h^{1,0} = 2.
    let coeffs = v["coefficients"].as_array().unwrap();
    assert!(coeffs.contains(&serde_json::json!([1, 0, "2"])));
}

#[test]
fn bounds_defaults_to_threshold_genus() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(dir.path(), &["bounds", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "bounds");
    assert_eq!(v["report"]["g0"], 4);
    assert_eq!(v["genus"], 4);
    assert_eq!(v["report"]["full_vanishing"], false);
    assert_eq!(v["report"]["discrepancies"].as_array().unwrap().len(), 1);
}

#[test]
fn chern_rank_two_genus_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(
        dir.path(),
        &["chern", "--rank", "2", "--degree", "1", "--genus", "4"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exponent"], "-3");
    assert_eq!(v["closed_form"], "-3");
    assert_eq!(v["verification"]["lemma_equality"], true);
    assert_eq!(v["verification"]["exponent_closed_form"], true);
}

#[test]
fn sod_flags_negative_residual() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(
        dir.path(),
        &["sod", "--rank", "2", "--degree", "1", "--genus", "2"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["negative_columns"], serde_json::json!([-1, 0, 1]));
    assert_eq!(v["verification"]["residual_nonnegative"], false);

    let csv = mhodge(
        dir.path(),
        &["sod", "-r", "2", "-d", "1", "-g", "2", "--format", "csv"],
    );
    assert_eq!(stdout(&csv), "k,hh,residual\n-1,2,-2\n0,4,-2\n1,2,-2\n");
}

#[test]
fn verify_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    for suite in ["lemma-hodge", "chern", "symmetry", "level", "sod"] {
        let out = mhodge(dir.path(), &["verify", "--suite", suite]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
        let v = json(&out);
        assert_eq!(v["passed"], true);
        assert_eq!(v["failures"], serde_json::json!([]));
    }
    let out = mhodge(
        dir.path(),
        &["verify", "--suite", "all", "--grid", "r=2..4,g=2..6"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(json(&out)["checks"].as_u64().unwrap() > 0);
}

#[test]
fn cached_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for verb in ["hp", "diamond", "betti", "chern", "sod", "bounds"] {
        let args = [verb, "-r", "3", "-d", "2", "-g", "4"];
        let fresh = mhodge(dir.path(), &args);
        assert_eq!(fresh.status.code(), Some(0));
        let cached = mhodge(dir.path(), &args);
        assert!(String::from_utf8_lossy(&cached.stderr).contains("(cached)"));
        let mut uncached_args = args.to_vec();
        uncached_args.push("--no-cache");
        let uncached = mhodge(dir.path(), &uncached_args);
        assert_eq!(fresh.stdout, cached.stdout, "{verb}");
        assert_eq!(fresh.stdout, uncached.stdout, "{verb}");
    }
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(
        entries, 6,
        "one cache entry per verb and no stray temporaries"
    );
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["hp", "-r", "2", "-d", "1", "-g", "3"];
    let fresh = mhodge(dir.path(), &args);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), "{ not json").unwrap();
    }
    let again = mhodge(dir.path(), &args);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(fresh.stdout, again.stdout);
}

#[test]
fn emitted_records_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for verb in ["hp", "diamond", "betti", "chern", "sod"] {
        for (r, d, g) in [(2, 1, 2), (2, 1, 5), (3, 1, 3), (4, 3, 2)] {
            let args = [
                verb,
                "-r",
                &r.to_string(),
                "-d",
                &d.to_string(),
                "-g",
                &g.to_string(),
            ]
            .map(String::from);
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let out = mhodge(dir.path(), &args);
            assert_eq!(out.status.code(), Some(0), "{args:?}");
            let rec: ResultRecord = serde_json::from_slice(&out.stdout).unwrap();
            let again = serde_json::to_string_pretty(&rec).unwrap() + "\n";
            assert_eq!(again.as_bytes(), &out.stdout[..], "{args:?}");
        }
    }
}

#[test]
fn grid_output_is_a_json_array() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(dir.path(), &["betti", "--grid", "r=2..3,d=1..2,g=2..3"]);
    assert_eq!(out.status.code(), Some(0));
    let recs: Vec<ResultRecord> = serde_json::from_slice(&out.stdout).unwrap();
    // d = 2 is skipped for r = 2.
    let params: Vec<(u32, i64, u32)> = recs.iter().map(|r| (r.rank, r.degree, r.genus)).collect();
    assert_eq!(
        params,
        vec![
            (2, 1, 2),
            (2, 1, 3),
            (3, 1, 2),
            (3, 1, 3),
            (3, 2, 2),
            (3, 2, 3)
        ]
    );
    for rec in &recs {
        match &rec.payload {
            Payload::Betti { euler, .. } => assert_eq!(euler, "0"),
            other => panic!("unexpected payload {other:?}"),
        }
    }
}

#[test]
fn latex_diamond_is_symmetric_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = mhodge(
        dir.path(),
        &[
            "diamond", "-r", "2", "-d", "1", "-g", "3", "--format", "latex",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let tex = stdout(&out);
    assert!(tex.contains("\\begin{array}"));
    let rows: Vec<Vec<String>> = tex
        .lines()
        .filter(|l| l.contains('&'))
        .map(|l| {
            l.trim_end_matches("\\\\")
                .split('&')
                .map(|c| c.trim().to_string())
                .collect()
        })
        .collect();
    // dim 6: thirteen rows, each reading the same forwards and backwards.
    assert_eq!(rows.len(), 13);
    for row in &rows {
        let rev: Vec<String> = row.iter().rev().cloned().collect();
        assert_eq!(row, &rev);
    }
    assert_eq!(rows.first(), rows.last());
}
