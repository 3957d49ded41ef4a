use std::fs;
use std::path::Path;

use serde_json::Value;
use steiner_cli::census::{default_ideal_side, run_census, write_csv, CensusFailure, CensusOptions, CSV_HEADER};
use steiner_cli::run_with;
use steiner_core::exactalg::Field;
use tempfile::TempDir;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn steiner(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["steiner"];
    full.extend_from_slice(args);
    let code = run_with(full, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write_points(dir: &Path, name: &str, field: &str, pts: &[[i64; 3]]) -> String {
    let points: Vec<Vec<String>> = pts.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect();
    let body = serde_json::json!({ "field": field, "n": 2, "points": points });
    let path = dir.join(name);
    fs::write(&path, body.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

// Ten points of the F_31 plane in general position with no cubic through them.
const TEN: [[i64; 3]; 10] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 1],
    [1, 2, 5],
    [1, 3, 11],
    [1, 7, 2],
    [1, 12, 9],
    [1, 5, 20],
    [1, 3, 1],
];

fn conic_points(ts: &[i64]) -> Vec<[i64; 3]> {
    ts.iter().map(|&t| [1, t, t * t]).collect()
}

#[test]
fn help_and_usage_exit_codes() {
    let help = steiner(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("census"));
    assert_eq!(steiner(&["no-such-command"]).code, 3);
    assert_eq!(steiner(&["build-schw"]).code, 3);
}

#[test]
fn precondition_and_io_exit_codes() {
    // Schwarzenberger needs m >= n.
    let e = steiner(&["build-schw", "--n", "3", "--m", "1"]);
    assert_eq!(e.code, 1, "{}", e.stderr);
    let missing = steiner(&["validate", "--presentation", "/nonexistent/p.json"]);
    assert_eq!(missing.code, 3);
}

#[test]
fn build_log_then_exhaustive_scan_finds_the_points() {
    let dir = TempDir::new().unwrap();
    let z = write_points(dir.path(), "z.json", "F_31", &TEN);
    let p = path(dir.path(), "p.json");
    let b = steiner(&["build-log", "--points", &z, "--r", "1", "--out", &p]);
    assert_eq!(b.code, 0, "{}", b.stderr);
    assert!(b.stdout.is_empty());
    let pres = json(&fs::read_to_string(&p).unwrap());
    assert_eq!(pres["m"], 4);
    assert_eq!(pres["total"], 7);

    let v = steiner(&["validate", "--presentation", &p]);
    assert_eq!(v.code, 0, "{}", v.stderr);
    assert_eq!(json(&v.stdout)["valid"], true);

    let s = steiner(&["w-scan", "--presentation", &p, "--exhaustive"]);
    assert_eq!(s.code, 0, "{}", s.stderr);
    let rep = json(&s.stdout);
    assert_eq!(rep["kind"], "finite");
    assert_eq!(rep["points"].as_array().unwrap().len(), 10);
    assert_eq!(rep["domain_size"], 993);

    let c = steiner(&["w-classify", "--points", &z, "--r", "1"]);
    assert_eq!(c.code, 0, "{}", c.stderr);
    assert_eq!(json(&c.stdout)["points"], rep["points"]);
}

#[test]
fn unstable_agrees_with_ideal_side() {
    let dir = TempDir::new().unwrap();
    let z = write_points(dir.path(), "z.json", "F_31", &TEN[..6]);
    let p = path(dir.path(), "p.json");
    assert_eq!(steiner(&["build-log", "--points", &z, "--r", "0", "--out", &p]).code, 0);
    for (h, expect) in [("1,2,5", true), ("1,4,9", false)] {
        let u = steiner(&["unstable", "--presentation", &p, "--hyperplane", h, "--points", &z, "--r", "0"]);
        assert_eq!(u.code, 0, "{}", u.stderr);
        let body = json(&u.stdout);
        assert_eq!(body["unstable"], expect);
        assert_eq!(body["agree"], true);
    }
}

#[test]
fn splitting_of_schwarzenberger_is_reported() {
    let dir = TempDir::new().unwrap();
    let p = path(dir.path(), "s.json");
    assert_eq!(steiner(&["build-schw", "--n", "2", "--m", "3", "--out", &p]).code, 0);
    let s = steiner(&["splitting", "--presentation", &p, "--line-a", "1,0,0", "--line-b", "0,0,1"]);
    assert_eq!(s.code, 0, "{}", s.stderr);
    let body = json(&s.stdout);
    let degrees: Vec<i64> = body["degrees"].as_array().unwrap().iter().map(|d| d.as_i64().unwrap()).collect();
    assert_eq!(Some(degrees.iter().sum::<i64>()), body["c1"].as_i64());
}

#[test]
fn torelli_on_two_conic_subsets_shares_the_conic() {
    let dir = TempDir::new().unwrap();
    let a = write_points(dir.path(), "a.json", "Q", &conic_points(&[0, 1, 2, 3, 4]));
    let b = write_points(dir.path(), "b.json", "Q", &conic_points(&[-1, 5, 6, 7, -3]));
    let t = steiner(&["torelli", "--za", &a, "--zb", &b, "--r", "0", "--seed", "3"]);
    assert_eq!(t.code, 0, "{}", t.stderr);
    let body = json(&t.stdout);
    assert_eq!(body["case"], "common_curve");
    assert_eq!(body["isomorphic"], true);
}

#[test]
fn iso_reports_witness() {
    let dir = TempDir::new().unwrap();
    let z = write_points(dir.path(), "z.json", "Q", &conic_points(&[0, 1, 2, 3, 4]));
    let p = path(dir.path(), "p.json");
    let s = path(dir.path(), "s.json");
    assert_eq!(steiner(&["build-log", "--points", &z, "--r", "0", "--out", &p]).code, 0);
    assert_eq!(steiner(&["build-schw", "--field", "Q", "--n", "2", "--m", "3", "--out", &s]).code, 0);
    let i = steiner(&["iso", "--presentation", &p, "--other", &s]);
    assert_eq!(i.code, 0, "{}", i.stderr);
    let body = json(&i.stdout);
    assert_eq!(body["isomorphic"], true);
    assert!(body["witness"].is_object());
}

#[test]
fn projected_cubic_on_a_coordinate_plane() {
    let p = steiner(&["projected-cubic", "--field", "Q", "--hyperplane", "0,1,0,0"]);
    assert_eq!(p.code, 0, "{}", p.stderr);
    assert_eq!(json(&p.stdout)["equation"], "Y0*Y2^2 - Y1^3");
}

#[test]
fn build_curve_and_restrict() {
    let dir = TempDir::new().unwrap();
    let c = path(dir.path(), "c.json");
    let b = steiner(&["build-curve", "--form", "Y0^3 + Y1^3 + Y2^3", "--a", "2", "--out", &c]);
    assert_eq!(b.code, 0, "{}", b.stderr);
    let pres = json(&fs::read_to_string(&c).unwrap());
    assert_eq!((pres["m"].as_u64(), pres["total"].as_u64()), (Some(3), Some(6)));

    let s = path(dir.path(), "s.json");
    let r = path(dir.path(), "r.json");
    assert_eq!(steiner(&["build-schw", "--n", "3", "--m", "5", "--out", &s]).code, 0);
    let out = steiner(&["restrict", "--presentation", &s, "--hyperplane", "1,2,3,4", "--out", &r]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let res = json(&fs::read_to_string(&r).unwrap());
    assert_eq!(res["nvars"], 3);
    assert_eq!(res["provenance"]["kind"], "restricted");
}

#[test]
fn job_config_supplies_defaults() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("job.json");
    let points: Vec<Vec<String>> = TEN[..6].iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect();
    let body = serde_json::json!({
        "field": "F_31",
        "r": 0,
        "points": { "field": "F_31", "n": 2, "points": points },
    });
    fs::write(&cfg, body.to_string()).unwrap();
    let c = steiner(&["--config", cfg.to_str().unwrap(), "w-classify"]);
    assert_eq!(c.code, 0, "{}", c.stderr);
    assert_eq!(json(&c.stdout)["points"].as_array().unwrap().len(), 6);

    fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(steiner(&["--config", cfg.to_str().unwrap(), "w-classify"]).code, 3);
}

fn small_census() -> CensusOptions {
    CensusOptions {
        field: Field::Prime(11),
        k_min: 5,
        k_max: 6,
        r: 0,
        count: 4,
        seed: 9,
        workers: 2,
        timing: false,
        max_retries: 1000,
    }
}

#[test]
fn census_is_deterministic_and_agrees() {
    let args = ["census", "--field", "F_11", "--k", "5..6", "--r", "0", "--count", "4", "--seed", "9"];
    let first = steiner(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    let mut with_workers = args.to_vec();
    with_workers.extend_from_slice(&["--workers", "3"]);
    let second = steiner(&with_workers);
    assert_eq!(first.stdout, second.stdout);

    let mut rows = csv::Reader::from_reader(first.stdout.as_bytes());
    let header: Vec<String> = rows.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    for row in &rows[..4] {
        assert_eq!(&row[5], "true");
        assert_eq!(&row[6], "true");
        assert_eq!(&row[7], "0");
    }
    assert_eq!(&rows[4][0], "summary");
}

#[test]
fn census_disagreement_produces_a_minimal_reproducer() {
    let opts = small_census();
    let liar = |o: &steiner_core::instability::IdealOracle, l: &steiner_core::polygeom::ProjPoint| {
        o.is_unstable(l).map(|v| !v)
    };
    let run = run_census(&opts, &liar).unwrap();
    match run.failure {
        Some(CensusFailure::Disagreement(rep)) => {
            assert_eq!(rep.bundle_unstable, !rep.ideal_unstable);
            // Greedy minimization drops every point that is not needed.
            assert!(rep.config.points.len() < opts.k_min);
        }
        other => panic!("expected a disagreement, got {other:?}"),
    }
    assert!(run.records.iter().all(|r| !r.agreement));

    let honest = run_census(&opts, &default_ideal_side).unwrap();
    assert!(honest.failure.is_none());
    let mut buf = Vec::new();
    write_csv(&honest.records, opts.r, &mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().starts_with("id,k,r,t,w_kind,agreement,secant_ok,ms\n"));
}

#[test]
fn census_infeasible_sampling_exits_one() {
    let out = steiner(&["census", "--field", "F_2", "--k", "7", "--r", "0", "--count", "1", "--max-retries", "5"]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert!(out.stderr.contains("infeasible"));
}
