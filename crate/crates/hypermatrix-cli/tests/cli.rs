//! End-to-end tests of the `hypermatrix` binary: exit codes, output
//! documents, error diagnostics.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypermatrix"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn exists(dir: &TempDir, name: &str) -> bool {
    dir.path().join(name).exists()
}

#[test]
fn gen_delta_golden_document() {
    let stdout = run_ok(&["gen", "delta", "--n", "2"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["order"], 3);
    assert_eq!(doc["dims"], serde_json::json!([2, 2, 2]));
    assert_eq!(doc["scalar_kind"], "rational");
    assert_eq!(
        doc["entries"],
        serde_json::json!([[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]])
    );
}

#[test]
fn documents_round_trip_through_transposes() {
    let dir = TempDir::new().unwrap();
    let a = path_str(&dir, "a.json");
    let t = path_str(&dir, "t.json");
    run_ok(&[
        "gen", "labeled", "--dims", "2,2,2", "--prefix", "a", "--out", &a,
    ]);
    run_ok(&["transpose", &a, "--times", "3", "--out", &t]);
    let original = std::fs::read(&a).unwrap();
    let back = std::fs::read(&t).unwrap();
    assert_eq!(original, back, "three cyclic transposes are the identity");
}

#[test]
fn ch_count_prints_fuss_catalan() {
    assert_eq!(run_ok(&["ch-count", "--order", "7"]), "12\n");
    assert_eq!(run_ok(&["ch-count", "--order", "9"]), "55\n");
    let out = run(&["ch-count", "--order", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn ch_rank_on_orthogonal_seed() {
    let dir = TempDir::new().unwrap();
    let q = path_str(&dir, "q.json");
    run_ok(&[
        "gen",
        "ortho22",
        "--theta",
        "0.8652559794322651",
        "--out",
        &q,
    ]);
    assert_eq!(run_ok(&["ch-rank", &q, "--max-order", "7"]), "8\n");
}

#[test]
fn verify_orthogonality_pipeline() {
    let dir = TempDir::new().unwrap();
    let q = path_str(&dir, "q.json");
    run_ok(&[
        "gen",
        "ortho22",
        "--theta",
        "0.7853981633974483",
        "--out",
        &q,
    ]);
    let stdout = run_ok(&["verify", "orthogonality", &q]);
    assert!(stdout.starts_with("PASS max-deviation"), "{stdout}");

    // A plainly non-orthogonal input fails with exit 1 and a FAIL line.
    let ones = path_str(&dir, "ones.json");
    run_ok(&[
        "gen", "ones", "--dims", "2,2,2", "--kind", "real", "--out", &ones,
    ]);
    let out = run(&["verify", "orthogonality", &ones]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL"));
}

#[test]
fn verify_identities() {
    assert!(run_ok(&["verify", "delta-identity", "--n", "4"]).contains("PASS"));
    assert!(run_ok(&["verify", "diagonal-identity", "--n", "2"]).contains("PASS"));
    let stdout = run_ok(&["verify", "slice-action", "--n", "3", "--sigma", "1,0,2"]);
    assert_eq!(stdout.lines().count(), 3, "one line per axis: {stdout}");

    // Non-involutions are rejected before any product runs.
    let out = run(&["verify", "slice-action", "--n", "3", "--sigma", "1,2,0"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("involution"), "{stderr}");
}

#[test]
fn add_rejects_shape_mismatch_without_partial_output() {
    let dir = TempDir::new().unwrap();
    let a = path_str(&dir, "a.json");
    let b = path_str(&dir, "b.json");
    let out_path = path_str(&dir, "sum.json");
    run_ok(&["gen", "zeros", "--dims", "2,2,2", "--out", &a]);
    run_ok(&["gen", "zeros", "--dims", "2,2,3", "--out", &b]);
    let out = run(&["add", &a, &b, "--out", &out_path]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(
        stderr.lines().count(),
        1,
        "single diagnostic line: {stderr}"
    );
    assert!(stderr.contains("[2, 2, 2]") && stderr.contains("[2, 2, 3]"));
    assert!(!exists(&dir, "sum.json"), "no partial output on failure");
}

#[test]
fn add_rejects_kind_mismatch() {
    let dir = TempDir::new().unwrap();
    let a = path_str(&dir, "a.json");
    let b = path_str(&dir, "b.json");
    run_ok(&[
        "gen", "zeros", "--dims", "2,2", "--kind", "rational", "--out", &a,
    ]);
    run_ok(&[
        "gen", "zeros", "--dims", "2,2", "--kind", "real", "--out", &b,
    ]);
    let out = run(&["add", &a, &b]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scalar kinds differ"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["vectorize", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("nope.json");
    let out = run(&["vectorize", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Wrong nesting: dims say 2x2 but entries are flat.
    let wrong = dir.path().join("wrong.json");
    std::fs::write(
        &wrong,
        r#"{"order": 2, "dims": [2, 2], "scalar_kind": "real", "entries": [1.0, 2.0, 3.0, 4.0]}"#,
    )
    .unwrap();
    let out = run(&["vectorize", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scale_parses_per_kind_literals() {
    let dir = TempDir::new().unwrap();
    let ones = path_str(&dir, "ones.json");
    run_ok(&[
        "gen", "ones", "--dims", "2", "--kind", "rational", "--out", &ones,
    ]);
    let stdout = run_ok(&["scale", &ones, "--by", "3/2"]);
    assert!(stdout.contains("\"3/2\""), "{stdout}");

    let cones = path_str(&dir, "cones.json");
    run_ok(&[
        "gen", "ones", "--dims", "2", "--kind", "complex", "--out", &cones,
    ]);
    let stdout = run_ok(&["scale", &cones, "--by", "1+2i"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["entries"][0]["re"], 1.0);
    assert_eq!(doc["entries"][0]["im"], 2.0);

    let expr = path_str(&dir, "expr.json");
    run_ok(&[
        "gen", "labeled", "--dims", "2", "--prefix", "x", "--out", &expr,
    ]);
    let stdout = run_ok(&["scale", &expr, "--by", "2*y"]);
    assert!(stdout.contains("2*x0*y"), "{stdout}");
}

#[test]
fn gproduct_matches_matrix_multiplication() {
    let dir = TempDir::new().unwrap();
    let m = path_str(&dir, "m.json");
    let id = path_str(&dir, "id.json");
    run_ok(&[
        "gen", "labeled", "--dims", "2,2", "--prefix", "m", "--out", &m,
    ]);
    // Identity matrix written by hand.
    std::fs::write(
        dir.path().join("id.json"),
        r#"{"order": 2, "dims": [2, 2], "scalar_kind": "expression", "entries": [["1", "0"], ["0", "1"]]}"#,
    )
    .unwrap();
    let stdout = run_ok(&["gproduct", &m, &id]);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(
        doc["entries"],
        serde_json::json!([["m00", "m01"], ["m10", "m11"]])
    );

    let out = run(&["gproduct", &m]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn product_bg_with_delta_matches_plain_product() {
    let dir = TempDir::new().unwrap();
    let names = ["a", "b", "c"];
    let mut paths = Vec::new();
    for name in names {
        let p = path_str(&dir, &format!("{name}.json"));
        run_ok(&[
            "gen", "labeled", "--dims", "2,2,2", "--prefix", name, "--out", &p,
        ]);
        paths.push(p);
    }
    let delta = path_str(&dir, "delta.json");
    run_ok(&[
        "gen",
        "delta",
        "--n",
        "2",
        "--kind",
        "expression",
        "--out",
        &delta,
    ]);
    let plain = path_str(&dir, "plain.json");
    let with_bg = path_str(&dir, "with_bg.json");
    run_ok(&["product", &paths[0], &paths[1], &paths[2], "--out", &plain]);
    run_ok(&[
        "product-bg",
        &paths[0],
        &paths[1],
        &paths[2],
        &delta,
        "--out",
        &with_bg,
    ]);
    assert_eq!(
        std::fs::read(Path::new(&plain)).unwrap(),
        std::fs::read(Path::new(&with_bg)).unwrap()
    );
}

#[test]
fn vectorize_golden() {
    let dir = TempDir::new().unwrap();
    let t = path_str(&dir, "t.json");
    run_ok(&[
        "gen", "labeled", "--dims", "2,2,2", "--prefix", "t", "--out", &t,
    ]);
    let stdout = run_ok(&["vectorize", &t]);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["length"], 8);
    assert_eq!(
        doc["values"],
        serde_json::json!(["t000", "t001", "t010", "t011", "t100", "t101", "t110", "t111"])
    );
}

#[test]
fn pinv_pairs_writes_factors_and_reports() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    // The worked pair: a real 2x2x2 document written inline.
    let doc = |vals: [f64; 8]| {
        serde_json::json!({
            "order": 3,
            "dims": [2, 2, 2],
            "scalar_kind": "real",
            "entries": [
                [[vals[0], vals[1]], [vals[2], vals[3]]],
                [[vals[4], vals[5]], [vals[6], vals[7]]],
            ],
        })
    };
    std::fs::write(
        &a,
        serde_json::to_string(&doc([
            0.1631135370902057,
            0.11600112072013125,
            0.9823708115400902,
            0.39605960486710756,
            0.061860929755424676,
            0.2325542810173995,
            0.39111210957450926,
            0.2019809359102137,
        ]))
        .unwrap(),
    )
    .unwrap();
    let b = dir.path().join("b.json");
    std::fs::write(
        &b,
        serde_json::to_string(&doc([
            0.15508921433883183,
            0.17820377184410963,
            0.48648171594508205,
            0.01568017636082064,
            0.8250247759993575,
            0.1938307874191597,
            0.23867299119274843,
            0.3935578730402869,
        ]))
        .unwrap(),
    )
    .unwrap();

    let r1 = path_str(&dir, "r1.json");
    let r2 = path_str(&dir, "r2.json");
    let args: Vec<String> = vec![
        "pinv-pairs".into(),
        a.to_string_lossy().into_owned(),
        b.to_string_lossy().into_owned(),
        "--out-r1".into(),
        r1.clone(),
        "--out-r2".into(),
        r2.clone(),
    ];
    let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let stdout = run_ok(&arg_refs);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("residual "));
    assert!(lines[1].starts_with("reconstruction-error "));
    let recon: f64 = lines[1].split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(recon > 0.0);

    let first_r1 = std::fs::read(PathBuf::from(&r1)).unwrap();
    let first_r2 = std::fs::read(PathBuf::from(&r2)).unwrap();

    // Deterministic byte-for-byte across runs.
    let stdout2 = run_ok(&arg_refs);
    assert_eq!(stdout, stdout2);
    assert_eq!(first_r1, std::fs::read(PathBuf::from(&r1)).unwrap());
    assert_eq!(first_r2, std::fs::read(PathBuf::from(&r2)).unwrap());

    // Singular slice matrices surface as exit 1 with a diagnostic.
    let ones = path_str(&dir, "ones.json");
    run_ok(&[
        "gen", "ones", "--dims", "2,2,2", "--kind", "real", "--out", &ones,
    ]);
    let out = run(&["pinv-pairs", &ones, &ones, "--out-r1", &r1, "--out-r2", &r2]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
}

#[test]
fn gen_diag_from_matrix_document() {
    let dir = TempDir::new().unwrap();
    let m = path_str(&dir, "m.json");
    run_ok(&[
        "gen", "labeled", "--dims", "2,2", "--prefix", "m", "--out", &m,
    ]);
    let stdout = run_ok(&["gen", "diag", "--matrix", &m]);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["dims"], serde_json::json!([2, 2, 2]));
    // D(i,j,k) = [j = k] * M(min(i,k), max(i,k)); the (1,0,0) entry reads
    // the upper-triangle atom m01.
    assert_eq!(doc["entries"][1][0][0], "m01");
    assert_eq!(doc["entries"][0][1][0], "0");
}

#[test]
fn gen_perm_golden() {
    let stdout = run_ok(&["gen", "perm", "--sigma", "1,0"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    // P(i,j,k) = [k = sigma(j)], independent of i.
    assert_eq!(
        doc["entries"],
        serde_json::json!([[["0", "1"], ["1", "0"]], [["0", "1"], ["1", "0"]]])
    );
    let out = run(&["gen", "perm", "--sigma", "0,0,1"]);
    assert_eq!(out.status.code(), Some(1));
}
