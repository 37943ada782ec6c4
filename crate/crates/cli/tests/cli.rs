use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lightcone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn spectrum_parabolic_5_3_matches_table() {
    let out = run(&["spectrum", "--kind", "parabolic", "-n", "5", "-q", "3"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["schema"], 1);
    let pairs = doc["result"]["pairs"].as_array().unwrap();
    let expect = [("80", "1"), ("8", "90"), ("-1", "80"), ("-10", "72")];
    assert_eq!(pairs.len(), 4);
    for (pair, (l, m)) in pairs.iter().zip(expect) {
        assert_eq!(pair[0], l);
        assert_eq!(pair[1], m);
    }
    assert_eq!(doc["result"]["vertex_count"], "243");
}

#[test]
fn ovoid_search_q4_3_finds_size_10() {
    let out = run(&["ovoid", "search", "--kind", "parabolic", "-n", "5", "-q", "3"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["status"], "ovoid");
    assert_eq!(doc["result"]["certificate"]["size"], 10);
    assert_eq!(doc["result"]["audit"]["generators"], 40);
    assert_eq!(doc["result"]["audit"]["meets_min"], 1);
    assert_eq!(doc["result"]["audit"]["meets_max"], 1);
}

#[test]
fn map_verify_exa5_exhaustive() {
    let out = run(&["map", "verify", "--example", "exa5", "-q", "3", "--mode", "exhaustive"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["verification"]["pairs_checked"], "9720");
    assert_eq!(doc["result"]["verification"]["violations"], "0");
}

#[test]
fn byte_identical_reruns() {
    let args = ["mis", "--kind", "elliptic", "-n", "4", "-q", "3", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    // usage error: unknown flag
    let out = run(&["graph", "--badflag"]);
    assert_eq!(out.status.code(), Some(1));
    // config error: missing field
    let out = run(&["classify", "--form", "minkowski", "-n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    // verification failure: perpendicular points are not a partial ovoid
    let dir = std::env::temp_dir().join("lightcone-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let pts = dir.join("bad-points.json");
    std::fs::write(&pts, r#"[["1","0","0","0","0"],["2","0","0","0","0"]]"#).unwrap();
    let out = run(&[
        "ovoid", "verify", "--kind", "parabolic", "-n", "5", "-q", "3",
        "--points", pts.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["status"], "invalid");
}

#[test]
fn certificate_revalidates_through_verify() {
    // search emits points; feeding them back through verify succeeds
    let out = run(&["ovoid", "search", "--kind", "parabolic", "-n", "5", "-q", "3"]);
    let doc = stdout_json(&out);
    let points = doc["result"]["certificate"]["points"].clone();
    let dir = std::env::temp_dir().join("lightcone-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let pts = dir.join("found-points.json");
    std::fs::write(&pts, serde_json::to_string(&points).unwrap()).unwrap();
    let out = run(&[
        "ovoid", "verify", "--kind", "parabolic", "-n", "5", "-q", "3",
        "--points", pts.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["status"], "ovoid");
}

#[test]
fn transfer_from_antidiagonal_model() {
    let out = run(&["ovoid", "transfer", "--form", "antidiag", "-n", "5", "-q", "3"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["reduced"]["size"], 9);
    assert_eq!(doc["result"]["extended"]["size"], 9);
}

#[test]
fn pretty_and_out_flags() {
    let out = run(&["field", "--field", "3^2", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("nonsquare"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err()); // table, not JSON
    let dir = std::env::temp_dir().join("lightcone-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("field.json");
    let out = run(&["field", "--field", "3^2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["result"]["q"], "9");
}

#[test]
fn map_verdict_open_case_stays_open() {
    let out = run(&["map", "verdict", "-q", "3", "-n", "10"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["branch"]["ovoid_existence"], "open");
    assert!(doc["result"]["witness"].is_null());
}

#[test]
fn form_from_json_file() {
    let dir = std::env::temp_dir().join("lightcone-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("form.json");
    std::fs::write(&path, r#"{"matrix": [["1","0"],["0","2"]]}"#).unwrap();
    let out = run(&["classify", "--field", "3", "--form", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["result"]["kind"], "hyperbolic"); // disc -2 = 1, a square
}
