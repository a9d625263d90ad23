use std::process::{Command, Output};

use serde_json::Value;

fn vocic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vocic"))
        .args(args)
        .env_remove("VOCIC_CACHE")
        .output()
        .expect("run vocic")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn components_example() {
    let o = vocic(&["components", "--dim", "1,1,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rs: Vec<&Value> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| &c["r"])
        .collect();
    assert_eq!(rs, [&serde_json::json!([1, 0]), &serde_json::json!([0, 1])]);
}

#[test]
fn stalks_json_schema() {
    let o = vocic(&["stalks", "--dim", "1,3,1", "--r", "1,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], serde_json::json!([1, 3, 1]));
    assert_eq!(v["h"], serde_json::json!([0, 1, 0]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        for key in ["k", "orbit_r", "orbit_h", "poincare"] {
            assert!(row[key].is_array(), "{key} in {row}");
        }
        assert!(row["codim"].is_i64());
    }
    let last = rows
        .iter()
        .find(|r| r["k"] == serde_json::json!([1, 1]))
        .unwrap();
    assert_eq!(last["poincare"], serde_json::json!([1, 0, 1]));
    assert_eq!(last["codim"], 5);
}

#[test]
fn stalks_csv() {
    let o = vocic(&["stalks", "--dim", "1,3,1", "--r", "1,1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("dim,r,h,k,orbit_r,orbit_h,poincare,codim\n"));
    assert!(text.lines().any(|l| l.ends_with("1+q^2,5")), "{text}");
}

#[test]
fn hall_example() {
    let o = vocic(&["hall", "--lhs", "[1..1]", "--rhs", "[2..2]", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[1..2] + v^-1*([1..1]+[2..2])\n");
}

#[test]
fn printed_multisegments_reparse() {
    let o = vocic(&[
        "hall",
        "--lhs",
        "[1..2]+[2..2]",
        "--rhs",
        "[1..1]",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for term in v.as_array().unwrap() {
        let m = term["multisegment"].as_str().unwrap();
        let parsed = vocic::repquiver::Multisegment::parse(m, 2).unwrap();
        assert_eq!(parsed.to_string(), m);
    }
}

#[test]
fn canonical_json() {
    let o = vocic(&[
        "canonical",
        "--dim",
        "1,2,1",
        "--r",
        "1,1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    assert_eq!(terms[3]["k"], serde_json::json!([1, 1]));
    assert_eq!(terms[3]["coefficient"], "v^-1 + v^-3");
}

#[test]
fn exit_codes_and_diagnostics() {
    let o = vocic(&["components", "--dim", "1;2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 1"));

    assert_eq!(
        vocic(&["stalks", "--dim", "2,2", "--r", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        vocic(&["stalks", "--dim", "2,2", "--r", "3"]).status.code(),
        Some(2)
    );
    let o = vocic(&[
        "--max-total-dim",
        "3",
        "canonical",
        "--dim",
        "2,2",
        "--r",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling"));
    assert_eq!(
        vocic(&["--threads", "zero", "components", "--dim", "1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cache_cold_and_warm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hall.cache");
    let path = path.to_str().unwrap();
    let args = ["--cache", path, "canonical", "--dim", "1,3,1", "--r", "1,1"];
    let cold = vocic(&args);
    let written = std::fs::read_to_string(path).unwrap();
    assert!(!written.is_empty());
    let warm = vocic(&args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        written,
        "warm run adds nothing"
    );

    let env = Command::new(env!("CARGO_BIN_EXE_vocic"))
        .args(["canonical", "--dim", "1,3,1", "--r", "1,1"])
        .env("VOCIC_CACHE", path)
        .output()
        .unwrap();
    assert_eq!(env.stdout, cold.stdout);

    std::fs::write(
        path,
        "[1..1]|[1..1]|[1..1]^2|1,1\n[1..1]|[1..1]|[1..1]^2|1,2\n",
    )
    .unwrap();
    let bad = vocic(&args);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("conflicting"));
}

#[test]
fn verify_quick_passes() {
    let o = vocic(&["verify", "--quick", "--max-total-dim", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("criterion ")).count(),
        8
    );
    assert!(text.ends_with("all criteria passed\n"));
}
