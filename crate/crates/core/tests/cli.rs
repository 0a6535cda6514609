use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiberpair"))
        .args(args)
        .env_remove("FIBERPAIR_BRUTE_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Runs and returns (exit code, stdout).
fn golden(args: &[&str]) -> (i32, String) {
    let o = run(args);
    (o.status.code().unwrap(), stdout(&o).trim_end().to_string())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v: Value = serde_json::from_str(&stdout(&o)).expect("machine output is JSON");
    (o.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_fixture_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i3.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["fixture", "I3", "-o", p]).status.code(), Some(0));
    let (code, out) = golden(&["validate", p]);
    assert_eq!(code, 0);
    assert!(out.ends_with("valid"));
    assert_eq!(golden(&["validate", "--fixture", "I3"]).0, 0);
}

#[test]
fn validate_asymmetric() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "asym.json",
        r#"{ "name": "asym",
             "components": [ { "label": "A", "multiplicity": 1 },
                             { "label": "B", "multiplicity": 1 } ],
             "intersections": [ [0, 1, 2], [1, 0, 3] ],
             "self_intersections": [-2, -2] }"#,
    );
    let (code, out) = golden(&["validate", &p]);
    assert_eq!(code, 1);
    assert!(out.contains("symmetry: FAILED"), "{out}");
    assert!(out.ends_with("invalid"));

    let (code, v) = json(&["validate", &p]);
    assert_eq!(code, 1);
    let checks = v["result"]["checks"].as_array().unwrap();
    let sym = checks
        .iter()
        .find(|c| c["invariant"] == "symmetry")
        .unwrap();
    assert_eq!(sym["passed"], false);
}

#[test]
fn validate_missing_and_malformed() {
    assert_eq!(golden(&["validate", "/nonexistent/fiber.json"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{ \"name\": 3 }");
    let o = run(&["validate", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(golden(&["validate"]).0, 2);
    assert_eq!(golden(&["group", "--fixture", "I0"]).0, 2);
}

#[test]
fn group_rendering() {
    assert_eq!(golden(&["group", "--fixture", "I5"]), (0, "Z/5".into()));
    assert_eq!(golden(&["group", "--fixture", "II"]), (0, "trivial".into()));
    assert_eq!(
        golden(&["group", "--fixture", "I*0"]),
        (0, "Z/2 x Z/2".into())
    );
    let (_, v) = json(&["group", "--fixture", "I*1"]);
    assert_eq!(v["command"], "group");
    assert_eq!(v["fiber"], "I*1");
    assert_eq!(v["result"]["invariant_factors"], serde_json::json!([4]));
}

#[test]
fn pairing_values() {
    assert_eq!(
        golden(&["pairing", "--fixture", "I2", "--pair", "1,-1", "1,-1"]),
        (0, "1/2".into())
    );
    assert_eq!(
        golden(&["pairing", "--fixture", "I2", "--pair", "0,0", "1,-1"]),
        (0, "0".into())
    );
    assert_eq!(
        golden(&["pairing", "--fixture", "I3", "--table"]),
        (0, "1/3".into())
    );
    assert_eq!(
        golden(&["pairing", "--fixture", "I3", "--table", "--parallel"]),
        (0, "1/3".into())
    );
    // Not torsion: degree 1.
    assert_eq!(
        golden(&["pairing", "--fixture", "I2", "--pair", "1,0", "1,-1"]).0,
        2
    );
    // Wrong length.
    assert_eq!(
        golden(&["pairing", "--fixture", "I2", "--pair", "1,-1,0", "1,-1"]).0,
        2
    );
}

#[test]
fn pairing_json_round_trips_rationals() {
    let (code, v) = json(&["pairing", "--fixture", "I*0", "--table"]);
    assert_eq!(code, 0);
    for row in v["result"]["table"].as_array().unwrap() {
        for q in row.as_array().unwrap() {
            let s = q.as_str().expect("rationals are strings");
            let (n, d) = s.split_once('/').unwrap();
            let (n, d): (i64, i64) = (n.parse().unwrap(), d.parse().unwrap());
            assert!(d > 0 && (0..d).contains(&n));
        }
    }
    let (_, v) = json(&["pairing", "--fixture", "I2", "--pair", "1,-1", "1,-1"]);
    assert_eq!(v["result"]["value"], "1/2");
}

#[test]
fn gross_hriljac_totals() {
    let total = |args: &[&str]| {
        let (code, out) = golden(args);
        assert_eq!(code, 0);
        out.lines()
            .find_map(|l| l.strip_prefix("total: "))
            .unwrap()
            .to_string()
    };
    let base = ["gh", "--fixture", "I2"];
    let with = |extra: &[&'static str]| [&base[..], extra].concat();
    assert_eq!(
        total(&with(&[
            "--horiz", "0", "--rho-c", "1,-1", "--rho-d", "1,-1"
        ])),
        "1/2"
    );
    assert_eq!(
        total(&with(&[
            "--horiz", "7", "--rho-c", "1,-1", "--rho-d", "0,0"
        ])),
        "7"
    );
    assert_eq!(
        total(&with(&[
            "--horiz", "3", "--rho-c", "1,-1", "--rho-d", "2,-2"
        ])),
        "4"
    );
    let (_, v) = json(&with(&[
        "--horiz", "0", "--rho-c", "1,-1", "--rho-d", "1,-1",
    ]));
    assert_eq!(v["result"]["total"], "1/2");
    assert_eq!(v["result"]["v"], serde_json::json!(["-1/4", "1/4"]));
}

#[test]
fn extend_verdicts() {
    let (code, out) = golden(&["extend", "--fixture", "I2", "--rho-d", "2,-2"]);
    assert_eq!((code, out.lines().next().unwrap()), (0, "extendable"));
    assert_eq!(
        golden(&["extend", "--fixture", "I2", "--rho-d", "1,-1"]),
        (1, "obstructed, probe value 1/2".into())
    );
    let (code, out) = golden(&["extend", "--fixture", "I2", "--rho-d", "0,0"]);
    assert_eq!((code, out.lines().next().unwrap()), (0, "extendable"));
}

#[test]
fn oracle_runs() {
    assert_eq!(
        golden(&["oracle", "local", "--g", "x^2-5", "--f", "x", "--prime", "5"]),
        (0, "1".into())
    );
    assert_eq!(
        golden(&[
            "oracle", "local", "--g", "x^2-5", "--f", "x", "--prime", "5", "--method", "both"
        ]),
        (0, "1 = 1 OK".into())
    );
    assert_eq!(
        golden(&["oracle", "norm", "--h", "(x-1)^2(x-2)", "--c", "x"]),
        (0, "2 = 2 OK".into())
    );
    assert_eq!(
        golden(&[
            "oracle",
            "principal",
            "--term",
            "1:x^2-5",
            "--term",
            "-2:x-1",
            "--f",
            "1",
            "--prime",
            "5"
        ]),
        (0, "0".into())
    );
    assert_eq!(
        golden(&[
            "oracle",
            "principal",
            "--term",
            "1:x^2-5",
            "--term",
            "-2:x-1",
            "--f",
            "x",
            "--prime",
            "5"
        ]),
        (0, "1".into())
    );
    // Not prime, reducible point, unparsable polynomial.
    assert_eq!(
        golden(&["oracle", "local", "--g", "x-5", "--f", "x", "--prime", "4"]).0,
        2
    );
    assert_eq!(
        golden(&["oracle", "local", "--g", "x^2-1", "--f", "x", "--prime", "5"]).0,
        2
    );
    assert_eq!(
        golden(&["oracle", "local", "--g", "2x-1", "--f", "x", "--prime", "5"]).0,
        2
    );
    let (_, v) = json(&["oracle", "norm", "--h", "(x-1)^2(x-2)", "--c", "x"]);
    assert_eq!(v["result"]["lhs"], "2/1");
    assert_eq!(v["result"]["equal"], true);
}
