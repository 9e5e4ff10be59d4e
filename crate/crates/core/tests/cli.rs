use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use lensurg::{ContactSurgeryDiagram, PlanarMonodromy};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("lensurg").chain(args.iter().copied());
    let code = lensurg::cli::run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn lens_info_reports_tight_structures() {
    let (code, out) = run(&["lens", "info", "7", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("tight_count: 3"), "{out}");
    assert!(out.contains("d3: -2/7, 0/1, -2/7"), "{out}");

    let v = run_json(&["lens", "info", "7", "4"]);
    assert_eq!(v["tight_count"], 3);
    let mut d3: Vec<&str> = v["d3"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    d3.sort();
    assert_eq!(d3, ["-2/7", "-2/7", "0/1"]);
    assert_eq!(v["d_invariants"][5], "1/2");
}

#[test]
fn tight_listing() {
    let v = run_json(&["tight", "7", "4"]);
    assert_eq!(v["tight_count"], 3);
    assert_eq!(v["structures"][2]["rots"], serde_json::json!([0, 2]));
    assert_eq!(v["indistinguishable"], serde_json::json!([]));
}

#[test]
fn d3_of_fixtures() {
    let cases = [
        ("shark.json", "1/2"),
        ("l74_xi0.json", "0/1"),
        ("l74_xi1.json", "-2/7"),
        ("l74_xi2.json", "-2/7"),
        ("cancelling_pair.json", "-1/2"),
    ];
    for (name, d3) in cases {
        let (code, out) = run(&["d3", "--diagram", &fixture(name)]);
        assert_eq!(code, 0);
        assert_eq!(out, format!("{d3}\n"), "{name}");
    }
    let v = run_json(&["d3", "--diagram", &fixture("shark.json")]);
    assert_eq!(v["c1_square"], "-1/1");
    assert_eq!(v["signature"], -1);
}

#[test]
fn obstruct_reports() {
    let (code, out) = run(&["obstruct", "knot", "2", "1", "3", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("L(2,1) -> L(3,1) (knot): Obstructed"), "{out}");
    assert!(out.contains("hflo: Obstructed"), "{out}");

    let v = run_json(&["obstruct", "knot", "2", "1", "3", "1"]);
    assert_eq!(v["verdict"], "Obstructed");
    assert_eq!(v["rules"][0]["rule"], "hflo");
    assert_eq!(v["rules"][0]["verdict"], "Obstructed");

    let v = run_json(&["obstruct", "knot", "3", "1", "5", "3"]);
    assert_eq!(v["verdict"], "Possible");
    assert!(v["rules"].as_array().unwrap().iter().any(|r| r["witness"].is_string()));

    let v = run_json(&["obstruct", "link", "7", "4", "7", "2"]);
    assert_eq!(v["verdict"], "Obstructed");

    let v = run_json(&["obstruct", "knot", "1", "0", "7", "3"]);
    assert!(v["rules"].as_array().unwrap().iter().any(|r| r["rule"] == "tb-torus"));

    let v = run_json(&["obstruct", "knot", "5", "2", "11", "3"]);
    assert_eq!(v["verdict"], "Inconclusive");
}

#[test]
fn planar_bounds() {
    let v = run_json(&["planar-bound", "--monodromy", &fixture("lantern_lhs.json")]);
    assert_eq!(v["b2_bound"], 12);
    assert_eq!(v["crossing_numbers"], serde_json::json!([6, 6, 6, 6]));
    let w = run_json(&["planar-bound", "--monodromy", &fixture("lantern_rhs.json")]);
    assert_eq!(v["views"], w["views"]);
    let (code, out) = run(&["planar-bound", "--monodromy", &fixture("annulus_t7.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("b2_bound: 7"), "{out}");
}

#[test]
fn overtwisted_arithmetic() {
    assert_eq!(run(&["d3-sum", "1/2", "-3/2"]), (0, "-1/2\n".into()));
    assert_eq!(
        run(&["framing-plan", "5", "5"]),
        (0, "connect_sums: 1\nstabilizations: 2\n".into())
    );
    let v = run_json(&["framing-plan", "-3", "-9"]);
    assert_eq!(v["connect_sums"], 0);
    assert_eq!(v["stabilizations"], 5);
    let v = run_json(&["rot-solve", "7", "-2/7", "7"]);
    assert_eq!(
        v["solutions"],
        serde_json::json!([
            { "rot": -1, "source_d3": "-1/2" },
            { "rot": 1, "source_d3": "-1/2" }
        ])
    );
}

#[test]
fn sweep_writes_sorted_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let (code, _) = run(&["sweep", "--p-max", "9", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p1,q1,p2,q2,rule,verdict,trace"));
    let keys: Vec<Vec<i64>> = lines
        .map(|l| l.splitn(5, ',').take(4).map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]));
    assert!(text.contains("2,1,3,1,hflo,Obstructed,"));
}

#[test]
fn invalid_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let bad_json = write("bad.json", "{\"components\": [");
    let asym = write(
        "asym.json",
        r#"{"components":[{"tb":-1,"rot":0,"coeff":-1},{"tb":-1,"rot":0,"coeff":-1}],"linking":[[0,1],[2,0]]}"#,
    );
    let coeff = write("coeff.json", r#"{"components":[{"tb":-1,"rot":0,"coeff":2}],"linking":[[0]]}"#);
    let extra = write(
        "extra.json",
        r#"{"components":[{"tb":-1,"rot":0,"coeff":-1}],"linking":[[0]],"name":"x"}"#,
    );
    let empty_twist = write("empty.json", r#"{"holes":2,"twists":[{"encloses":[],"sign":1}]}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["lens", "info", "6", "4"],
        vec!["lens", "info", "1", "0"],
        vec!["tight", "5", "0"],
        vec!["bogus"],
        vec![],
        vec!["obstruct", "knot", "2", "1", "4", "2"],
        vec!["d3", "--diagram", &bad_json],
        vec!["d3", "--diagram", &asym],
        vec!["d3", "--diagram", &coeff],
        vec!["d3", "--diagram", &extra],
        vec!["d3", "--diagram", "/nonexistent/file.json"],
        vec!["planar-bound", "--monodromy", &empty_twist],
        vec!["d3-sum", "1/0", "1"],
        vec!["rot-solve", "0", "1/2", "3"],
        vec!["sweep", "--p-max", "1", "--out", "/tmp/never.csv"],
    ];
    for args in cases {
        assert_eq!(run(&args).0, 1, "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("obstruct"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lensurg");
    let ok = Command::new(bin).args(["d3", "--diagram", &fixture("shark.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1/2\n");
    let bad = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("Usage"));
    let invalid = Command::new(bin).args(["lens", "info", "4", "2"]).output().unwrap();
    assert_eq!(invalid.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&invalid.stderr).contains("invalid lens parameters"));
}

#[test]
fn fixtures_round_trip_byte_identical() {
    let mut seen = 0;
    for entry in fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let again = if text.contains("\"holes\"") {
            PlanarMonodromy::from_json(&text).unwrap().to_json()
        } else {
            ContactSurgeryDiagram::from_json(&text).unwrap().to_json()
        };
        assert_eq!(again, text, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 11);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "obstruct", "knot", "3", "2", "7", "4"];
    assert_eq!(run(&args), run(&args));
}
