use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dehn_core::positive_factorization::check_factorization;
use dehn_core::twist_engine::WordJson;
use dehn_core::build_preset;
use jsonschema::JSONSchema;
use serde_json::Value;
use tempfile::TempDir;

fn dehn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehn")).args(args).output().unwrap()
}

fn crate_path(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel).to_string_lossy().into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

/// Validates `doc` against `schemas/<name>.schema.json`, resolving the
/// cross-file references to the sibling schemas.
fn validate(name: &str, doc: &Value) {
    let load = |n: &str| read_json(&PathBuf::from(crate_path(&format!("schemas/{n}.schema.json"))));
    let mut opts = JSONSchema::options();
    for n in ["curve", "word", "surface", "intersect", "reduce", "factorization", "structure", "estimate"] {
        opts.with_document(format!("json-schema:///{n}.schema.json"), load(n));
    }
    let schema = opts.compile(&load(name)).unwrap();
    let msgs: Vec<String> = match schema.validate(doc) {
        Ok(()) => return,
        Err(errs) => errs.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}");
}

#[test]
fn intersect_prints_the_number() {
    let o = dehn(&["intersect", "--surface", "torus", "--a", "1,0", "--b", "0,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1\n");
    let o = dehn(&["intersect", "--surface", "torus", "--a", "2,3", "--b", "-1,4"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "11");
}

#[test]
fn outputs_match_their_schemas() {
    let dir = TempDir::new().unwrap();
    let out = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let runs: Vec<(&str, Vec<String>)> = vec![
        ("surface", vec!["surface".into(), "--surface".into(), "genus2_closed".into()]),
        ("intersect", vec!["intersect".into(), "--surface".into(), "genus2_closed".into(), "--a".into(), "pants:0".into(), "--b".into(), "dual:0".into()]),
        ("curve", vec!["twist".into(), "--surface".into(), "genus2_closed".into(), "--a".into(), "pants:0".into(), "--b".into(), "dual:0".into(), "--n".into(), "-2".into()]),
        ("reduce", vec!["reduce".into(), "--surface".into(), "torus".into(), "--a".into(), "1,0".into(), "--b".into(), "3,7".into()]),
        ("factorization", vec!["factorize".into(), "--surface".into(), "genus2_closed".into(), "--word".into(), crate_path("data/genus2_word.json")]),
        ("estimate", vec!["estimate".into(), "--genus".into(), "3".into(), "--radius".into(), "0.5".into()]),
    ];
    for (schema, mut args) in runs {
        let path = out(&format!("{schema}.json"));
        args.extend(["--out".to_string(), path.clone()]);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = dehn(&args);
        assert_eq!(code(&o), 0, "{schema}: {}", String::from_utf8_lossy(&o.stderr));
        validate(schema, &read_json(Path::new(&path)));
    }
    validate("word", &read_json(Path::new(&crate_path("data/genus2_word.json"))));
    validate("structure", &read_json(Path::new(&crate_path("data/genus2_structure.json"))));
}

#[test]
fn twisted_curves_feed_back_in() {
    let dir = TempDir::new().unwrap();
    let c = dir.path().join("c.json");
    let c = c.to_str().unwrap();
    let o = dehn(&["twist", "--surface", "genus2_closed", "--a", "dual:0", "--b", "pants:0", "--out", c]);
    assert_eq!(code(&o), 0);
    // I(D_b(a), a) = I(a, b)² and I(D_b(a), b) = I(a, b)
    let o = dehn(&["intersect", "--surface", "genus2_closed", "--a", c, "--b", "pants:0"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "4");
    let o = dehn(&["intersect", "--surface", "genus2_closed", "--a", c, "--b", "dual:0"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "2");
    // a curve file is tied to its surface
    let o = dehn(&["intersect", "--surface", "torus", "--a", c, "--b", "1,0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn factorization_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("f.json");
    let word = crate_path("data/genus2_word.json");
    let o = dehn(&["factorize", "--surface", "genus2_closed", "--word", &word, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let res = read_json(&path);
    assert_eq!(res["certificate"]["passed"], true);
    let p = WordJson {
        format: 1,
        surface: "genus2_closed".into(),
        letters: serde_json::from_value(res["p"].clone()).unwrap(),
    }
    .to_word()
    .unwrap();
    let q: Vec<i64> = serde_json::from_value(res["q_exponents"].clone()).unwrap();
    let f: WordJson = serde_json::from_slice(&std::fs::read(&word).unwrap()).unwrap();
    let (_, sys) = build_preset("genus2_closed").unwrap();
    assert!(p.is_positive());
    assert!(check_factorization(&f.to_word().unwrap(), &p, &q, &sys).unwrap());
    assert!(!check_factorization(&f.to_word().unwrap(), &p, &[q[0] + 1, q[1], q[2]], &sys).unwrap());
}

#[test]
fn verify_writes_rows_and_a_histogram() {
    let dir = TempDir::new().unwrap();
    let (csv, svg) = (dir.path().join("rows.csv"), dir.path().join("h.svg"));
    let o = dehn(&[
        "verify",
        "thurston",
        "--fn",
        &crate_path("data/genus2_structure.json"),
        "--samples",
        "200",
        "--seed",
        "7",
        "--out",
        csv.to_str().unwrap(),
        "--emit-svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["check", "curves", "measured", "bound", "ratio", "pass"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|row| &row[0] == "thurston" && &row[5] == "true"));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn reduce_writes_step_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("steps.csv");
    let o = dehn(&["reduce", "--surface", "torus", "--a", "1,0", "--b", "3,7", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("step,curve,before,after,length"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[2], "7");
    let out: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(out["word"].as_array().unwrap().iter().all(|l| l["exp"] == 1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let structure = crate_path("data/genus2_structure.json");
    let word = crate_path("data/genus2_word.json");
    let runs: [&[&str]; 3] = [
        &["verify", "all", "--fn", &structure, "--samples", "10", "--seed", "4"],
        &["factorize", "--surface", "genus2_closed", "--word", &word],
        &["surface", "--surface", "one_holed_torus"],
    ];
    for args in runs {
        let (x, y) = (dehn(args), dehn(args));
        assert_eq!(code(&x), 0, "{args:?}: {}", String::from_utf8_lossy(&x.stderr));
        assert_eq!(x.stdout, y.stdout, "{args:?}");
    }
}

#[test]
fn exit_statuses() {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    assert_eq!(code(&dehn(&["frobnicate"])), 2);
    assert_eq!(code(&dehn(&["intersect", "--surface", "torus", "--a", "1,0"])), 2);
    // bad input
    let empty = write("empty.json", "");
    assert_eq!(code(&dehn(&["verify", "thurston", "--fn", &empty])), 3);
    assert_eq!(code(&dehn(&["intersect", "--surface", "torus", "--a", "2,4", "--b", "1,0"])), 3);
    assert_eq!(code(&dehn(&["surface", "--surface", "klein_bottle"])), 3);
    assert_eq!(code(&dehn(&["estimate", "--genus", "1", "--radius", "1"])), 3);
    let v2 = write("v2.json", r#"{"format":2,"graph":"theta","lengths":[2,2,2],"twists":[0,0,0]}"#);
    assert_eq!(code(&dehn(&["verify", "system", "--fn", &v2])), 3);
    // the injectivity radius of a nearly pinched surface exceeds the search budget
    let thin = write("thin.json", r#"{"format":1,"graph":"theta","lengths":[0.01,2.2,2.4],"twists":[0.3,0.6,0.9]}"#);
    let o = dehn(&["verify", "system", "--fn", &thin]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
    // a pants curve longer than the Bers bound fails its row
    let long = write("long.json", r#"{"format":1,"graph":"theta","lengths":[30,2.2,2.4],"twists":[0,0,0]}"#);
    let o = dehn(&["verify", "system", "--fn", &long]);
    assert_eq!(code(&o), 5, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stdout).unwrap().lines().any(|l| l.starts_with("pants") && l.ends_with("false")));
}
