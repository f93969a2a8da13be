//! End-to-end tests of the `fdalg` binary: file formats, exit codes, report
//! determinism, and witness re-feeding.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fdalg_core::algebra::Algebra;
use fdalg_core::io::{algebra_to_file, element_to_file, map_to_file};
use fdalg_core::maps::LinMap;
use fdalg_core::scalar::{FieldSpec, Scalar};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fdalg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) {
    fs::write(path, serde_json::to_string_pretty(value).unwrap()).unwrap();
}

struct Files {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Files {
    fn new() -> Files {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        Files { _dir: dir, root }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    fn algebra(&self, name: &str, alg: &Algebra) -> PathBuf {
        let p = self.path(name);
        write_json(&p, &algebra_to_file(alg));
        p
    }

    fn map(&self, name: &str, m: &LinMap) -> PathBuf {
        let p = self.path(name);
        write_json(&p, &map_to_file(m));
        p
    }
}

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn f(p: u64) -> FieldSpec {
    FieldSpec::prime_field(p).unwrap()
}

#[test]
fn check_inner_derivation_formal_passes_with_exit_0() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(q(), 2);
    let ad = LinMap::inner_derivation(&m2, &m2.basis_element(1)).unwrap();
    let alg = files.algebra("m2q.json", &m2);
    let map = files.map("ada.json", &ad);
    let out = run(&[
        "check",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--identity",
        "xdxx",
        "--mode",
        "formal",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["verdict"], "PASS");
    assert_eq!(rep["mode"], "formal");
}

#[test]
fn gallery_fixture_verifies_with_exit_0() {
    let out = run(&["gallery", "f2-m2-cube", "--verify-all"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert!(rep["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"] == true));
}

#[test]
fn decompose_theorem_a_reports_alpha_two() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(f(7), 2);
    let u = m2.element_from_i64(&[1, 1, 0, 1]);
    let conj = LinMap::conjugation(&m2, &u).unwrap();
    let two = m2.unit().unwrap().scale(&Scalar::from_i64(&f(7), 2));
    let t = LinMap::scalar_multiple(&m2, &two, &conj).unwrap();
    let alg = files.algebra("m2f7.json", &m2);
    let map = files.map("t2conj.json", &t);
    let out = run(&[
        "decompose",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--theorem",
        "a",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["verdict"], "OK");
    // α = 2·1 in coordinates: ["2", "0", "0", "2"]
    assert_eq!(rep["alpha"][0], "2");
    assert_eq!(rep["alpha"][3], "2");
    assert_eq!(rep["alpha"][1], "0");
}

#[test]
fn reports_are_byte_identical_for_fixed_inputs_and_seed() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(q(), 2);
    let id = LinMap::identity(&m2);
    let alg = files.algebra("m2q.json", &m2);
    let map = files.map("id.json", &id);
    let args = [
        "check",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--identity",
        "xdxx",
        "--mode",
        "pointwise",
        "--seed",
        "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn fail_witness_refeeds_through_single_point_check() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(f(5), 2);
    let id = LinMap::identity(&m2);
    let alg = files.algebra("m2f5.json", &m2);
    let map = files.map("id.json", &id);
    let out = run(&[
        "check",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--identity",
        "xdxx",
        "--mode",
        "pointwise",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rep = stdout_json(&out);
    assert_eq!(rep["verdict"], "FAIL");
    let witness = rep["witnesses"][0]
        .as_array()
        .expect("witness coordinates")
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect::<Vec<_>>();
    let elem_path = files.path("witness.json");
    write_json(&elem_path, &serde_json::json!({ "coords": witness }));
    let again = run(&[
        "check",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--identity",
        "xdxx",
        "--at",
        elem_path.to_str().unwrap(),
    ]);
    assert_eq!(again.status.code(), Some(1));
    assert_eq!(stdout_json(&again)["verdict"], "FAIL");
}

#[test]
fn usage_errors_exit_3() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(3));
    let missing = run(&[
        "check",
        "/nonexistent.json",
        "--map",
        "/nope.json",
        "--identity",
        "xdxx",
    ]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn validate_rejects_non_associative_tables() {
    let files = Files::new();
    let path = files.path("bad.json");
    // b1·b1 = b2, b2·b1 = b1: fails associativity at (0,0,0)
    write_json(
        &path,
        &serde_json::json!({
            "field": {"kind": "Q"},
            "dim": 2,
            "labels": ["b1", "b2"],
            "table": [
                [["0", "1"], ["0", "0"]],
                [["1", "0"], ["0", "0"]]
            ]
        }),
    );
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let rep = stdout_json(&out);
    assert_eq!(rep["verdict"], "FAIL");
    assert!(rep["diagnostic"].as_str().unwrap().contains("associative"));
}

#[test]
fn validate_reports_unit() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(f(2), 2);
    let alg = files.algebra("m2f2.json", &m2);
    let out = run(&["validate", alg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["unital"], true);
    assert_eq!(rep["unit"][0], "1");
}

#[test]
fn classify_reports_profile_flags() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(q(), 2);
    let t = LinMap::transpose_map(&m2).unwrap();
    let alg = files.algebra("m2q.json", &m2);
    let map = files.map("transpose.json", &t);
    let out = run(&[
        "classify",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["profile"]["antiautomorphism"], true);
    assert_eq!(rep["profile"]["automorphism"], false);
    assert_eq!(rep["profile"]["jordan_automorphism"], true);
}

#[test]
fn local_single_point_and_whole_map() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(f(3), 2);
    let t = LinMap::transpose_map(&m2).unwrap();
    let alg = files.algebra("m2f3.json", &m2);
    let map = files.map("transpose.json", &t);
    let elem = files.path("e12.json");
    write_json(&elem, &element_to_file(&m2.basis_element(1)));
    let single = run(&[
        "local",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--kind",
        "jordan-automorphism",
        "--at",
        elem.to_str().unwrap(),
    ]);
    assert_eq!(single.status.code(), Some(0));
    let rep = stdout_json(&single);
    assert_eq!(rep["verdict"], "PASS");
    assert!(rep["witness_data"]["invariant_factors"].is_array());

    let whole = run(&[
        "local",
        alg.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--kind",
        "inner-automorphism",
    ]);
    assert_eq!(whole.status.code(), Some(0));
    assert_eq!(stdout_json(&whole)["checked_count"], 81);
}

#[test]
fn invariant_radical_of_triangular_algebra() {
    let files = Files::new();
    let t3 = Algebra::upper_triangular(q(), 3);
    let alg = files.algebra("t3q.json", &t3);
    let out = run(&["invariant", alg.to_str().unwrap(), "--what", "radical"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["subspace"]["dim"], 3);
}

#[test]
fn gallery_out_writes_the_three_files() {
    let files = Files::new();
    let dir = files.path("ede-out");
    let out = run(&["gallery", "ede-p3", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["algebra.json", "map.json", "expected.json"] {
        assert!(dir.join(name).exists(), "{name} missing");
    }
    // the written algebra re-validates
    let validate = run(&["validate", dir.join("algebra.json").to_str().unwrap()]);
    assert_eq!(validate.status.code(), Some(0));
}

#[test]
fn a2_experiment_passes_for_conjugation() {
    let files = Files::new();
    let m2 = Algebra::matrix_algebra(f(3), 2);
    let conj = LinMap::conjugation(&m2, &m2.element_from_i64(&[1, 1, 0, 1])).unwrap();
    let alg = files.algebra("m2f3.json", &m2);
    let map = files.map("conj.json", &conj);
    let out = run(&["a2", alg.to_str().unwrap(), "--map", map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep = stdout_json(&out);
    assert_eq!(rep["anomaly"], false);
    assert_eq!(rep["certification"]["status"], "PASS");
    assert_eq!(rep["profile"]["jordan_automorphism"], true);
}
