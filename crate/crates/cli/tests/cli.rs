use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn framelab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framelab"))
        .args(args)
        .current_dir(dir)
        .env_remove("FRAMELAB_THREADS")
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_b2_over_f2() {
    let dir = TempDir::new().unwrap();
    let out = framelab(dir.path(), &["build", "--ring", "fq", "--q", "2", "--n", "2", "--m", "0", "--kind", "B"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let c = read_json(&dir.path().join("complex.json"));
    assert_eq!(c["ring"], "F2");
    assert_eq!(c["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(c["simplices"]["1"].as_array().unwrap().len(), 3);
    assert!(c["bound"].is_null());
}

#[test]
fn homology_of_a_built_complex() {
    let dir = TempDir::new().unwrap();
    assert!(framelab(dir.path(), &["build", "--ring", "fq", "--q", "3", "--n", "2"]).status.success());
    let out = framelab(dir.path(), &["homology", "--in", "complex.json", "--coeff", "Z", "--csv", "h.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let h = read_json(&dir.path().join("homology.json"));
    assert_eq!(h["coeff"], "Z");
    let top = h["degrees"].as_array().unwrap().iter().find(|d| d["d"] == 1).unwrap();
    assert_eq!(top["betti"], 3);
    assert_eq!(top["torsion"], serde_json::json!([]));
    let csv = std::fs::read_to_string(dir.path().join("h.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn poset_input_uses_the_order_complex() {
    let dir = TempDir::new().unwrap();
    assert!(framelab(dir.path(), &["build", "--ring", "fq", "--q", "2", "--n", "3", "--kind", "T"]).status.success());
    let p = read_json(&dir.path().join("poset.json"));
    assert_eq!(p["elements"].as_array().unwrap().len(), 14);
    let out = framelab(dir.path(), &["homology", "--in", "poset.json", "--coeff", "F2", "-o", "t.json"]);
    assert!(out.status.success());
    let h = read_json(&dir.path().join("t.json"));
    let top = h["degrees"].as_array().unwrap().iter().find(|d| d["d"] == 1).unwrap();
    assert_eq!(top["betti"], 8);
}

#[test]
fn coinvariants_and_witnesses() {
    let dir = TempDir::new().unwrap();
    let out = framelab(dir.path(), &["coinvariants", "--ring", "fq", "--q", "2", "--n", "2", "--module", "st-e1"]);
    assert!(out.status.success());
    let c = read_json(&dir.path().join("coinvariants.json"));
    assert_eq!(c["invariant_factors"], serde_json::json!(["2"]));
    assert_eq!(c["vanishes_over_ZHalf"], true);
    assert_eq!(c["group"], "GL_fix(0,2)");

    let out = framelab(dir.path(), &["witnesses", "--case", "bpid", "--r", "3", "--bound", "4"]);
    assert!(out.status.success());
    let w = read_json(&dir.path().join("witness.json"));
    assert_eq!(w["case"], "bpid");
    assert_eq!(w["holds"], true);

    let out = framelab(dir.path(), &["witnesses", "--case", "last", "--m", "1", "--frame", "0,1", "--partners", "e1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn identities_artifact() {
    let dir = TempDir::new().unwrap();
    let out = framelab(dir.path(), &["identities", "--samples", "5"]);
    assert!(out.status.success());
    let cases = read_json(&dir.path().join("identities.json"));
    let cases = cases.as_array().unwrap();
    assert!(cases.iter().all(|c| c["holds"] == true));
    assert!(cases.iter().any(|c| c["name"] == "det_identity"));
}

#[test]
fn invalid_configurations_exit_2() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["build", "--ring", "z", "--n", "2"][..],
        &["build", "--ring", "fq", "--q", "4", "--n", "2"],
        &["build", "--ring", "fq", "--q", "17", "--n", "2"],
        &["build", "--ring", "zi", "--bound", "2", "--n", "2", "--kind", "T"],
        &["coinvariants", "--ring", "z", "--bound", "2", "--n", "2"],
        &["homology", "--in", "x.json", "--coeff", "R"],
        &["verify", "--suite", "11"],
        &["build", "--n", "2", "--kind", "X"],
    ] {
        let out = framelab(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn size_guards_exit_3() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["build", "--ring", "z", "--bound", "40", "--n", "3"][..],
        &["build", "--ring", "fq", "--q", "13", "--n", "4", "--kind", "T"],
    ] {
        let out = framelab(dir.path(), args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds limit"));
    }
}

#[test]
fn artifacts_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let run = |threads: &str, name: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_framelab"))
            .args(["build", "--ring", "fq", "--q", "3", "--n", "3", "--kind", "S", "-o", name])
            .current_dir(dir.path())
            .env("FRAMELAB_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read(dir.path().join(name)).unwrap()
    };
    assert_eq!(run("1", "a.json"), run("4", "b.json"));
}

#[test]
fn verify_single_criterion() {
    let dir = TempDir::new().unwrap();
    let out = framelab(dir.path(), &["verify", "--suite", "6"]);
    assert!(out.status.success());
    let a = read_json(&dir.path().join("acceptance.json"));
    assert_eq!(a["all_passed"], true);
    assert_eq!(a["criteria"].as_array().unwrap().len(), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("[PASS]"));
}

#[test]
fn verify_all() {
    let dir = TempDir::new().unwrap();
    let out = framelab(dir.path(), &["verify", "--suite", "all"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let a = read_json(&dir.path().join("acceptance.json"));
    assert_eq!(a["criteria"].as_array().unwrap().len(), 10);
    assert_eq!(a["all_passed"], true);
}
