use std::process::Command;

use projmet_cli::{reference_examples, run, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use projmet_core::schema::{code_to_json, family_from_json, family_to_json};
use projmet_core::{FiniteField, LinearCode};
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String) {
    run(std::iter::once("projmet").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = cli(&a);
    assert_eq!(code, EXIT_OK, "{out}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn spheres_csv_for_phase_rotation() {
    let (code, out) = cli(&["spheres", "--family", "phase_rotation:4", "--q", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "t,sphere,ball\n0,1,1\n1,5,6\n2,10,16\n");
}

#[test]
fn weight_of_identity_matrix() {
    let (code, out) = cli(&["weight", "--family", "rank:2,2", "--q", "2", "--vector", "1,0,0,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("2"));
    let v = json(&["weight", "--family", "phase_rotation:4", "--vector", "1,1,0,1"]);
    assert_eq!(v["weight"], 2);
    assert_eq!(v["representation"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["weight", "--family", "hamming:3"]).0, EXIT_USAGE);
    assert_eq!(cli(&["weight", "--family", "hamming:2", "--vector", "x,1"]).0, EXIT_USAGE);
    assert_eq!(cli(&["weight", "--family", "hamming:2", "--vector", "1,5"]).0, EXIT_DOMAIN);
    assert_eq!(cli(&["spheres", "--family", "nonsense:3"]).0, EXIT_DOMAIN);
    assert_eq!(cli(&["spheres", "--family", "hamming:3", "--q", "6"]).0, EXIT_DOMAIN);
    assert_eq!(cli(&["spheres", "--family", "hamming:12", "--max-states", "1000"]).0, EXIT_BUDGET);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_exit_status_matches_library() {
    let bin = env!("CARGO_BIN_EXE_projmet");
    let out = Command::new(bin).args(["spheres", "--family", "hamming:2"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "t,sphere,ball\n0,1,1\n1,2,3\n2,1,4\n");
    let out = Command::new(bin).args(["spheres", "--family", "hamming:12", "--max-states", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BUDGET));
    let out = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn parent_reports_repetition_code() {
    let v = json(&["parent", "--family", "phase_rotation:4"]);
    assert_eq!(v["distance"], 5);
    assert_eq!(v["coset_distribution"], serde_json::json!([1, 5, 10]));
    assert_eq!(v["code"]["basis"], serde_json::json!([[1, 1, 1, 1, 1]]));
    let (_, text) = cli(&["parent", "--family", "phase_rotation:4"]);
    assert!(text.contains("d_H = 5"));
}

#[test]
fn equivalence_and_automorphisms() {
    let dir = tempfile::tempdir().unwrap();
    let f7 = FiniteField::prime(7).unwrap();
    let write = |name: &str, pts: Vec<Vec<u16>>| {
        let fam = projmet_core::SpanningFamily::from_coords(&f7, 2, &pts).unwrap();
        let p = dir.path().join(name);
        std::fs::write(&p, family_to_json(&fam)).unwrap();
        format!("@{}", p.display())
    };
    let a = write("a.json", vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
    let b = write("b.json", vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 3]]);
    let (code, out) = cli(&["equiv", "--family", &a, "--family", &b]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "NONE\n"));
    let v = json(&["equiv", "--family", &a, "--family", &a]);
    assert!(v["witness"].is_array());
    assert_eq!(json(&["aut", "--family", "phase_rotation:2"])["order"], 6);
    assert_eq!(cli(&["equiv", "--family", &a]).0, EXIT_USAGE);
}

#[test]
fn matroid_extension_round_trips() {
    let v = json(&["matroid", "--family", "phase_rotation:3", "--q", "3", "--extend"]);
    assert_eq!(v["closed"], false);
    let ext = family_from_json(&v["extended"].to_string()).unwrap();
    assert_eq!(ext.len(), 7);
    let (code, out) = cli(&["matroid", "--family", "hamming:3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("rank 3"));
}

#[test]
fn bounds_report_the_gap() {
    let v = json(&["bounds", "--family", "rank:2,3", "--d", "2"]);
    assert_eq!(v["mu"], serde_json::json!([0, 3, 6]));
    assert_eq!(v["singleton"], "8");
    let v = json(&["bounds", "--family", "hamming:4", "--d", "3", "--exact-anticode"]);
    assert_eq!(v["gap"], false);
    assert_eq!(v["anticode_max"], 2);
}

#[test]
fn perfect_code_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = FiniteField::prime(2).unwrap();
    let c = LinearCode::from_rows(
        &f2,
        7,
        vec![
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
    .unwrap();
    let p = dir.path().join("c.json");
    std::fs::write(&p, code_to_json(&c)).unwrap();
    let path = p.to_str().unwrap();
    let v = json(&["perfect", "--family", "phase_rotation:6", "--code", path]);
    assert_eq!((v["perfect"].clone(), v["t"].clone(), v["d_F"].clone()), (true.into(), 1.into(), 3.into()));
    let v = json(&["perfect", "--family", "hamming:7", "--code", path]);
    assert_eq!(v["perfect"], true);
    assert_eq!(cli(&["perfect", "--family", "hamming:5", "--code", path]).0, EXIT_DOMAIN);
}

#[test]
fn embed_from_weight_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.json");
    // F_2^2 with wt(10) = 2, wt(01) = 2, wt(11) = 3
    std::fs::write(&p, "[0, 2, 2, 3]").unwrap();
    let v = json(&["embed", "--weights", p.to_str().unwrap()]);
    assert_eq!(v["verified"], true);
    assert_eq!((v["r"].clone(), v["a"].clone(), v["b"].clone()), (7.into(), 4.into(), 1.into()));
    std::fs::write(&p, "[0, 1, 1, 3]").unwrap();
    assert_eq!(cli(&["embed", "--weights", p.to_str().unwrap()]).0, EXIT_DOMAIN);
}

#[test]
fn export_writes_table_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.bin");
    assert_eq!(cli(&["spheres", "--family", "hamming:2", "--q", "3", "--export", p.to_str().unwrap()]).0, EXIT_OK);
    let t = projmet_core::WeightTable::from_bytes(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(t.sphere_sizes(), &[1, 4, 4]);
}

#[test]
fn verify_replays_every_example() {
    let (code, out) = cli(&["verify"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.ends_with(&format!("{} passed, 0 failed\n", reference_examples().len())));
    let v = json(&["verify", "--seed", "99"]);
    assert_eq!(v["failed"], 0);
}
