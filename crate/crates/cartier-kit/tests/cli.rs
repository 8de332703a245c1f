//! End-to-end checks of the command-line interface: file handling, URI
//! handling, report shapes, output files, and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::Command;

use cartier_kit::catalog::{dual_numbers, mu_n};
use cartier_kit::exactlin::BaseRing;
use cartier_kit::hopf::dual_hopf;
use cartier_kit::io;
use cartier_kit::proalg::killed_line_tower;
use serde_json::Value;

const F3: BaseRing = BaseRing::IntegersMod(3);

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cartier-kit")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let output = Command::new(bin()).args(args).output().expect("spawn cartier-kit");
    Run {
        code: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&output.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
    }
}

fn path_arg(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

#[test]
fn check_hopf_human_and_json() {
    let mu2 = path_arg(&fixture("mu2_f3.json"));
    let human = run(&["check-hopf", &mu2]);
    assert_eq!(human.code, 0, "stderr: {}", human.stderr);
    assert!(human.stdout.contains("assoc"), "summary lines missing:\n{}", human.stdout);

    let json = run(&["check-hopf", &mu2, "--json"]);
    assert_eq!(json.code, 0);
    let report: Value = serde_json::from_str(&json.stdout).expect("valid JSON report");
    assert_eq!(report["command"], "check-hopf");
    assert_eq!(report["outcome"], "pass");
    assert_eq!(report["exit_code"], 0);
    assert_eq!(report["checks"]["assoc"], true);
    assert_eq!(report["checks"]["antipode_law"], true);
}

#[test]
fn check_hopf_rejects_corrupted_comultiplication() {
    let bad = path_arg(&fixture("mu2_f3_corrupted_comul.json"));
    let r = run(&["check-hopf", &bad, "--json"]);
    assert_eq!(r.code, 1);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["outcome"], "fail");
    assert_eq!(report["checks"]["counit_law"], false);
}

#[test]
fn dual_round_trips_to_canonical_bytes() {
    // dual applied twice through files reproduces the canonical
    // serialization of the input byte for byte.
    let tmp = tempfile::tempdir().unwrap();
    let once = tmp.path().join("once.json");
    let twice = tmp.path().join("twice.json");
    let mu2 = path_arg(&fixture("mu2_f3.json"));

    let r1 = run(&["dual", &mu2, "-o", once.to_str().unwrap()]);
    assert_eq!(r1.code, 0, "stderr: {}", r1.stderr);
    let r2 = run(&["dual", once.to_str().unwrap(), "-o", twice.to_str().unwrap()]);
    assert_eq!(r2.code, 0);

    let parsed = io::hopf_from_file(&io::read_json(&fixture("mu2_f3.json")).unwrap()).unwrap();
    let canonical = io::canonical_json(&io::hopf_to_file(&parsed));
    let round_tripped = std::fs::read_to_string(&twice).unwrap();
    assert_eq!(round_tripped, canonical);
}

#[test]
fn smash_accepts_pairing_files_and_triples() {
    let pairing = path_arg(&fixture("evaluation_pairing_f3.json"));
    let r = run(&["smash", &pairing, "--json"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["checks"]["swap_iso_verified"], true);
    assert_eq!(report["payload"]["smash"]["ring"], "Z/3");

    // The same pairing handed over as three separate files.
    let tmp = tempfile::tempdir().unwrap();
    let a = mu_n(F3, 2);
    let b = dual_hopf(&a).unwrap();
    let parsed = io::pairing_from_file(
        &io::read_json(&fixture("evaluation_pairing_f3.json")).unwrap(),
        &fixture("."),
    )
    .unwrap();
    let a_path = tmp.path().join("a.json");
    let b_path = tmp.path().join("b.json");
    let u_path = tmp.path().join("u.json");
    io::write_json(&a_path, &io::hopf_to_file(&a)).unwrap();
    io::write_json(&b_path, &io::hopf_to_file(&b)).unwrap();
    io::write_json(&u_path, &io::matrix_to_file(&parsed.u)).unwrap();
    let r3 = run(&[
        "smash",
        a_path.to_str().unwrap(),
        b_path.to_str().unwrap(),
        u_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(r3.code, 0, "stderr: {}", r3.stderr);

    // Pairing files may also reference the factors by relative path.
    let by_ref = tmp.path().join("pairing.json");
    std::fs::write(
        &by_ref,
        format!(
            "{{ \"A\": \"a.json\", \"B\": \"b.json\", \"u\": {} }}",
            std::fs::read_to_string(&u_path).unwrap()
        ),
    )
    .unwrap();
    let r4 = run(&["smash", by_ref.to_str().unwrap()]);
    assert_eq!(r4.code, 0, "stderr: {}", r4.stderr);
}

#[test]
fn smash_reports_structure_flags() {
    let trivial = path_arg(&fixture("trivial_pairing_f3.json"));
    let r = run(&["smash", &trivial]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert!(r.stdout.contains("tensor algebra     yes"), "missing flag:\n{}", r.stdout);

    let weyl = run(&["smash", "catalog:exp_pairing@3"]);
    assert_eq!(weyl.code, 0);
    assert!(
        weyl.stdout.contains("y*x = x*y + 1      pass"),
        "missing relation line:\n{}",
        weyl.stdout
    );
    let weyl_json = run(&["smash", "catalog:exp_pairing@3", "--json"]);
    let report: Value = serde_json::from_str(&weyl_json.stdout).unwrap();
    assert_eq!(report["payload"]["structure"]["tensor_algebra"], false);
    assert_eq!(report["payload"]["structure"]["weyl_relation"], true);
}

#[test]
fn smash_rejects_invalid_pairing_with_named_diagram() {
    // The bicharacter values break the evaluation pairing's unit diagram.
    let tmp = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("evaluation_pairing_f3.json")).unwrap();
    let bad_u = text.replace(
        "\"u\": { \"rows\": 1, \"cols\": 4, \"entries\": [[0, 0, \"1\"], [0, 3, \"1\"]] }",
        "\"u\": { \"rows\": 1, \"cols\": 4, \"entries\": [[0, 0, \"1\"], [0, 1, \"1\"]] }",
    );
    assert_ne!(text, bad_u, "fixture text changed; update this test");
    let path = tmp.path().join("bad.json");
    std::fs::write(&path, bad_u).unwrap();
    let r = run(&["smash", path.to_str().unwrap(), "--json"]);
    assert_eq!(r.code, 1, "stderr: {}", r.stderr);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["outcome"], "fail");
    let checks = report["checks"].as_object().unwrap();
    assert!(checks.values().any(|v| v == false), "no failing diagram named");
}

#[test]
fn points_works_with_algebra_files() {
    let tmp = tempfile::tempdir().unwrap();
    let b_path = tmp.path().join("dual_numbers.json");
    io::write_json(&b_path, &io::algebra_to_file(&dual_numbers(F3))).unwrap();
    let r = run(&[
        "points",
        "catalog:mu_3@F3",
        b_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["checks"]["bijection_verified"], true);
    assert_eq!(
        report["checks"]["points_count"],
        report["checks"]["grouplikes_count"]
    );
    let pts = report["payload"]["points"].as_array().unwrap();
    assert_eq!(pts.len(), report["checks"]["points_count"].as_u64().unwrap() as usize);
}

#[test]
fn ml_check_reports_stage_records() {
    let t_tail = path_arg(&fixture("t_tail.json"));
    let r = run(&["ml-check", &t_tail, "--window", "5", "--json"]);
    assert_eq!(r.code, 1, "the t-adic tail must not stabilize");
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["outcome"], "fail");
    let records = report["payload"]["records"].as_array().unwrap();
    assert_eq!(records.len(), 4);
    for rec in records {
        assert_eq!(rec["status"], "not_stabilized_within_window");
    }

    let human = run(&["ml-check", &t_tail, "--window", "5"]);
    assert_eq!(human.code, 1);
    assert!(human.stdout.contains("not stabilized"), "human lines:\n{}", human.stdout);
}

#[test]
fn ml_check_window_validation() {
    let t_tail = path_arg(&fixture("t_tail.json"));
    let zero = run(&["ml-check", &t_tail, "--window", "0"]);
    assert_eq!(zero.code, 2);
    assert!(!zero.stderr.is_empty(), "expected a diagnostic on stderr");

    // Without a tail the window cannot exceed the transition count.
    let tmp = tempfile::tempdir().unwrap();
    let finite = tmp.path().join("finite.json");
    let text = std::fs::read_to_string(fixture("t_tail.json")).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    let mut obj = parsed.as_object().unwrap().clone();
    obj.remove("tail");
    std::fs::write(&finite, serde_json::to_string(&obj).unwrap()).unwrap();
    let over = run(&["ml-check", finite.to_str().unwrap(), "--window", "5"]);
    assert_eq!(over.code, 2);
}

#[test]
fn proalg_quotients_and_factorization() {
    let tmp = tempfile::tempdir().unwrap();
    let tower_path = tmp.path().join("tower.json");
    io::write_json(
        &tower_path,
        &io::presentation_to_file(&killed_line_tower(F3, 4).unwrap()),
    )
    .unwrap();
    let r = run(&["proalg", tower_path.to_str().unwrap(), "--json"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let report: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report["checks"]["factorization"], true);
    let stages = report["payload"]["stage_quotients"].as_array().unwrap();
    assert_eq!(stages.len(), 2);
    // Stage 0 of the killed-line tower is a proper quotient.
    let stage0_rank = killed_line_tower(F3, 4).unwrap().ranks()[0] as u64;
    assert!(
        stages[0]["quotient_rank"].as_u64().unwrap() < stage0_rank,
        "expected a proper quotient at stage 0: {}",
        report["payload"]
    );

    let human = run(&["proalg", tower_path.to_str().unwrap()]);
    assert_eq!(human.code, 0);
    assert!(human.stdout.contains("stage 0"), "human lines:\n{}", human.stdout);
}

#[test]
fn malformed_and_missing_inputs_exit_2() {
    let malformed = path_arg(&fixture("malformed.json"));
    for subcommand in ["check-hopf", "dual"] {
        let r = run(&[subcommand, &malformed]);
        assert_eq!(r.code, 2, "{subcommand} on malformed input");
        assert!(!r.stderr.is_empty());
    }
    let missing = run(&["check-hopf", "/nonexistent/x.json"]);
    assert_eq!(missing.code, 2);
    let bad_uri = run(&["check-hopf", "catalog:mu_0@Q"]);
    assert_eq!(bad_uri.code, 2);
    let bad_ring = run(&["check-hopf", "catalog:mu_2@Z/1"]);
    assert_eq!(bad_ring.code, 2);
}

#[test]
fn out_of_range_computations_exit_2() {
    // Point enumeration needs a finite ring to terminate.
    let infinite = run(&["points", "catalog:mu_2@Q", "catalog:scalar@Q"]);
    assert_eq!(infinite.code, 2, "stderr: {}", infinite.stderr);

    // Stage quotients need a field for the row reductions.
    let tmp = tempfile::tempdir().unwrap();
    let tower = io::presentation_to_file(&killed_line_tower(F3, 4).unwrap());
    let text = serde_json::to_string(&tower).unwrap().replace("\"Z/3\"", "\"Z\"");
    let path = tmp.path().join("z_tower.json");
    std::fs::write(&path, text).unwrap();
    let non_field = run(&["proalg", path.to_str().unwrap()]);
    assert_eq!(non_field.code, 2, "stderr: {}", non_field.stderr);
}
