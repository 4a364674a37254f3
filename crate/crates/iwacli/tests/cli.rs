//! End-to-end tests of the binary: file parsing, output formats, exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use iwacli::format::{to_canonical, FlagsFile, ModuleFile, SkeletonFile};

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwacli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn diag_file() -> ModuleFile {
    // diag(X+3, 3) over Λ_{6,32}, p = 3
    ModuleFile {
        p: 3,
        precision_p: 6,
        precision_x: 32,
        u0: None,
        generators: 2,
        relations: vec![vec![vec![3, 1], vec![]], vec![vec![], vec![3]]],
        flags: None,
    }
}

fn syzygy_file() -> ModuleFile {
    // Λ² / ⟨(X, −3)⟩
    ModuleFile {
        p: 3,
        precision_p: 6,
        precision_x: 32,
        u0: None,
        generators: 2,
        relations: vec![vec![vec![0, 1], vec![-3]]],
        flags: None,
    }
}

#[test]
fn invariants_char_route_on_diagonal_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "diag.json", &to_canonical(&diag_file()));
    let out = run(&["invariants", path.to_str().unwrap(), "--route", "char"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rep = &v["reports"][0];
    assert_eq!(rep["route"], "char");
    assert_eq!(rep["mu"]["value"], 1);
    assert_eq!(rep["mu"]["certified"], true);
    assert_eq!(rep["lambda"]["value"], 1);
}

#[test]
fn invariants_growth_route_on_syzygy() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "syz.json", &to_canonical(&syzygy_file()));
    let out = run(&["invariants", path.to_str().unwrap(), "--route", "growth"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rep = &v["reports"][0];
    assert_eq!(rep["rank"], 1);
    // intercept 1 is reported as λ-plus-defect: value 1, uncertified
    assert_eq!(rep["lambda"]["value"], 1);
    assert_eq!(rep["lambda"]["certified"], false);
}

#[test]
fn invariants_free_module_rank() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = diag_file();
    f.relations.clear();
    let path = write_file(&dir, "free.json", &to_canonical(&f));
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["reports"][0]["rank"], 2);
}

#[test]
fn growth_csv_lambda_mod_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = ModuleFile {
        relations: vec![vec![vec![3]]],
        generators: 1,
        ..diag_file()
    };
    let path = write_file(&dir, "l3.json", &to_canonical(&f));
    let out = run(&["growth", path.to_str().unwrap(), "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,pn,e,delta\n0,1,1,1\n1,3,3,2\n2,9,9,6\n"
    );
}

#[test]
fn growth_csv_distinguished_degree_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = ModuleFile {
        relations: vec![vec![vec![3, 0, 1]]], // F = X² + 3
        generators: 1,
        ..diag_file()
    };
    let path = write_file(&dir, "f2.json", &to_canonical(&f));
    let out = run(&["growth", path.to_str().unwrap(), "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,pn,e,delta\n0,1,1,1\n1,3,2,1\n2,9,2,0\n"
    );
}

#[test]
fn growth_csv_free_plus_torsion() {
    let dir = tempfile::tempdir().unwrap();
    let f = ModuleFile {
        relations: vec![vec![vec![], vec![3]]], // Λ ⊕ Λ/(3)
        generators: 2,
        ..diag_file()
    };
    let path = write_file(&dir, "lplus.json", &to_canonical(&f));
    let out = run(&["growth", path.to_str().unwrap(), "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,pn,e,delta\n0,1,2,2\n1,3,6,4\n2,9,18,12\n"
    );
}

#[test]
fn growth_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let f = ModuleFile {
        relations: vec![vec![vec![3]]],
        generators: 1,
        ..diag_file()
    };
    let path = write_file(&dir, "l3.json", &to_canonical(&f));
    let out = run(&[
        "growth",
        path.to_str().unwrap(),
        "--nmax",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["p"], 3);
    assert_eq!(v["entries"][2]["e"], 9);
    assert_eq!(v["entries"][2]["delta"], 6);
}

#[test]
fn growth_budget_exhaustion_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = ModuleFile {
        relations: vec![vec![vec![3]]],
        generators: 1,
        ..diag_file()
    };
    let path = write_file(&dir, "l3.json", &to_canonical(&f));
    let out = run(&["growth", path.to_str().unwrap(), "--nmax", "12"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_zero_trials_passes() {
    let out = run(&["verify", "congruence", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["trials"], 0);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_unknown_suite_exits_3() {
    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_error_exits_3_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "bad.json", "{ not json");
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line") && err.contains("column"), "{}", err);
}

#[test]
fn missing_file_exits_3() {
    let out = run(&["invariants", "/nonexistent/nowhere.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn module_file_round_trip_is_byte_identical() {
    let mut f = diag_file();
    f.flags = Some(FlagsFile {
        no_finite_submodule: Some("certified".into()),
        elementary_iso: None,
    });
    let canonical = to_canonical(&f);
    let parsed: ModuleFile = serde_json::from_str(&canonical).unwrap();
    assert_eq!(to_canonical(&parsed), canonical);
    // and through the core type
    let m = f.to_module().unwrap();
    assert_eq!(to_canonical(&ModuleFile::from_module(&m)), canonical);
}

#[test]
fn skeleton_file_round_trip_is_byte_identical() {
    let s = SkeletonFile {
        label: "pair-f".into(),
        module: syzygy_file(),
        local_lambdas: [("v1".to_string(), 2u64), ("v2".to_string(), 1)]
            .into_iter()
            .collect(),
        expected_corank: 0,
        ck_lambda: Some(1),
    };
    let canonical = to_canonical(&s);
    let parsed: SkeletonFile = serde_json::from_str(&canonical).unwrap();
    assert_eq!(to_canonical(&parsed), canonical);
    assert_eq!(parsed.to_skeleton().unwrap().delta(), 3);
}

#[test]
fn invariants_accepts_skeleton_files() {
    let dir = tempfile::tempdir().unwrap();
    let s = SkeletonFile {
        label: "inline".into(),
        module: diag_file(),
        local_lambdas: Default::default(),
        expected_corank: 0,
        ck_lambda: None,
    };
    let path = write_file(&dir, "skel.json", &to_canonical(&s));
    let out = run(&["invariants", path.to_str().unwrap(), "--route", "char"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["reports"][0]["mu"]["value"], 1);
}

#[test]
fn skeleton_corank_bound_enforced_on_load() {
    let s = SkeletonFile {
        label: "bad".into(),
        module: diag_file(),
        local_lambdas: Default::default(),
        expected_corank: 2,
        ck_lambda: None,
    };
    assert!(s.to_skeleton().is_err());
}
