//! End-to-end tests of the `dgtor` binary: exit codes, report determinism,
//! and the spec-file path.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dgtor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgtor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_spec(name: &str, text: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("dgtor-test-{name}-{}.span", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

const CYCLIC4: &str = "\
name = cyclic4
ring = Z
max_degree = 8
outputs = poincare bigraded torsion products

[base]
u : 2

[left]

[right]
v : 2

[left_map]
u -> 0

[right_map]
u -> 4*v
";

#[test]
fn compute_runs_a_spec_file_and_writes_json() {
    let path = write_spec("cyclic4", CYCLIC4);
    let json_path = path.with_extension("json");
    let out = dgtor(&[
        "compute",
        path.to_str().unwrap(),
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cyclic4"));
    // H(BZ/4): torsion 4 in positive even degrees
    assert!(text.contains("    2     0  4"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(json["ring"], "Z");
    assert_eq!(json["poincare"][2]["torsion"][0], "4");
    assert!(json.get("timing").is_none(), "no timing unless requested");
    std::fs::remove_file(&path).ok();
    std::fs::remove_file(&json_path).ok();
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = dgtor(&["fixture", "cyclic_group(3)", "--max-degree", "6"]);
    let b = dgtor(&["fixture", "cyclic_group(3)", "--max-degree", "6"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validation_errors_exit_with_code_two() {
    // degree-1 base generator violates 1-connectedness
    let path = write_spec("bad-degree", &CYCLIC4.replace("u : 2", "u : 1"));
    let out = dgtor(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();

    // map image of the wrong degree
    let path = write_spec("bad-image", &CYCLIC4.replace("u -> 4*v", "u -> v^3"));
    let out = dgtor(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("degree"), "{err}");
    std::fs::remove_file(&path).ok();

    let out = dgtor(&["fixture", "not_a_fixture"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_guard_aborts_with_code_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_dgtor"))
        .args(["fixture", "free_loop_cp_infty"])
        .env("DGTOR_MAX_CELLS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("resource"), "{err}");
}

#[test]
fn list_fixtures_names_the_registry() {
    let out = dgtor(&["list-fixtures"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "loop_cp_infty",
        "free_loop_cp_infty",
        "su4_u1",
        "cyclic_group(n)",
        "rp_infinity_f2",
        "random_poly_span(seed)",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn ring_override_rejects_odd_polynomial_generators_outside_char_two() {
    let out = dgtor(&["fixture", "rp_infinity_f2", "--ring", "Q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn su4_fixture_reports_the_integral_torsion_table() {
    let out = dgtor(&["fixture", "su4_u1", "--max-degree", "12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("    4     0  6"), "Z/6 in degree 4:\n{text}");
    assert!(text.contains("    6     0  2"), "Z/2 in degree 6:\n{text}");
    assert!(text.contains("    7     2  -"), "Z² in degree 7:\n{text}");
    assert!(text.contains("   11     0  6"), "Z/6 in degree 11:\n{text}");
}

#[test]
fn shipped_spec_files_parse_and_run() {
    let specs_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    let mut found = 0;
    for entry in std::fs::read_dir(&specs_dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("span") {
            continue;
        }
        found += 1;
        let out = dgtor(&["compute", path.to_str().unwrap(), "--max-degree", "8"]);
        assert!(
            out.status.success(),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert!(found >= 2, "shipped spec files present");
}
