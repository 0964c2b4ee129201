use std::path::PathBuf;
use std::process::Command;

use gradedrep::fixtures::by_name;
use gradedrep::io::Problem;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradedrep")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn fixture_files_are_canonical_and_match_the_builders() {
    for name in ["fix_a", "fix_b", "fix_c", "fix_c_ray", "fix_d", "fix_d_closed", "string_square"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let p = Problem::from_str(&text).unwrap();
        assert_eq!(p.to_canonical(), text, "{name} is not in canonical form");
        let alg = by_name(name).unwrap();
        assert_eq!(p.algebra.quiver(), alg.quiver(), "{name}");
        assert_eq!(p.algebra.relations(), alg.relations(), "{name}");
        for m in p.modules.keys() {
            p.module(m).unwrap();
        }
    }
}

#[test]
fn cli_exit_codes() {
    let b = fixture("fix_b");
    let b = b.to_str().unwrap();
    assert_eq!(run(&["validate", "--problem", b]).0, 0);
    let (code, out, _) = run(&["ars", "--problem", b, "--module", "S1", "--direction", "ending", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certificate"]["pass"], true);
    // No almost split sequence ends at a projective.
    assert_eq!(run(&["ars", "--problem", b, "--module", "P1", "--direction", "ending"]).0, 1);
    assert_eq!(run(&["hom", "--problem", b, "--module", "S1", "--other", "nope"]).0, 2);
    assert_eq!(run(&["dims", "--problem", "/nonexistent.json", "--module", "S1"]).0, 2);
}

#[test]
fn malformed_input_reports_position() {
    let dir = std::env::temp_dir().join(format!("gradedrep-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"field\": \"Q\",\n  \"quiver\": [\n}\n").unwrap();
    let (code, _, err) = run(&["validate", "--problem", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pd_on_fix_d_reports_unknown_injective_dimensions() {
    let d = fixture("fix_d");
    let (code, out, _) = run(&["pd", "--problem", d.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let text = v.to_string();
    assert!(text.contains("unknown-at-cap"), "{text}");
}
