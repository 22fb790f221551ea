use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cayley-spectra"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn census_c27() {
    let (code, out) = run(&["census", "--group", "C27"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["total"], 920);
}

#[test]
fn dihedral_compare_example() {
    let (code, out) = run(&[
        "compare",
        "--a",
        "D26:a,ab,ab^2,ab^6,ab^8,ab^11",
        "--b",
        "D26:a,ab^2,ab^4,ab^5,ab^10,ab^11",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(
        (v["cospectral"].as_bool(), v["isomorphic"].as_bool()),
        (Some(true), Some(false))
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-verb"]).0, 2);
    assert_eq!(run(&["search", "--order", "8", "--frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "paper", "--section", "dihedral"]).0, 0);
    assert_eq!(run(&["verify", "paper", "--section", "order-32"]).0, 1);
}

#[test]
fn deterministic_output() {
    let a = run(&["search", "--order", "12", "--connected", "--jobs", "1"]);
    let b = run(&["search", "--order", "12", "--connected", "--jobs", "4"]);
    assert_eq!(a, b);
    let c = run(&["dihedral-pair", "--prime", "31"]);
    assert_eq!(c, run(&["dihedral-pair", "--prime", "31"]));
}

#[test]
fn fixture_override_directory() {
    let dir = std::env::temp_dir().join(format!("cs-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::copy(
        src.join("cospectral_tables.json"),
        dir.join("cospectral_tables.json"),
    )
    .unwrap();
    // A tampered pair file fails its checksum.
    let pair = std::fs::read_to_string(src.join("regular10_pair.json")).unwrap();
    std::fs::write(dir.join("regular10_pair.json"), format!("{pair}\n")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cayley-spectra"))
        .args(["verify", "paper", "--section", "regular10"])
        .env("SPECTRAL_CAYLEY_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("sha256"));
    std::fs::remove_dir_all(&dir).unwrap();
}
