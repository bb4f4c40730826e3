//! End-to-end checks of the binary: exit codes, determinism, and the file
//! round trip between `construct` and `verify-ft`.

use std::path::Path;
use std::process::{Command, Output};

fn symdes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdes"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn params_check_surviving_design() {
    let out = symdes(&["params", "check", "11", "5", "2"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3);
    assert!(stdout.contains("\"verdict\":\"prime-order\""));
    assert!(stdout.contains("\"verdict\":\"pass\""));
}

#[test]
fn brc_fails_for_order_six_plane() {
    let out = symdes(&["brc", "43", "7", "1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"verdict\":\"fail\""));
    assert!(stdout.contains("\"obstruction_modulus\":3"));
}

#[test]
fn order_family_specs() {
    let out = symdes(&["order", "PSL(2,11)"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"order\":\"660\""));

    let out = symdes(&["order", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_is_exit_2() {
    let out = symdes(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn searches_exit_zero_with_rejections() {
    for which in ["alt-intransitive", "alt-imprimitive", "m6"] {
        let out = symdes(&["search", which]);
        assert!(out.status.success(), "search {which}");
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(!stdout.contains("\"verdict\":\"survivor\""), "search {which}");
    }
}

#[test]
fn table2_exit_zero() {
    let out = symdes(&["table2"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 4);
}

#[test]
fn report_all_is_deterministic_and_green() {
    let first = symdes(&["report", "all"]);
    assert!(first.status.success());
    let second = symdes(&["report", "all"]);
    assert_eq!(first.stdout, second.stdout, "byte-identical across runs");
}

#[test]
fn scan_known_predicate() {
    let out = symdes(&["scan", "3.6.1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"verdict\":\"empty\""));

    let out = symdes(&["scan", "0.0.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_output_mode() {
    let out = symdes(&["table2", "--csv"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("paper_ref,verdict,reasons,inputs,derived"));
}

#[test]
fn construct_verify_round_trip() {
    let dir = std::env::temp_dir().join("symdes-cli-test");
    let _ = std::fs::remove_dir_all(&dir);
    let out = symdes(&["construct", "biplane11", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(Path::new(&dir.join("biplane11.blocks")).exists());

    let out = symdes(&[
        "verify-ft",
        dir.join("biplane11.blocks").to_str().unwrap(),
        dir.join("biplane11.gens").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"verdict\":\"flag-transitive\""));
    assert!(stdout.contains("\"group_order\":\"660\""));

    // a generator set too small to be flag-transitive exits 1
    std::fs::write(dir.join("translation.gens"), "1 2 3 4 5 6 7 8 9 10 0\n").unwrap();
    let out = symdes(&[
        "verify-ft",
        dir.join("biplane11.blocks").to_str().unwrap(),
        dir.join("translation.gens").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn grid_override_from_toml() {
    let dir = std::env::temp_dir().join("symdes-cli-grid");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("grid.toml");
    std::fs::write(&cfg, "[grid]\nm = [5, 8]\nq = [2, 4]\n").unwrap();
    let out = symdes(&["scan", "3.3.1", "--grid", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let header: serde_json::Value =
        serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(header["inputs"]["points_scanned"], serde_json::json!(24));
}
