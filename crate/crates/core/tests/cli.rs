//! End-to-end tests of the `almostfree` binary: subcommands, file formats,
//! exit codes.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_almostfree"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("almostfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const K3: &str = "c triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n";
const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";

#[test]
fn decide_exit_codes_encode_verdicts() {
    let k3 = write_temp("k3.col", K3);
    let k4 = write_temp("k4.col", K4);
    let out = bin().args(["decide"]).arg(&k4).args(["-k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let out = bin().args(["decide"]).arg(&k3).args(["-k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(10));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("NotAlmostFree"));
    assert!(text.contains("v 1 0"));
}

#[test]
fn malformed_graph_exits_2_with_line() {
    let bad = write_temp("bad.col", "p edge 2 1\ne 1 1\n");
    let out = bin().args(["decide"]).arg(&bad).args(["-k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn k_below_two_is_rejected_with_message() {
    let k3 = write_temp("k3b.col", K3);
    let out = bin().args(["encode"]).arg(&k3).args(["-k", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("k >= 2"), "{err}");
}

#[test]
fn encode_output_reparses_byte_identically() {
    let k3 = write_temp("k3c.col", K3);
    let out = bin().args(["encode"]).arg(&k3).args(["-k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let algebra = almostfree::algebra::format::parse_algebra(&text).unwrap();
    assert_eq!(almostfree::algebra::format::algebra_to_string(&algebra), text);
}

#[test]
fn verify_accept_reject_malformed() {
    let k3 = write_temp("k3d.col", K3);
    let good = write_temp("good.cert", "cert k=2\nv 1 0\nv 2 1\nv 3 2\n");
    let bad = write_temp("badcol.cert", "cert k=2\nv 1 0\nv 2 0\nv 3 2\n");
    let missing = write_temp("missing.cert", "cert k=2\nv 1 0\nv 2 1\n");

    let out = bin().args(["verify"]).arg(&k3).args(["-c"]).arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["verify"]).arg(&k3).args(["-c"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(10));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(1,2)"), "{text}");
    let out = bin().args(["verify"]).arg(&k3).args(["-c"]).arg(&missing).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_works_on_algebra_files_and_raw_certificates() {
    let k3 = write_temp("k3e.col", K3);
    let enc = bin().args(["encode"]).arg(&k3).args(["-k", "2"]).output().unwrap();
    let algebra_file = write_temp("k3.sullivan", &String::from_utf8(enc.stdout).unwrap());
    let raw = write_temp("raw.cert", "cert k=2\ne 1 0\ne 2 1\ne 3 2\n");
    let out = bin()
        .args(["verify"])
        .arg(&algebra_file)
        .args(["-c"])
        .arg(&raw)
        .args(["--porcelain"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("accepted=true"));
}

#[test]
fn construct_emits_action_file() {
    let k3 = write_temp("k3f.col", K3);
    let out = bin().args(["construct"]).arg(&k3).args(["-k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("action k=2 r=3\n"));
    let action = almostfree::borel::parse_action(&text).unwrap();
    assert_eq!(action.spheres.len(), 3);
}

#[test]
fn construct_emit_model_is_a_valid_algebra() {
    let k3 = write_temp("k3h.col", K3);
    let out = bin()
        .args(["construct"])
        .arg(&k3)
        .args(["-k", "2", "--emit-model"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let algebra = almostfree::algebra::format::parse_algebra(&text).unwrap();
    assert!(algebra.check_well_formed().is_valid());
    // torus generators plus three spheres of 15 generators each
    assert_eq!(algebra.generator_count(), 3 + 3 * 15);
}

#[test]
fn check_borel_passes_for_triangle() {
    let k3 = write_temp("k3g.col", K3);
    let out = bin()
        .args(["check-borel"])
        .arg(&k3)
        .args(["-k", "2", "--porcelain"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kernel_ok=true"));
    assert!(text.contains("ok=true"));
}

#[test]
fn betti_table_matches_worked_example() {
    // K2, k=2, cutoff 6: 1, 0, 2, 0, 2, 0, 2
    let k2 = write_temp("k2.col", "p edge 2 1\ne 1 2\n");
    let out = bin()
        .args(["betti"])
        .arg(&k2)
        .args(["-k", "2", "--cutoff", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "H^0 1\nH^1 0\nH^2 2\nH^3 0\nH^4 2\nH^5 0\nH^6 2\n");
}

#[test]
fn disconnected_warns_by_default_and_fails_with_flag() {
    let two = write_temp("two.col", "p edge 4 2\ne 1 2\ne 3 4\n");
    let out = bin().args(["decide"]).arg(&two).args(["-k", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(10)); // 3-colorable, NotAlmostFree
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
    let out = bin()
        .args(["decide"])
        .arg(&two)
        .args(["-k", "2", "--require-connected"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cross_check_and_dump_groebner() {
    let k4 = write_temp("k4b.col", K4);
    let out = bin()
        .args(["decide"])
        .arg(&k4)
        .args(["-k", "2", "--cross-check", "--dump-groebner", "--porcelain"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("groebner order=grevlex"));
    assert!(text.contains("verdict=AlmostFree"));
}

#[test]
fn selftest_passes() {
    let out = bin().args(["selftest"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}
