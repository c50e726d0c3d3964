use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pwtri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwtri")).args(args).output().expect("spawn pwtri")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C4: &str = "p tw 4 4\n1 2\n2 3\n3 4\n4 1\n";
const K4: &str = "p tw 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
const STAR5: &str = "p tw 6 5\n1 2\n1 3\n1 4\n1 5\n1 6\n";

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn square_in_2conn_mode_becomes_k4() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c4.gr", C4);
    let rep = dir.path().join("r.json");
    let out = dir.path().join("out.gr");
    let td = dir.path().join("out.td");
    let o = pwtri(&[
        "triangulate",
        "--input",
        s(&input),
        "--mode",
        "2conn",
        "--report",
        s(&rep),
        "-o",
        s(&out),
        "--out-td",
        s(&td),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&rep);
    assert_eq!(r["bound"], 11);
    assert_eq!(r["oracle_output_width"], 3);
    assert_eq!(r["all_green"], true);
    let g = fs::read_to_string(&out).unwrap();
    assert!(g.starts_with("p tw 4 6\n"));
    let v = pwtri(&["validate", "--input", s(&out), "--td", s(&td)]);
    assert!(v.status.success());
    assert!(stdout(&v).starts_with("valid width "));
    let pw = pwtri(&["pathwidth", "--input", s(&out)]);
    assert_eq!(stdout(&pw).trim(), "3");
}

#[test]
fn star_in_outerplanar_mode_becomes_a_fan() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "star5.gr", STAR5);
    let rep = dir.path().join("r.json");
    let o = pwtri(&["triangulate", "--input", s(&input), "--mode", "outerplanar", "--report", s(&rep)]);
    assert!(o.status.success());
    let r = report(&rep);
    assert_eq!(r["maximal_outerplanar"], true);
    assert_eq!(r["oracle_output_width"], 2);
    assert_eq!(r["bound"], 8);
    assert!(stdout(&o).starts_with("p tw 6 9\n"));
}

#[test]
fn octahedron_in_3conn_mode_keeps_its_width() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("p tw 6 12\n");
    for a in 1..=6 {
        for b in a + 1..=6 {
            // opposite vertices are 1-2, 3-4, 5-6
            if (a + 1) / 2 != (b + 1) / 2 {
                text += &format!("{a} {b}\n");
            }
        }
    }
    let input = write(&dir, "oct.gr", &text);
    let rep = dir.path().join("r.json");
    let o = pwtri(&["triangulate", "--input", s(&input), "--mode", "3conn", "--report", s(&rep)]);
    assert!(o.status.success());
    let r = report(&rep);
    assert_eq!(r["width_preserved"], true);
    assert_eq!(r["output_width"], 4);
    assert_eq!(r["oracle_output_width"], 4);
}

#[test]
fn triangulate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = pwtri(&["generate", "--family", "random-block-tree", "--n", "12", "--seed", "7"]);
    let input = write(&dir, "g.gr", &stdout(&g));
    let a = pwtri(&["triangulate", "--input", s(&input)]);
    let b = pwtri(&["triangulate", "--input", s(&input)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn given_decomposition_is_used() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c4.gr", C4);
    let td = write(&dir, "c4.td", "s td 2 3 4\nb 1 1 2 4\nb 2 2 3 4\n1 2\n");
    let rep = dir.path().join("r.json");
    let o = pwtri(&["triangulate", "--input", s(&input), "--td", s(&td), "--report", s(&rep)]);
    assert!(o.status.success());
    assert_eq!(report(&rep)["decomposition_source"], "given");
}

#[test]
fn generate_is_reproducible() {
    let a = pwtri(&["generate", "--family", "random-planar", "--n", "15", "--seed", "3"]);
    let b = pwtri(&["generate", "--family", "random-planar", "--n", "15", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c4 = stdout(&pwtri(&["generate", "--family", "cycle", "--n", "4"]));
    assert!(c4.starts_with("p tw 4 4\n"));
    let grid = stdout(&pwtri(&["generate", "--family", "grid", "--n", "3"]));
    assert!(grid.starts_with("p tw 9 12\n"));
    assert!(!pwtri(&["generate", "--family", "nope", "--n", "3"]).status.success());
}

#[test]
fn pathwidth_known_values() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.gr", C4);
    let k4 = write(&dir, "k4.gr", K4);
    assert_eq!(stdout(&pwtri(&["pathwidth", "--input", s(&c4)])).trim(), "2");
    assert_eq!(stdout(&pwtri(&["pathwidth", "--input", s(&k4)])).trim(), "3");
}

#[test]
fn node_cap_is_respected() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.gr", C4);
    let o = Command::new(env!("CARGO_BIN_EXE_pwtri"))
        .args(["pathwidth", "--input", s(&c4)])
        .env("PWTRI_NODE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn invalid_decomposition_is_reported() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.gr", C4);
    let td = write(&dir, "bad.td", "s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n");
    let o = pwtri(&["validate", "--input", s(&c4), "--td", s(&td)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = TempDir::new().unwrap();
    let lp = write(&dir, "loop.gr", "p tw 2 1\n1 1\n");
    assert_eq!(pwtri(&["pathwidth", "--input", s(&lp)]).status.code(), Some(2));
    let mut k5 = String::from("p tw 5 10\n");
    for a in 1..=5 {
        for b in a + 1..=5 {
            k5 += &format!("{a} {b}\n");
        }
    }
    let k5 = write(&dir, "k5.gr", &k5);
    let o = pwtri(&["triangulate", "--input", s(&k5)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not planar"));
    let c4 = write(&dir, "c4.gr", C4);
    assert_eq!(pwtri(&["triangulate", "--input", s(&c4), "--mode", "3conn"]).status.code(), Some(2));
}

#[test]
fn debug_tokens_fills_the_ledger() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.gr", C4);
    let rep = dir.path().join("r.json");
    let o = pwtri(&["triangulate", "--input", s(&c4), "--debug-tokens", "--report", s(&rep)]);
    assert!(o.status.success());
    let r = report(&rep);
    assert_eq!(r["ledger"]["invariant_held"], true);
}
