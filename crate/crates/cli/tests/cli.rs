use std::path::PathBuf;
use std::process::{Command, Output};

fn lspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn surgery_reports_the_poincare_sphere() {
    let o = lspace(&["surgery", "--link", "whitehead", "--framing", "1", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("total 1"), "{text}");
    assert!(text.contains("verdict: L-space"), "{text}");

    let o = lspace(&["--json", "surgery", "--link", "L_3", "--framing", "1", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 25);
    assert_eq!(v["lspace"], false);
}

#[test]
fn exit_codes() {
    let obstructed = lspace(&["surgery", "--link", "l7n2", "--framing", "1", "1"]);
    assert_eq!(obstructed.status.code(), Some(2));
    let unsupported = lspace(&[
        "surgery",
        "--link",
        "T(2,4)",
        "--framing",
        "0",
        "-3",
        "--shape",
        "parallelogram",
    ]);
    assert_eq!(unsupported.status.code(), Some(3));
    let degenerate = lspace(&["surgery", "--link", "hopf", "--framing", "1", "1"]);
    assert_eq!(degenerate.status.code(), Some(1));
    let unknown = lspace(&["surgery", "--link", "no-such-link", "--framing", "1", "1"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert_eq!(
        lspace(&["obstruct", "--link", "l7n2"]).status.code(),
        Some(2)
    );
    assert!(lspace(&["obstruct", "--link", "L_2"]).status.success());
}

#[test]
fn zero_coefficient_framings_are_computed() {
    let o = lspace(&[
        "--json",
        "surgery",
        "--link",
        "T(2,4)",
        "--framing",
        "0",
        "-3",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["det"], -4);
    let o = lspace(&["--json", "surgery", "--link", "hopf", "--framing", "0", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 1);
}

/// Whitehead-shaped, with every coefficient doubled: fails the gate, but its n-values are
/// non-negative so the complexes can still be built.
const DOUBLED: &str = r#"{"name": "doubled", "lk": 0,
    "delta": [[1, 1, -2], [1, -1, 2], [-1, 1, 2], [-1, -1, -2]],
    "delta_c1": [[0, 1]], "delta_c2": [[0, 1]]}"#;

#[test]
fn force_stamps_output_unreliable() {
    let path = scratch("doubled.json");
    std::fs::write(&path, DOUBLED).unwrap();
    let link = path.to_str().unwrap();
    let gated = lspace(&["surgery", "--link", link, "--framing", "1", "1"]);
    assert_eq!(gated.status.code(), Some(2));
    for args in [
        vec!["--force", "surgery", "--link", link, "--framing", "1", "1"],
        vec!["--force", "nu", "--link", link],
        vec!["--force", "classify", "--link", link, "--range", "-2", "2"],
    ] {
        let o = lspace(&args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).starts_with("UNRELIABLE"), "{args:?}");
    }
    let o = lspace(&[
        "--force",
        "--json",
        "surgery",
        "--link",
        link,
        "--framing",
        "1",
        "1",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["unreliable"], true);
    // Negative n-values are still refused under --force.
    let o = lspace(&["--force", "nu", "--link", "l7n2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_formats() {
    let o = lspace(&["classify", "--link", "whitehead", "--range", "-3", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches('L').count(), 9, "{text}");

    let out = scratch("wh.svg");
    let o = lspace(&[
        "classify",
        "--link",
        "whitehead",
        "--range",
        "-3",
        "3",
        "--format",
        "svg",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));

    let o = lspace(&[
        "classify", "--link", "hopf", "--range", "1", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
}

#[test]
fn nmatrix_and_nu() {
    let o = lspace(&["--json", "nmatrix", "--link", "L_1", "--window", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["values"][1][1], 1);
    let o = lspace(&["--json", "nu", "--link", "L_3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["b"], 3);
}

#[test]
fn torus_compare_agrees() {
    let o = lspace(&["torus", "--n", "3", "--range", "-12", "12", "--compare"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 disagreements"));
    let o = lspace(&["--json", "torus", "--n", "2", "--range", "2", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
}

#[test]
fn propagate_reads_seed_files() {
    let seeds = scratch("seeds.json");
    std::fs::write(
        &seeds,
        r#"{"lk": 0, "components": ["unknot", "unknot"], "seeds": [[1, 1]], "range": [-3, 3]}"#,
    )
    .unwrap();
    let o = lspace(&["--json", "propagate", "--seeds", seeds.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);

    std::fs::write(&seeds, "{").unwrap();
    let o = lspace(&["propagate", "--seeds", seeds.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exported_descriptors_load_back() {
    let path = scratch("wh.json");
    let o = lspace(&["export", "--link", "whitehead"]);
    std::fs::write(&path, &o.stdout).unwrap();
    let o = lspace(&[
        "surgery",
        "--link",
        path.to_str().unwrap(),
        "--framing",
        "2",
        "3",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: L-space"));
}
