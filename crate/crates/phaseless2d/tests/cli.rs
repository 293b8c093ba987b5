//! End-to-end tests of the `phaseless2d` binary: file round trips,
//! determinism, and exit codes.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phaseless2d"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const SMALL_SCENE: &str = r#"
k = 2.0
R = 6.0
L = 16
M = 8

[grid]
xmin = -3.0
xmax = 3.0
ymin = -3.0
ymax = 3.0
nx = 21
ny = 21

[[obstacle]]
kind = "circle"
center = [0.0, 0.0]
condition = "dirichlet"
quadrature = 64
"#;

const EMPTY_SCENE: &str = r#"
k = 2.0
R = 6.0
L = 16
M = 8

[grid]
xmin = -3.0
xmax = 3.0
ymin = -3.0
ymax = 3.0
nx = 11
ny = 11
"#;

#[test]
fn simulate_invert_roundtrip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scene.toml");
    write(&cfg, SMALL_SCENE);

    let out1 = dir.path().join("run1");
    let status = bin()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .args(["--out-dir"])
        .arg(&out1)
        .args(["--with-farfield", "--delta", "0.1", "--seed", "5"])
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out1.join("phaseless.csv").exists());
    assert!(out1.join("farfield.csv").exists());
    assert!(out1.join("manifest.txt").exists());

    // same seed -> byte-identical dataset
    let out2 = dir.path().join("run2");
    let status = bin()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .args(["--out-dir"])
        .arg(&out2)
        .args(["--with-farfield", "--delta", "0.1", "--seed", "5"])
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(
        std::fs::read(out1.join("phaseless.csv")).unwrap(),
        std::fs::read(out2.join("phaseless.csv")).unwrap()
    );

    // invert the dataset
    let inv = dir.path().join("inv");
    let status = bin()
        .args(["invert", "--config"])
        .arg(&cfg)
        .args(["--data"])
        .arg(out1.join("phaseless.csv"))
        .args(["--out-dir"])
        .arg(&inv)
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(inv.join("indicator.csv")).unwrap();
    assert!(csv.starts_with("# indicator v1"));
    let pgm = std::fs::read_to_string(inv.join("indicator.pgm")).unwrap();
    assert!(pgm.starts_with("P2"));

    // far-field reference pipeline
    let invf = dir.path().join("invf");
    let status = bin()
        .args(["invert-farfield", "--config"])
        .arg(&cfg)
        .args(["--data"])
        .arg(out1.join("farfield.csv"))
        .args(["--out-dir"])
        .arg(&invf)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(invf.join("indicator_farfield.csv").exists());
}

#[test]
fn empty_scene_gives_zero_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("empty.toml");
    write(&cfg, EMPTY_SCENE);
    let out = dir.path().join("out");
    assert!(bin()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .args(["--out-dir"])
        .arg(&out)
        .status()
        .unwrap()
        .success());
    let inv = dir.path().join("inv");
    assert!(bin()
        .args(["invert", "--config"])
        .arg(&cfg)
        .args(["--data"])
        .arg(out.join("phaseless.csv"))
        .args(["--out-dir"])
        .arg(&inv)
        .status()
        .unwrap()
        .success());
    let csv = std::fs::read_to_string(inv.join("indicator.csv")).unwrap();
    for line in csv.lines().filter(|l| !l.starts_with('#')) {
        for tok in line.split(',') {
            assert_eq!(tok.trim().parse::<f64>().unwrap(), 0.0);
        }
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // config error -> 2
    let bad = dir.path().join("bad.toml");
    write(&bad, "k = -3.0\nR = 1.0\n");
    let status = bin().args(["simulate", "--config"]).arg(&bad).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // unknown suite -> 2
    let cfg = dir.path().join("scene.toml");
    write(&cfg, SMALL_SCENE);
    let status = bin()
        .args(["validate", "--config"])
        .arg(&cfg)
        .args(["--suite", "no-such-suite"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // missing command / flags -> 2
    let status = bin().status().unwrap();
    assert_eq!(status.code(), Some(2));

    // dimension mismatch between file L and config -> numerical failure 3
    let out = dir.path().join("sim");
    assert!(bin()
        .args(["simulate", "--config"])
        .arg(&cfg)
        .args(["--out-dir"])
        .arg(&out)
        .status()
        .unwrap()
        .success());
    let cfg_l = dir.path().join("scene_l32.toml");
    write(&cfg_l, &SMALL_SCENE.replace("L = 16", "L = 32"));
    let status = bin()
        .args(["invert", "--config"])
        .arg(&cfg_l)
        .args(["--data"])
        .arg(out.join("phaseless.csv"))
        .args(["--out-dir"])
        .arg(dir.path().join("x"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    // malformed data file -> 2 (parse error)
    let garbled = dir.path().join("garbled.csv");
    write(&garbled, "not,a,dataset\n");
    let status = bin()
        .args(["invert", "--config"])
        .arg(&cfg)
        .args(["--data"])
        .arg(&garbled)
        .args(["--out-dir"])
        .arg(dir.path().join("y"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn validate_truncation_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scene.toml");
    write(&cfg, &SMALL_SCENE.replace("k = 2.0", "k = 10.0"));
    let out = dir.path().join("val");
    let status = bin()
        .args(["validate", "--config"])
        .arg(&cfg)
        .args(["--suite", "truncation", "--out-dir"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(out.join("truncation.txt").exists());
    assert!(out.join("truncation.csv").exists());
}
