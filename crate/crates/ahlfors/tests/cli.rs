use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ahlfors::formats::report::{DiagnosticDoc, FitDoc, SuiteDoc, TreeReportDoc};
use ahlfors::formats::{self, parse_tree, read_cloud, read_curve, tree_to_string, write_cloud, write_curve};
use ahlfors::Manifest;
use serde_json::Value;

fn systems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../systems")
}

/// Runs the binary inside `dir`, so relative paths stay relative.
fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahlfors"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    run(dir, args).status.code().expect("exited normally")
}

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for name in ["cantor13.json", "two_three.json", "sierpinski.json", "golden_mean.json"] {
        fs::copy(systems().join(name), dir.path().join(name)).unwrap();
    }
    dir
}

fn cloud_len(path: &Path) -> usize {
    read_cloud(&fs::read(path).unwrap()[..]).unwrap().len()
}

#[test]
fn gen_follows_the_cut_rule() {
    let dir = workdir();
    let d = dir.path();
    ok(d, &["gen", "--ifs", "cantor13.json", "--delta", "1e-4", "-o", "cantor.pts"]);
    let depth = (1e4f64.ln() / 3f64.ln()).ceil() as u32;
    assert_eq!(cloud_len(&d.join("cantor.pts")), 1 << depth);
    ok(d, &["gen", "--ifs", "sierpinski.json", "--delta", "0.5", "-o", "s.pts"]);
    assert_eq!(cloud_len(&d.join("s.pts")), 3);

    let m: Manifest = serde_json::from_str(&fs::read_to_string(d.join("s.pts.manifest.json")).unwrap()).unwrap();
    assert_eq!(m.command, "gen");
    assert_eq!(m.config["args"]["delta"], 0.5);
    assert_eq!(m.config["global"]["threads"], 1);
    assert_eq!(m.outputs, ["s.pts"]);
}

#[test]
fn exit_codes() {
    let dir = workdir();
    let d = dir.path();
    assert_eq!(code(d, &["gen", "--ifs", "sierpinski.json", "--delta", "-1", "-o", "x.pts"]), 2);
    assert_eq!(code(d, &["gen", "--ifs", "missing.json", "--delta", "0.1", "-o", "x.pts"]), 2);
    assert_eq!(code(d, &["gen", "--ifs", "sierpinski.json", "--delta", "0.1"]), 2);
    fs::write(d.join("broken.json"), "{\"ifs\":").unwrap();
    assert_eq!(code(d, &["gen", "--ifs", "broken.json", "--delta", "0.1", "-o", "x.pts"]), 2);

    fs::write(
        d.join("overlap.json"),
        r#"{"ifs": {"maps": [{"ratio": 0.6, "translation": [0]}, {"ratio": 0.6, "translation": [0.4]}],
                    "witness": [{"kind": "box", "lo": [0], "hi": [1]}]}}"#,
    )
    .unwrap();
    assert_eq!(code(d, &["gen", "--ifs", "overlap.json", "--delta", "0.1", "-o", "x.pts"]), 0);
    assert_eq!(
        code(d, &["gen", "--ifs", "overlap.json", "--delta", "0.1", "--require-osc", "-o", "x.pts"]),
        3
    );

    ok(d, &["gen", "--ifs", "cantor13.json", "--delta", "1e-3", "-o", "c.pts"]);
    let count = ["count", "--fn", "separated", "--cloud"];
    assert_eq!(code(d, &[&count[..], &["nope.pts", "--emax", "0.3", "--emin", "1e-2", "-o", "c.csv"]].concat()), 2);
    assert_eq!(code(d, &[&count[..], &["c.pts", "--emax", "0.3", "--emin", "1e-4", "-o", "c.csv"]].concat()), 3);

    assert_eq!(
        code(d, &["renewal", "--system", "golden_mean.json", "--amax", "30", "--budget-nodes", "1000"]),
        4
    );
    fs::write(d.join("reducible.json"), r#"{"transition": [[1, 0], [0, 1]]}"#).unwrap();
    assert_eq!(code(d, &["renewal", "--system", "reducible.json", "--amax", "5"]), 3);

    fs::write(d.join("inside.json"), r#"{"map": {"kind": "inversion", "center": [0.5], "radius": 1}}"#).unwrap();
    assert_eq!(code(d, &["transform", "--cloud", "c.pts", "--map", "inside.json", "-o", "i.pts"]), 2);
}

#[test]
fn counting_pipeline() {
    let dir = workdir();
    let d = dir.path();
    ok(d, &["gen", "--ifs", "cantor13.json", "--delta", "1e-4", "-o", "cantor.pts"]);
    ok(d, &["count", "--fn", "separated", "--cloud", "cantor.pts", "--emax", "0.3", "--emin", "1e-3", "-o", "c.csv"]);
    let (curve, s) = read_curve(fs::File::open(d.join("c.csv")).unwrap()).unwrap();
    assert!(curve.is_monotone());
    assert!(curve.len() > 90);

    let fit: FitDoc = serde_json::from_str(&ok(d, &["dim", "--curve", "c.csv"])).unwrap();
    assert_eq!(fit.s_hat.to_bits(), s.to_bits());
    assert!((fit.s_hat - 2f64.ln() / 3f64.ln()).abs() < 0.05, "{}", fit.s_hat);

    let text = ok(d, &["limit", "--curve", "c.csv", "--s", "0.6309297535714574"]);
    let diag: DiagnosticDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(diag.s, 0.6309297535714574);
    assert!(diag.window[0] < diag.window[1]);
    assert_eq!(diag.verdict, "oscillating");
    assert_eq!(formats::report::to_json(&diag), text);
    let v: Value = serde_json::from_str(&text).unwrap();
    for key in ["s", "mean", "amplitude", "period", "verdict", "window", "config"] {
        assert!(v.get(key).is_some(), "{key}");
    }

    ok(d, &["count", "--fn", "minkowski", "--cloud", "cantor.pts", "--emax", "0.3", "--emin", "1e-3", "--ppd", "8", "--s", "0.63", "-o", "m.csv"]);
    let (m, s) = read_curve(fs::File::open(d.join("m.csv")).unwrap()).unwrap();
    assert_eq!(s, 0.63);
    let body = fs::read_to_string(d.join("m.csv")).unwrap();
    let row: Vec<&str> = body.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "minkowski");
    let (e, n) = m.points[0];
    assert_eq!(row[3].parse::<f64>().unwrap(), e.powf(0.63) * n);
}

#[test]
fn written_files_read_back_exactly() {
    let dir = workdir();
    let d = dir.path();
    ok(d, &["gen", "--ifs", "sierpinski.json", "--delta", "0.01", "-o", "s.pts"]);
    let bytes = fs::read(d.join("s.pts")).unwrap();
    let cloud = read_cloud(&bytes[..]).unwrap();
    let mut again = Vec::new();
    write_cloud(&mut again, &cloud).unwrap();
    assert_eq!(again, bytes);

    ok(d, &["count", "--fn", "covering", "--cloud", "s.pts", "--emax", "0.3", "--emin", "0.03", "--ppd", "10", "--s", "1.58", "-o", "c.csv"]);
    let bytes = fs::read(d.join("c.csv")).unwrap();
    let (curve, s) = read_curve(&bytes[..]).unwrap();
    let mut again = Vec::new();
    write_curve(&mut again, &curve, s).unwrap();
    assert_eq!(again, bytes);

    ok(d, &["tree", "build", "--mode", "ifs", "--ifs", "sierpinski.json", "--x0", "0.5,0.28867513459481287", "--depth", "4", "-o", "t.json"]);
    ok(d, &["tree", "power", "--tree", "t.json", "--m", "2", "-o", "p.json"]);
    for name in ["t.json", "p.json"] {
        let text = fs::read_to_string(d.join(name)).unwrap();
        let tree = parse_tree(&text).unwrap().to_tree().unwrap();
        assert_eq!(tree_to_string(&tree), text);
    }

    fs::write(
        d.join("mobius.json"),
        r#"{"map": {"kind": "mobius", "a": [1, 0], "b": [0, 0], "c": [0.2, 0.1], "d": [1, 0]}}"#,
    )
    .unwrap();
    ok(d, &["transform", "--cloud", "s.pts", "--map", "mobius.json", "-o", "i.pts"]);
    let bytes = fs::read(d.join("i.pts")).unwrap();
    let image = read_cloud(&bytes[..]).unwrap();
    assert_eq!(image.len(), cloud.len());
    assert!(image.resolution() > cloud.resolution());
    assert_ne!(code(d, &["transform", "--cloud", "s.pts", "--map", "cantor13.json", "-o", "j.pts"]), 0);
}

#[test]
fn trees_from_the_command_line() {
    let dir = workdir();
    let d = dir.path();
    ok(d, &["gen", "--ifs", "cantor13.json", "--delta", "1.5e-4", "-o", "c.pts"]);
    let report: TreeReportDoc = serde_json::from_str(&ok(
        d,
        &["tree", "build", "--mode", "packing", "--cloud", "c.pts", "--delta", "0.15", "--s", "0.6309297535714574", "--depth", "3", "-o", "t.json"],
    ))
    .unwrap();
    assert!(report.tree_axioms);
    assert!(report.measured.mass_defect <= 1e-9);
    assert_eq!(report.manifest.unwrap().command, "tree build");

    let verified: TreeReportDoc = serde_json::from_str(&ok(d, &["tree", "verify", "--tree", "t.json"])).unwrap();
    assert_eq!(verified.axioms, report.axioms);

    ok(d, &["tree", "build", "--mode", "ifs", "--ifs", "sierpinski.json", "--x0", "0.5,0.28867513459481287", "--depth", "6", "-o", "s.json", "--report", "r.json"]);
    let r: TreeReportDoc = serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert!(r.tree_axioms);
    let prune: Value = serde_json::from_str(&ok(d, &["tree", "prune", "--tree", "s.json", "--m", "6", "--choice", "cycle"])).unwrap();
    let mass = prune["mass"].as_f64().unwrap();
    assert!((mass - (2.0f64 / 3.0).powi(6)).abs() < 1e-12, "{mass}");
    assert_eq!(prune["within_bound"], true);
    assert_eq!(code(d, &["tree", "prune", "--tree", "s.json", "--m", "7"]), 2);
    assert_eq!(code(d, &["tree", "build", "--mode", "ifs", "--depth", "2", "-o", "x.json"]), 2);
}

#[test]
fn renewal_and_axioms_reports() {
    let dir = workdir();
    let d = dir.path();
    let v: Value = serde_json::from_str(&ok(d, &["renewal", "--system", "golden_mean.json", "--amax", "6", "--points", "61"])).unwrap();
    let golden = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    let delta = v["delta"].as_f64().unwrap();
    assert!(delta > 0.0 && delta < 1.0);
    assert_eq!(v["points"].as_array().unwrap().len(), 61);
    assert!(v["nodes"].as_u64().unwrap() > 0);
    assert!(golden > delta, "the potential is at least 1, so δ is below the entropy");

    let v: Value = serde_json::from_str(&ok(
        d,
        &["renewal", "--system", "two_three.json", "--amax", "4", "--points", "5", "--anchor", "1", "--kernel-rate", "0.5"],
    ))
    .unwrap();
    assert_eq!(v["manifest"]["config"]["args"]["kernel_rate"], 0.5);

    ok(d, &["gen", "--ifs", "cantor13.json", "--delta", "1e-3", "-o", "a.pts"]);
    ok(d, &["gen", "--ifs", "two_three.json", "--delta", "1e-3", "-o", "b.pts"]);
    let suite: SuiteDoc = serde_json::from_str(&ok(
        d,
        &["axioms", "--fn", "packing", "--cloud", "a.pts", "--eps", "0.4,0.3,0.2", "--mode", "exact"],
    ))
    .unwrap();
    assert!(suite.all_passed, "{:?}", suite.violations);
    assert_eq!(suite.a, 2.0);
    assert!(suite.axioms.iter().all(|a| a.checks > 0));
    let suite: SuiteDoc = serde_json::from_str(&ok(
        d,
        &["axioms", "--fn", "covering", "--cloud", "a.pts", "--cloud", "b.pts", "--eps", "0.4,0.3,0.2"],
    ))
    .unwrap();
    assert_eq!((suite.mode.as_str(), suite.g), ("greedy", 2.0));
    assert!(suite.axioms.iter().filter(|a| a.axiom != "C5").all(|a| a.checks > 0));
    assert_eq!(code(d, &["axioms", "--fn", "minkowski", "--cloud", "a.pts", "--eps", "0.3,0.2"]), 2);
}

/// Two runs of the same pipeline in different directories write identical
/// bytes.
#[test]
fn runs_are_deterministic() {
    let pipeline: &[&[&str]] = &[
        &["gen", "--ifs", "two_three.json", "--delta", "1e-4", "-o", "k.pts"],
        &["transform", "--cloud", "k.pts", "--map", "two_three.json", "-o", "img.pts"],
        &["count", "--fn", "packing", "--cloud", "img.pts", "--emax", "0.1", "--emin", "1e-3", "-o", "p.csv"],
        &["limit", "--curve", "p.csv", "-o", "diag.json", "--manifest", "diag.manifest.json"],
        &["tree", "build", "--mode", "ifs", "--ifs", "two_three.json", "--x0", "0.5", "--depth", "5", "-o", "t.json", "--report", "r.json"],
    ];
    let outputs = [
        "k.pts", "k.pts.manifest.json", "img.pts", "img.pts.manifest.json", "p.csv",
        "p.csv.manifest.json", "diag.json", "diag.manifest.json", "t.json", "t.json.manifest.json", "r.json",
    ];
    let dirs = [workdir(), workdir()];
    for dir in &dirs {
        for args in pipeline {
            ok(dir.path(), args);
        }
    }
    for name in outputs {
        let a = fs::read(dirs[0].path().join(name)).unwrap();
        let b = fs::read(dirs[1].path().join(name)).unwrap();
        assert!(!a.is_empty(), "{name} is empty");
        assert_eq!(a, b, "{name} differs between runs");
    }
}
