use std::path::PathBuf;
use std::process::{Command, Output};

use isoray::group::{analyze_group, AnalysisOptions, AnalysisReport, GeneratorSet};
use isoray::json::{self as ijson, GroupJson, IsometryJson, LatticeJson};
use isoray::{catalog, Isometry};

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect()
}

fn isoray(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoray")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn fixtures_match_catalog() {
    let (l, g) = catalog::pell_isometry();
    let lj: LatticeJson = ijson::parse(&std::fs::read_to_string(fixture("pell_lattice.json")).unwrap()).unwrap();
    assert_eq!(&lj.to_lattice().unwrap(), l.as_ref());
    let gj: IsometryJson = ijson::parse(&std::fs::read_to_string(fixture("pell_isometry.json")).unwrap()).unwrap();
    assert_eq!(&gj.matrix, g.matrix());
    let group: GroupJson = ijson::parse(&std::fs::read_to_string(fixture("e8_transvections_group.json")).unwrap()).unwrap();
    let s = GeneratorSet::from_json(&group).unwrap();
    let expected: Vec<Isometry> = catalog::e8_transvections().1;
    assert_eq!(s.generators(), expected.as_slice());
}

#[test]
fn entropy_of_pell_isometry() {
    let o = isoray(&["entropy", "--lattice", &path("pell_lattice.json"), "--isometry", &path("pell_isometry.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("delta=5.8284271247, entropy=1.7627471740, exact_zero=false"), "{text}");
    assert!(text.contains("char_poly="));
}

#[test]
fn entropy_json_and_identity() {
    let o = isoray(&[
        "--format",
        "json",
        "entropy",
        "--lattice",
        &path("pell_lattice.json"),
        "--isometry",
        &path("identity_isometry.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact_zero"], serde_json::Value::Bool(true));
    assert_eq!(v["entropy"].as_str(), Some("0.0000000000"));
}

#[test]
fn input_errors_exit_one() {
    let bad = isoray(&["entropy", "--lattice", &path("pell_lattice.json"), "--isometry", &path("not_isometry.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("error:"));
    assert_eq!(isoray(&["analyze", "--group", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(isoray(&["--tol", "-1", "catalog", "U"]).status.code(), Some(1));
    assert_eq!(isoray(&["--word-depth", "0", "catalog", "U"]).status.code(), Some(1));
    assert_eq!(isoray(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(isoray(&["catalog", "Z9"]).status.code(), Some(1));
}

#[test]
fn analyze_exit_codes() {
    let pell = isoray(&["analyze", "--group", &path("pell_group.json")]);
    assert_eq!(pell.status.code(), Some(2));
    assert!(stdout(&pell).contains("PositiveEntropyWitness"));
    for name in ["u_swap_group.json", "empty_group.json"] {
        let o = isoray(&["analyze", "--group", &path(name)]);
        assert_eq!(o.status.code(), Some(3), "{name}");
        assert!(stdout(&o).contains("FixedPositiveVectorCertificate"));
    }
    let e8 = isoray(&["analyze", "--group", &path("e8_transvections_group.json")]);
    assert_eq!(e8.status.code(), Some(0));
    assert!(stdout(&e8).contains("E8(-1)"));
}

#[test]
fn analyze_json_matches_library() {
    let o = isoray(&["--format", "json", "--word-depth", "3", "analyze", "--group", &path("pell_group.json")]);
    let report: AnalysisReport = ijson::parse(&stdout(&o)).unwrap();
    let group: GroupJson = ijson::parse(&std::fs::read_to_string(fixture("pell_group.json")).unwrap()).unwrap();
    let s = GeneratorSet::from_json(&group).unwrap();
    let opts = AnalysisOptions { word_depth: 3, ..AnalysisOptions::default() };
    assert_eq!(report, analyze_group(&s, &opts).unwrap());
}

#[test]
fn catalog_emits_lattice_json() {
    for (name, rank) in [("U", 2), ("E8(-1)", 8), ("K3", 22), ("U+A2(-1)", 4)] {
        let o = isoray(&["catalog", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let lj: LatticeJson = ijson::parse(&stdout(&o)).unwrap();
        assert_eq!(lj.to_lattice().unwrap().rank(), rank);
        assert_eq!(lj.to_lattice().unwrap(), catalog::lookup(name).unwrap().lattice);
    }
}

#[test]
fn group_files_survive_a_temp_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (l, g) = catalog::u_swap();
    let group = GroupJson {
        lattice: LatticeJson::from_lattice(&l),
        generators: vec![IsometryJson { matrix: g.matrix().clone() }],
    };
    let file = dir.path().join("swap.json");
    std::fs::write(&file, ijson::to_string_pretty(&group)).unwrap();
    let o = isoray(&["analyze", "--group", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
