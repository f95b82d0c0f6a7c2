use std::path::{Path, PathBuf};
use std::process::Command;

use moore_kit::corpus::{crossed_module_corpus, eilenberg_maclane};
use moore_kit::crossed::{PeifferModule, TwoCrossedModule};
use moore_kit::document::{
    crossed_module_document, simplicial_document, to_fixture_text, ChainSpec, Construction, CrossedSpec, GroupSpec,
    HomRef, HomSpec, RawDocument, SimplicialSpec, TheorySpec, TwoActions,
};
use moore_kit::group::library::symmetric;
use moore_kit::group::FiniteGroup;
use moore_kit::simplicial::dis;
use serde_json::Value;

fn data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(file)
}

fn lib(doc: &mut RawDocument, name: &str) {
    doc.groups.insert(name.into(), GroupSpec::Library(name.into()));
}

fn construction(degree: usize, c: Construction) -> SimplicialSpec {
    SimplicialSpec {
        degree,
        construction: Some(c),
        coskeletal_above: None,
        groups: vec![],
        faces: vec![],
        degeneracies: vec![],
    }
}

/// One object of every kind, built by name from library groups.
fn examples() -> RawDocument {
    let mut doc = crossed_module_document("a3_s3", &crossed_module_corpus().unwrap()[0].1);
    for g in ["C1", "C2", "C3", "C4", "S3"] {
        lib(&mut doc, g);
    }
    doc.homs.insert("proj_c4_c2".into(), HomSpec { source: "C4".into(), target: "C2".into(), map: vec![0, 1, 0, 1] });
    doc.chains.insert(
        "ext_c2_c4_c2".into(),
        ChainSpec {
            lo: 0,
            hi: 2,
            groups: vec!["C2".into(), "C4".into(), "C2".into()],
            diffs: vec![HomRef::Name("proj_c4_c2".into()), HomRef::Inline { map: vec![0, 2] }],
        },
    );
    doc.chains.insert(
        "c3_in_degree_2".into(),
        ChainSpec { lo: 2, hi: 2, groups: vec!["C3".into()], diffs: vec![] },
    );
    doc.simplicial.insert("dis_s3".into(), construction(3, Construction::Dis("S3".into())));
    doc.simplicial.insert("ind_c2".into(), construction(3, Construction::Ind("C2".into())));
    doc.simplicial.insert("k_c3_2_gamma".into(), construction(3, Construction::Gamma("c3_in_degree_2".into())));
    doc.simplicial.insert("nerve_a3_s3".into(), construction(3, Construction::Nerve("a3_s3".into())));

    let s3 = symmetric(3);
    let two = TwoCrossedModule::from_crossed_module(&crossed_module_corpus().unwrap()[0].1);
    doc.crossed.insert(
        "two_a3_s3".into(),
        CrossedSpec::TwoCrossed {
            l: "C1".into(),
            m: "a3_s3_a".into(),
            n: "a3_s3_b".into(),
            delta2: two.delta2.clone(),
            delta1: two.delta1.clone(),
            actions: TwoActions { on_l: two.act_l.clone(), on_m: two.act_m.clone() },
            peiffer: two.peiffer.clone(),
        },
    );
    let p = PeifferModule::commutator(&s3);
    doc.crossed.insert(
        "reduced_s3".into(),
        CrossedSpec::Reduced { l: "S3".into(), m: "S3".into(), delta: p.delta.clone(), peiffer: p.peiffer.clone() },
    );
    let inversion = [vec![0], vec![0], vec![0, 1, 2], vec![0, 2, 1]];
    doc.crossed.insert(
        "crs_c3_1_c2".into(),
        CrossedSpec::CrossedComplex {
            lo: 0,
            hi: 2,
            groups: vec!["C2".into(), "C1".into(), "C3".into()],
            diffs: vec![HomRef::Inline { map: vec![0] }, HomRef::Inline { map: vec![0, 0, 0] }],
            actions: vec![inversion[..2].to_vec(), inversion[2..].to_vec()],
        },
    );
    doc.theories.insert("mu_geq_1".into(), TheorySpec::Plain("mu-geq:1".into()));
    doc.theories.insert(
        "mu_geq_2_in_m_ngeq_1".into(),
        TheorySpec::Restricted { theory: "mu-geq:2".into(), ambient: "m-ngeq:1".into() },
    );
    doc.corpora.insert("simplicial".into(), vec!["dis_s3".into(), "ind_c2".into(), "k_c3_2_gamma".into(), "nerve_a3_s3".into()]);
    doc
}

fn expected_fixtures() -> Vec<(&'static str, RawDocument)> {
    let c3 = FiniteGroup::cyclic(3);
    let a3_s3 = crossed_module_corpus().unwrap().into_iter().find(|(n, _)| n == "a3_s3").unwrap().1;
    vec![
        ("k_c3_2.json", simplicial_document("k_c3_2", &eilenberg_maclane(&c3, 2, 3).unwrap())),
        ("dis_c2.json", simplicial_document("dis_c2", &dis(&FiniteGroup::cyclic(2), 3))),
        ("a3_s3.json", crossed_module_document("a3_s3", &a3_s3)),
        ("examples.json", examples()),
    ]
}

#[test]
fn fixtures_are_current() {
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for (file, doc) in expected_fixtures() {
        let text = to_fixture_text(&doc);
        if update {
            std::fs::write(data(file), &text).unwrap();
        } else {
            let stored = std::fs::read_to_string(data(file)).unwrap_or_default();
            assert!(stored == text, "{file} is stale; rerun with UPDATE_FIXTURES=1");
        }
    }
}

fn moore_kit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_moore-kit")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let (code, out, err) = moore_kit(&all);
    assert!(err.is_empty(), "stderr: {err}");
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn path(file: &str) -> String {
    data(file).to_string_lossy().into_owned()
}

#[test]
fn homotopy_of_k_c3_2() {
    let (code, v) = json_of(&["homotopy", &path("k_c3_2.json"), "k_c3_2", "--max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["orders"], serde_json::json!([1, 1, 3]));
    assert_eq!(v["groups"][2], "C3");
}

#[test]
fn dis_c2_has_zero_torsion_under_mu_geq_1() {
    let (code, v) = json_of(&["decompose", &path("dis_c2.json"), "dis_c2", "--theory", "mu-geq:1"]);
    assert_eq!(code, 0);
    assert_eq!(v["torsion_zero"], true);
    assert_eq!(v["free_zero"], false);
}

#[test]
fn a3_s3_is_a_normal_inclusion() {
    let (code, v) = json_of(&["classify", &path("a3_s3.json"), "a3_s3"]);
    assert_eq!(code, 0);
    assert_eq!(v["classes"], serde_json::json!(["Norm"]));
}

#[test]
fn validate_reports_axioms() {
    let (code, v) = json_of(&["validate", &path("a3_s3.json"), "a3_s3"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "valid");
    let (code, v) = json_of(&["validate", &path("k_c3_2.json"), "k_c3_2"]);
    assert_eq!((code, &v["verdict"]), (0, &Value::from("valid")));
}

#[test]
fn moore_of_k_c3_2() {
    let (code, v) = json_of(&["moore", &path("k_c3_2.json"), "k_c3_2"]);
    assert_eq!(code, 0);
    assert_eq!(v["normalized_orders"], serde_json::json!([1, 1, 3, 1]));
}

#[test]
fn broken_crossed_module_fails_with_a_witness() {
    let text = std::fs::read_to_string(data("a3_s3.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    doc["crossed"]["a3_s3"]["action"][1] = serde_json::json!([0, 1, 2]);
    let dir = std::env::temp_dir().join(format!("moore-kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("broken.json");
    std::fs::write(&file, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, v) = json_of(&["validate", file.to_str().unwrap(), "a3_s3"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "invalid");
    let (code, v) = json_of(&["classify", file.to_str().unwrap(), "a3_s3"]);
    assert_eq!(code, 1);
    assert!(v["code"].is_string() && v["message"].is_string() && !v["witness"].is_null(), "{v}");
}

#[test]
fn usage_and_resolution_errors_exit_2() {
    let (code, _, _) = moore_kit(&["decompose", &path("dis_c2.json"), "dis_c2"]);
    assert_eq!(code, 2);
    let (code, v) = json_of(&["homotopy", &path("dis_c2.json"), "nope"]);
    assert_eq!(code, 2);
    assert_eq!(v["code"], "document");
    let (code, _, err) = moore_kit(&["homotopy", "/nonexistent.json", "x"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error [document]"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["--format", "json", "decompose", &path("k_c3_2.json"), "k_c3_2", "--pretorsion", "mu-geq:3,mu-ngeq:2"];
    let a = moore_kit(&args);
    let b = moore_kit(&args);
    assert_eq!(a.0, 0, "{}", a.1);
    assert_eq!(a, b);
}

#[test]
fn text_format_is_readable() {
    let (code, out, _) = moore_kit(&["homotopy", &path("k_c3_2.json"), "k_c3_2"]);
    assert_eq!(code, 0);
    assert!(out.contains("orders: [1, 1, 3]"), "{out}");
}

#[test]
fn every_example_validates() {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(data("examples.json")).unwrap()).unwrap();
    let file = path("examples.json");
    let mut names = Vec::new();
    for section in doc.as_object().unwrap().values() {
        names.extend(section.as_object().unwrap().keys().cloned());
    }
    assert!(names.len() >= 20);
    for name in names {
        let (code, v) = json_of(&["validate", &file, &name]);
        assert_eq!((code, &v["verdict"]), (0, &Value::from("valid")), "{name}: {v}");
    }
}

#[test]
fn examples_support_every_command() {
    let file = path("examples.json");
    let (code, v) = json_of(&["homotopy", &file, "k_c3_2_gamma", "--max", "2"]);
    assert_eq!((code, v["orders"].clone()), (0, serde_json::json!([1, 1, 3])));
    let (code, v) = json_of(&["decompose", &file, "ext_c2_c4_c2", "--theory", "mu_geq_1"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json_of(&["decompose", &file, "ext_c2_c4_c2", "--ttf", "1"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json_of(&["decompose", &file, "nerve_a3_s3", "--theory", "mu_geq_2_in_m_ngeq_1"]);
    assert_eq!((code, &v["torsion_zero"]), (0, &Value::from(true)), "{v}");
    let (code, v) = json_of(&["decompose", &file, "S3", "--e-torsion", "perf-ab"]);
    assert_eq!((code, &v["in_e"]), (0, &Value::from(false)), "{v}");
    let (code, v) = json_of(&["decompose", &file, "a3_s3", "--e-torsion", "dis-ab"]);
    assert_eq!((code, &v["in_e"]), (0, &Value::from(false)), "{v}");
    let (code, v) = json_of(&["decompose", &file, "crs_c3_1_c2", "--e-torsion", "crs:2"]);
    assert_eq!((code, &v["in_e"]), (0, &Value::from(false)), "{v}");
    let (code, v) = json_of(&["classify", &file, "k_c3_2_gamma", "--pair", "mu-ngeq:2,mu-geq:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["pattern"], serde_json::json!({"pattern": "eilenberg_mac_lane", "n": 2, "order": 3}));
    let (code, v) = json_of(&["classify", &file, "ind_c2", "--pair", "mu-geq:1,mu-ngeq:0"]);
    assert_eq!((code, &v["pattern"]["pattern"]), (0, &Value::from("group_like")), "{v}");
    let (code, v) = json_of(&["classify", &file, "nerve_a3_s3"]);
    assert_eq!(code, 0);
    assert_eq!(v["memberships"][1]["m_ngeq"], true);
    let (code, v) = json_of(&["validate", &file, "simplicial"]);
    assert_eq!((code, v["details"]["members"].as_object().unwrap().len()), (0, 4));
}
