use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn pdchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdchain")).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = pdchain(args);
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path(name: &str) -> String {
    corpus(name).display().to_string()
}

#[test]
fn verify_pd_lens() {
    let (code, out) = run(&["verify-pd", &path("lens_5_1.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("verdict: pass"));
}

#[test]
fn compare_lens_spaces() {
    let (code, out) = run(&["compare", &path("lens_5_1.json"), &path("lens_5_2.json")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("isomorphic: false"));
    let (code, out) = run(&["--format", "json", "compare", &path("lens_7_1.json"), &path("lens_7_2.json")]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["values"]["generator_images"], serde_json::json!([3]));
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn degree_one_refusal_names_step() {
    let (code, out) = run(&["degree-one", &path("lens_5_1.json"), &path("lens_5_2.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("step 2"), "{out}");
    let (code, _) = run(&["degree-one", &path("lens_7_1.json"), &path("s3.json")]);
    assert_eq!(code, 0);
}

#[test]
fn two_type_moore_space() {
    let (code, out) = run(&["pt-chain", &path("two_types/moore_z2.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("H4(T; Z^w) = Z/4"));
}

#[test]
fn bad_input_exits_2() {
    let dir = std::env::temp_dir().join(format!("pdchain-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.json");
    std::fs::write(&f, "{\"name\": 3}").unwrap();
    assert_eq!(run(&["homology", &f.display().to_string()]).0, 2);
    assert_eq!(run(&["homology", "/nonexistent/file.json"]).0, 2);
}

#[test]
fn resource_bound_exits_3() {
    assert_eq!(run(&["--bound-group-order", "4", "homology", &path("lens_5_1.json")]).0, 3);
    assert_eq!(run(&["--bound-rank", "1", "homology", &path("s4.json")]).0, 3);
}

#[test]
fn mutated_document_fails_named_check() {
    let text = std::fs::read_to_string(corpus("rp4.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["orientation"] = serde_json::json!([0]);
    let dir = std::env::temp_dir().join(format!("pdchain-cli-w-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("rp4_wrong_w.json");
    std::fs::write(&f, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, out) = run(&["verify-pd", &f.display().to_string()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL fundamental cycle"), "{out}");
}

#[test]
fn corpus_is_current_and_canonical() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let (code, out) = run(&["corpus", &dir.display().to_string(), "--check"]);
    assert_eq!(code, 0, "{out}");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            assert_eq!(run(&["roundtrip", &p.display().to_string()]).0, 0, "{}", p.display());
        }
    }
}
