use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use trimat::format::{emit, parse, AlgebraDoc, ModuleDoc};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn trimat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimat")).args(args).output().unwrap()
}

fn trimat_env(args: &[&str], var: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimat")).args(args).env(var, value).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn corpus_round_trips() {
    for name in ["t2_q.json", "flagship.json", "m_zero.json"] {
        let text = std::fs::read_to_string(corpus(name)).unwrap();
        assert_eq!(emit(&parse(&text).unwrap()), text, "{name}");
        let o = trimat(&["fmt", p(&corpus(name))]);
        assert_eq!(code(&o), 0);
        assert_eq!(String::from_utf8(o.stdout).unwrap(), text);
        assert_eq!(code(&trimat(&["validate", p(&corpus(name))])), 0);
    }
}

#[test]
fn non_canonical_scalars_are_rewritten() {
    let mut doc = parse(&std::fs::read_to_string(corpus("t2_q.json")).unwrap()).unwrap();
    doc.modules.get_mut("k").unwrap().action[0].data[0] = "2/2".into();
    let path = scratch("noncanonical.json");
    std::fs::write(&path, emit(&doc)).unwrap();
    let o = trimat(&["fmt", p(&path)]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), std::fs::read_to_string(corpus("t2_q.json")).unwrap());
}

/// `k[x]/(x³)` with `x · x²` tampered to `x`, so `(x·x)·x ≠ x·(x·x)`.
fn tampered_cubic() -> AlgebraDoc {
    let row = |v: [&str; 3]| v.join(" ");
    let products = vec![
        vec![row(["1", "0", "0"]), row(["0", "1", "0"]), row(["0", "0", "1"])],
        vec![row(["0", "1", "0"]), row(["0", "0", "1"]), row(["0", "1", "0"])],
        vec![row(["0", "0", "1"]), row(["0", "0", "0"]), row(["0", "0", "0"])],
    ];
    AlgebraDoc { dim: 3, products, unit: row(["1", "0", "0"]) }
}

#[test]
fn non_associative_constants_are_rejected() {
    let mut doc = parse(&std::fs::read_to_string(corpus("m_zero.json")).unwrap()).unwrap();
    doc.algebras.insert("C".into(), tampered_cubic());
    let path = scratch("nonassociative.json");
    std::fs::write(&path, emit(&doc)).unwrap();
    let o = trimat(&["validate", p(&path)]);
    assert_eq!(code(&o), 3);
    let out = String::from_utf8(o.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let failing: Vec<_> = v["records"].as_array().unwrap().iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["name"] == "algebras.C"));
    // the failing basis triple is reported
    assert!(failing.iter().any(|r| r["witnesses"].as_object().unwrap().keys().any(|k| k.contains("ind"))), "{out}");
    // commands that need a valid workspace refuse it
    let o = trimat(&["stable-hom", p(&path), "k", "k"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8(o.stderr).unwrap().contains("algebras.C"));
}

#[test]
fn empty_modules_parse_and_validate() {
    let mut doc = parse(&std::fs::read_to_string(corpus("t2_q.json")).unwrap()).unwrap();
    let zero = trimat::format::MatrixDoc { cols: 0, data: vec![], rows: 0 };
    doc.modules.insert("zero".into(), ModuleDoc { action: vec![zero], algebra: "A".into(), dim: 0 });
    let path = scratch("empty.json");
    std::fs::write(&path, emit(&doc)).unwrap();
    assert_eq!(code(&trimat(&["validate", p(&path)])), 0);
    let o = trimat(&["stable-hom", p(&path), "zero", "k"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["hom"], 0);
}

#[test]
fn j_shriek_of_k_is_k_k_id() {
    let out = scratch("applied.json");
    let o = trimat(&["apply", p(&corpus("t2_q.json")), "--functor", "j_shriek", "--input", "k", "-o", p(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let t = &doc.triples["j_lower_shriek.k"];
    assert_eq!(t.phi.data, vec!["1".to_string()]);
    assert_eq!((doc.modules[&t.x].dim, doc.modules[&t.y].dim), (1, 1));
    assert_eq!(code(&trimat(&["validate", p(&out)])), 0);
}

#[test]
fn gproj_methods_agree_on_the_corpus() {
    for name in ["t2_q.json", "flagship.json"] {
        let o = trimat(&["gproj", p(&corpus(name)), "--method", "both"]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for r in v["records"].as_array().unwrap() {
            assert_eq!(r["witnesses"]["agree"], true, "{name}: {r}");
        }
    }
}

#[test]
fn build_lambda_registers_the_algebra() {
    let mut doc = parse(&std::fs::read_to_string(corpus("t2_q.json")).unwrap()).unwrap();
    doc.triangulars.clear();
    doc.triples.clear();
    doc.modules.retain(|k, _| k == "k");
    let path = scratch("bare.json");
    std::fs::write(&path, emit(&doc)).unwrap();
    let out = scratch("built.json");
    let o = trimat(&["build-lambda", p(&path), "--a", "A", "--b", "A", "--m", "M", "--name", "t2", "-o", p(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let built = parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(built.algebras["t2.lambda"].dim, 3);
    let o = trimat(&["injdim", p(&out), "--algebra", "t2.lambda"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["left"]["computed"], 1);
}

#[test]
fn exit_codes() {
    let t2 = corpus("t2_q.json");
    let flagship = corpus("flagship.json");
    // io
    assert_eq!(code(&trimat(&["validate", "/nonexistent/trimat.json"])), 1);
    // parse
    let bad = scratch("truncated.json");
    std::fs::write(&bad, "{\"format\":").unwrap();
    let o = trimat(&["validate", p(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 1"));
    let unknown = scratch("unknown_field.json");
    let text = std::fs::read_to_string(&t2).unwrap().replacen("\"field\"", "\"colour\": 1,\n  \"field\"", 1);
    std::fs::write(&unknown, text).unwrap();
    assert_eq!(code(&trimat(&["validate", p(&unknown)])), 2);
    assert_eq!(code(&trimat(&["no-such-command"])), 2);
    // validation
    assert_eq!(code(&trimat(&["stable-hom", p(&t2), "k", "missing"])), 3);
    assert_eq!(code(&trimat(&["apply", p(&t2), "--functor", "j_question", "--level", "stable", "--input", "k"])), 3);
    // check failure: a declared injective dimension of 0 is wrong for Λ, so the two criteria disagree
    assert_eq!(code(&trimat(&["gproj", p(&t2), "--injdim", "0"])), 4);
    // inconclusive
    assert_eq!(code(&trimat_env(&["injdim", p(&flagship), "--algebra", "lambda"], "TRIMAT_INJDIM_CAP", "0")), 5);
    // resource
    let args = ["check-recollement", p(&flagship), "--level", "stable", "--samples", "3"];
    assert_eq!(code(&trimat_env(&args, "TRIMAT_MAX_DIM", "1")), 6);
    assert_eq!(code(&trimat_env(&["injdim", p(&flagship), "--algebra", "lambda"], "TRIMAT_MAX_LENGTH", "0")), 6);
}

#[test]
fn reports_are_written_atomically() {
    let out = scratch("report.json");
    let _ = std::fs::remove_file(&out);
    let t2 = corpus("t2_q.json");
    let args = ["check-recollement", p(&t2), "--samples", "3", "--seed", "1", "--stable-output"];
    let o = trimat(&[&args[..], &["--report", p(&out)]].concat());
    assert_eq!(code(&o), 0);
    let inline = trimat(&args);
    assert_eq!(std::fs::read(&out).unwrap(), inline.stdout);
    let leftovers = std::fs::read_dir(out.parent().unwrap())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().contains(".tmp"))
        .count();
    assert_eq!(leftovers, 0);
}
