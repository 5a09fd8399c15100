use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use orbicalc::group::catalog;
use orbicalc::gset::GSet;
use orbicalc::harness::generate_gsets;
use orbicalc::skew::algebra::{basis_vector, Action};
use orbicalc::skew::azumaya::{equivariant_azumaya, pauli, ProjectiveAction};
use orbicalc::skew::{h2_representatives, FinDimAlgebra};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbicalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("orbicalc-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn chartable_of_s3() {
    let o = run(&["chartable", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("classes 3"));
}

#[test]
fn vistoli_ranks_for_c4() {
    let o = run(&["vistoli", "C4", "--mode", "split", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["invertible"], true);
    let o = run(&["vistoli", "C4"]);
    assert!(stdout(&o).contains("ranks [1, 1, 2]"));
}

#[test]
fn orbifold_on_a_random_gset() {
    let g = Arc::new(catalog("D4").unwrap());
    let x = &generate_gsets(g, 1, 3).unwrap()[0];
    let path = temp("d4.json", &serde_json::to_string(&x.to_json()).unwrap());
    for mode in ["split", "rational"] {
        let o = run(&["orbifold", "D4", path.to_str().unwrap(), "--mode", mode, "--json"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert_eq!(v["invertible"], true);
        assert_eq!(v["inertia_holds"], true);
    }
    let o = run(&["orbifold", "C8", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn twisted_klein_four() {
    let k = Arc::new(catalog("C2xC2").unwrap());
    let mut dims = Vec::new();
    for alpha in h2_representatives(k, 2).unwrap().representatives {
        let text = serde_json::to_string(&alpha.to_json()).unwrap();
        let o = run(&["twisted", "C2xC2", &text, "--json"]);
        assert_eq!(o.status.code(), Some(0));
        dims.push(json(&o)["hh0"].as_u64().unwrap());
    }
    dims.sort();
    assert_eq!(dims, vec![1, 1, 1, 1, 4, 4, 4, 4]);
}

#[test]
fn azumaya_check_pass_and_fail() {
    let k = Arc::new(catalog("C2xC2").unwrap());
    let point = GSet::point(k);
    let m = equivariant_azumaya(&point, 2, &ProjectiveAction::Uniform(pauli())).unwrap();
    let gpath = temp("pt.json", &serde_json::to_string(&point.to_json()).unwrap());
    let apath = temp("pauli.json", &serde_json::to_string(&m.algebra.to_json()).unwrap());
    let o = run(&["azumaya-check", gpath.to_str().unwrap(), apath.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let c2 = Arc::new(catalog("C2").unwrap());
    let images = vec![vec![basis_vector(0), basis_vector(1)], vec![basis_vector(1), basis_vector(0)]];
    let swap = FinDimAlgebra::functions(2)
        .with_fiber(vec![0, 0])
        .unwrap()
        .with_action(Action { group: c2.clone(), images })
        .unwrap();
    let gpath = temp("c2pt.json", &serde_json::to_string(&GSet::point(c2).to_json()).unwrap());
    let apath = temp("swap.json", &serde_json::to_string(&swap.to_json()).unwrap());
    let o = run(&["azumaya-check", gpath.to_str().unwrap(), apath.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["chartable", "NOPE"]).status.code(), Some(2));
    assert_eq!(run(&["vistoli", "S3", "--mode", "weird"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["twisted", "C2", "{\"root_order\":2,\"table\":[[0]]}"]).status.code(), Some(2));
}

#[test]
fn verify_small_corpus_writes_jsonl() {
    let path = std::env::temp_dir().join(format!("orbicalc-{}-report.jsonl", std::process::id()));
    let o = Command::new(env!("CARGO_BIN_EXE_orbicalc"))
        .args(["verify", "--max-order", "6", "--gsets", "3", "--seed", "11", "--json", path.to_str().unwrap()])
        .env("ORBICALC_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() > 20);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "PASS");
    }
    assert!(stdout(&o).contains("PASS"));
}
