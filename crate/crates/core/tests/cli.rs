use std::path::PathBuf;

use pmvroot::cli::run_command;
use pmvroot::spec::parse_spec;
use pmvroot::sqrt::{find_sqrt, replay_suite, run_property_suite};
use pmvroot::{Budget, Counterexample};

const CORPUS: &[&str] = &["chain4", "boolean2", "ratchain", "cocycle", "lexpair", "mixed-product", "five-factor"];

fn path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "specs", &format!("{name}.spec")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (String, i32) {
    let out = run_command(args);
    (format!("{}{}", out.stdout, out.stderr), out.code)
}

#[test]
fn corpus_round_trips_byte_identically() {
    for name in CORPUS {
        let text = std::fs::read_to_string(path(name)).unwrap();
        let spec = parse_spec(&text).unwrap();
        assert_eq!(spec.to_text(), text, "{name}");
    }
}

#[test]
fn documented_outputs() {
    let (out, code) = run(&["sqrt", &path("chain4")]);
    assert_eq!((out.as_str(), code), ("no square root; Sq1 violated at x=1 by candidate r(1)=2\n", 1));
    let (out, code) = run(&["classify", &path("mixed-product")]);
    assert_eq!((out.as_str(), code), ("Mixed; v=(1,0); Boolean part 2 elements; strict part Γ(ℚ,1)\n", 0));
    let (out, code) = run(&["suite", "NS1", &path("cocycle"), "--seed", "0"]);
    assert!(out.contains("sampled-pass, 512 points"), "{out}");
    assert_eq!(code, 0);
}

#[test]
fn exit_codes_on_the_corpus() {
    let want = [("chain4", 1), ("boolean2", 0), ("ratchain", 0), ("cocycle", 0), ("lexpair", 0), ("mixed-product", 0), ("five-factor", 0)];
    for (name, code) in want {
        assert_eq!(run(&["sqrt", &path(name)]).1, code, "sqrt {name}");
        assert_eq!(run(&["check-axioms", &path(name), "--budget", "64"]).1, 0, "check-axioms {name}");
    }
    assert_eq!(run(&["classify", &path("chain4")]).1, 1);
    assert_eq!(run(&["ideals", &path("ratchain")]).1, 1);
    assert_eq!(run(&["ideals", &path("boolean2")]).1, 0);
    assert_eq!(run(&["suite", "P32-8", &path("cocycle"), "--budget", "128"]).1, 1);
    assert_eq!(run(&["suite", "P32-8", &path("ratchain"), "--budget", "128"]).1, 0);
    assert_eq!(run(&["counterexample", "--property", "AXIOMS", "--max-size", "4"]).1, 0);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(run(&[]).1, 2);
    assert_eq!(run(&["frobnicate"]).1, 2);
    assert_eq!(run(&["sqrt", "/nonexistent.spec"]).1, 2);
    assert_eq!(run(&["suite", "NOPE", &path("boolean2")]).1, 2);
    assert_eq!(run(&["counterexample", "--property", "AXIOMS", "--max-size", "9"]).1, 2);
    assert_eq!(run(&["sqrt", &path("ratchain"), "--element", "3/2"]).1, 2);
    let dir = std::env::temp_dir().join(format!("pmv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.spec");
    std::fs::write(&bad, "{\"kind\":\"mv_chain\",\n \"n\":-1}").unwrap();
    let (out, code) = run(&["sqrt", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains(":2:") && out.contains("n must be ≥ 0"), "{out}");
    assert_eq!(run(&["--help"]).1, 0);
}

#[test]
fn json_reports() {
    let out = run_command(&["suite", "P32-8", &path("cocycle"), "--budget", "128", "--json"]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["suite"], "P32-8");
    assert_eq!(v["status"], "fail");
    assert!(v["counterexample"]["elements"].as_array().is_some_and(|a| !a.is_empty()));
    let out = run_command(&["sqrt", &path("lexpair"), "--element", r#"["1/2", 3]"#, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["value"], "(3/4,3/2)");
    assert_eq!(v["strict"], true);
    let out = run_command(&["counterexample", "--property", "Sq1-solvability", "--max-size", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["found"], "Γ(ℤ,4)");
    let table = parse_spec(&v["table"].to_string()).unwrap();
    assert_eq!(table.algebra().size(), Some(5));
}

#[test]
fn runs_are_deterministic_given_seed() {
    let args = ["suite", "P32-10", &path("cocycle"), "--budget", "96", "--seed", "7"];
    assert_eq!(run_command(&args), run_command(&args));
}

#[test]
fn failing_counterexamples_replay() {
    let budget = Budget::with_points(128);
    let m = parse_spec(&std::fs::read_to_string(path("cocycle")).unwrap()).unwrap().into_algebra();
    let r = find_sqrt(&m, &budget).unwrap().into_root().unwrap();
    for name in ["P32-8", "P32-10", "EQ85"] {
        let rep = run_property_suite(name, &m, Some(&r), &budget).unwrap();
        let ce: &Counterexample = rep.counterexample.as_ref().expect(name);
        assert!(!ce.trace.is_empty());
        assert_eq!(replay_suite(name, &m, &r, &budget, ce).unwrap(), Some(true), "{name}");
        let shifted = Counterexample { elements: vec![m.zero(); ce.elements.len()], ..ce.clone() };
        assert_ne!(replay_suite(name, &m, &r, &budget, &shifted).unwrap(), Some(true), "{name}");
    }
}
