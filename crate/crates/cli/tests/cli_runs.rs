use std::path::Path;
use std::process::Command;

fn cmlp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cmlp"))
        .args(args)
        .env_remove(cmlp_cli::OUTPUT_DIR_VAR)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn valuations_row() {
    let (code, text) = cmlp(&["valuations", "--p", "5", "--case", "inert", "--n", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["p,case,n,hdg,period,r,b,n_k", "5,inert,2,1/30,1/120,7,30,2"]);
    let (_, analytic) = cmlp(&["valuations", "--p", "5", "--case", "inert", "--n", "2", "--analytic"]);
    assert!(analytic.ends_with(",3\n"));
}

#[test]
fn classgroup_of_minus_23() {
    let (code, text) = cmlp(&["classgroup", "--D", "-23"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["forms"].as_array().unwrap().len(), 3);
    assert_eq!(v["class_number"], 3);
}

#[test]
fn nabla_matches_iterated_steps() {
    let dir = tempfile::tempdir().unwrap();
    let e = path(dir.path(), "e.json");
    let d = path(dir.path(), "d.json");
    assert_eq!(cmlp(&["eisenstein", "--k", "4", "--p", "5", "--N-q", "40", "--out", &e]).0, 0);
    assert_eq!(cmlp(&["deplete", "--input", &e, "--out", &d]).0, 0);
    for m in 0..=3 {
        let a = path(dir.path(), &format!("a{m}.json"));
        let b = path(dir.path(), &format!("b{m}.json"));
        let ms = m.to_string();
        assert_eq!(cmlp(&["nabla", "--input", &d, "--k", "4", "--nu-classical", &ms, "--out", &a]).0, 0);
        assert_eq!(cmlp(&["nabla-step", "--input", &d, "--k", "4", "--times", &ms, "--out", &b]).0, 0);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "m = {m}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["lsum", "--D", "-3", "--c", "25", "--N", "7", "--p", "5", "--char-index", "3", "--seed", "9"];
    let (c1, first) = cmlp(&args);
    let (c2, second) = cmlp(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    let (_, other) = cmlp(&[&args[..args.len() - 1], &["10"]].concat());
    assert_ne!(first, other);
}

#[test]
fn exit_statuses() {
    // usage
    assert_eq!(cmlp(&["classgroup"]).0, 1);
    assert_eq!(cmlp(&["deplete", "--input", "/nonexistent/f.json"]).0, 1);
    assert_eq!(cmlp(&["eisenstein", "--k", "4", "--p", "5", "--eps-index", "7"]).0, 1);
    // preconditions: gate, Heegner hypothesis, split prime, depletion
    assert_eq!(cmlp(&["lsum", "--D", "-3", "--c", "25", "--N", "7", "--p", "5"]).0, 2);
    assert_eq!(cmlp(&["lsum", "--D", "-3", "--c", "25", "--N", "7", "--p", "5", "--no-gate"]).0, 0);
    assert_eq!(cmlp(&["hgroup", "--D", "-4", "--N", "3"]).0, 2);
    assert_eq!(cmlp(&["valuations", "--p", "9", "--case", "inert", "--n", "1"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let e = path(dir.path(), "e.json");
    cmlp(&["eisenstein", "--k", "4", "--p", "5", "--N-q", "20", "--out", &e]);
    assert_eq!(cmlp(&["nabla", "--input", &e, "--k", "4", "--nu-classical", "1"]).0, 2);
    // precision certificate
    let lsum = ["lsum", "--D", "-3", "--c", "25", "--N", "7", "--p", "5", "--char-index", "3"];
    assert_eq!(cmlp(&[&lsum[..], &["--min-precision", "10"]].concat()).0, 0);
    assert_eq!(cmlp(&[&lsum[..], &["--min-precision", "60"]].concat()).0, 3);
}

#[test]
fn output_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_cmlp"))
        .args(["classgroup", "--D", "-7", "--c", "3", "--out", "cg.json"])
        .env(cmlp_cli::OUTPUT_DIR_VAR, dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.path().join("cg.json")).unwrap();
    assert!(text.contains("\"conductor\": 3"));
}

#[test]
fn chars_report_conductor_parts() {
    let (code, text) = cmlp(&["chars", "--D", "-3", "--c", "25", "--N", "7", "--k", "2", "--p", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let parts: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["conductor_p_part"].as_u64().unwrap()).collect();
    assert_eq!(parts.len(), 10);
    assert_eq!(parts.iter().filter(|&&e| e == 2).count(), 8);
}

#[test]
fn check_reports_every_criterion() {
    let (code, text) = cmlp(&["check", "--quick"]);
    assert_eq!(text.lines().count(), 10);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    // the tail-increment sweep has genuine counterexamples
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains("inequality sweeps"));
    assert_eq!(code, 3);
}
