use std::process::Command;

use serde_json::Value;
use weak_moonshine::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weak-moonshine").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let (code, out, err) = run(&argv);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).expect("valid JSON")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("weak-moonshine-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["moonshine", "mt", "--group", "Q8", "--width", "2", "--tuple", "-k,k"][..],
        &["distinguish", "D4", "Q8", "--width", "2"],
        &["--json", "moonshine", "multiplicities", "--group", "D4", "--prec", "6"],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn hauptmodul_counts_terms_from_the_pole() {
    let v = json(&["series", "hauptmodul", "--level", "2", "--prec", "4"]);
    assert_eq!(v["leading"], "-1");
    assert_eq!(strings(&v["coefficients"]), ["1", "0", "276", "-2048"]);
}

#[test]
fn mt_series_text_and_json() {
    let (code, out, _) = run(&["moonshine", "mt", "--group", "D4", "--width", "2", "--tuple", "r3s,rs", "--prec", "5"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("T(2,(r3s,rs)) = 98304q + 10747904q^2 + 432144384q^3 + O(q^4)"), "{out}");

    let v = json(&["moonshine", "mt", "--group", "Q8", "--width", "2", "--tuple", "-k,k", "--prec", "5"]);
    assert_eq!(strings(&v["coefficients"]), ["0", "0", "-98304", "-10747904", "-432144384"]);
}

#[test]
fn distinguish_reports_a_reverified_witness() {
    let v = json(&["distinguish", "D4", "Q8", "--width", "2"]);
    assert_eq!(v["verdict"], "separated");
    assert_eq!(v["witness"]["reverified"], true);
    assert_eq!(v["witness"]["character"], "5");

    let v = json(&["distinguish", "D4", "Q8", "--width", "1"]);
    assert_eq!(v["verdict"], "equivalent");
}

#[test]
fn character_table_round_trips_through_json() {
    let path = scratch("q8.json");
    let p = path.to_str().unwrap();
    let (code, _, err) = run(&["chartab", "compute", "Q8", "--out", p]);
    assert_eq!(code, 0, "{err}");
    let (code, out, err) = run(&["chartab", "verify", "Q8", "--table", p]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("0 violations"));

    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let shown = json(&["chartab", "show", "Q8"]);
    // the bundled table keeps its own row order
    let rows = |v: &Value| {
        let mut r: Vec<String> = v["values"].as_array().unwrap().iter().map(Value::to_string).collect();
        r.sort();
        r
    };
    assert_eq!(rows(&written), rows(&shown));
    assert_eq!(written["class_reps"], shown["class_reps"]);
}

#[test]
fn corrupted_table_is_rejected() {
    let path = scratch("bad.json");
    let (code, _, _) = run(&["chartab", "compute", "Q8", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["values"][4][2] = "1".into();
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, _, err) = run(&["chartab", "verify", "Q8", "--table", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("orthogonality"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["series", "hauptmodul", "--level", "3"]).0, 1);
    assert_eq!(run(&["rchar", "eval", "--group", "D4", "--char", "6", "--tuple", "s,s"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    // width 4 needs the opt-in flag
    assert_eq!(run(&["rchar", "verify-orthogonality", "--group", "Z2", "--max-width", "4"]).0, 1);
    assert_eq!(run(&["--unsafe-width", "rchar", "verify-orthogonality", "--group", "Z2", "--max-width", "4"]).0, 0);

    let spec = scratch("spec.json");
    std::fs::write(
        &spec,
        r#"{"group":"D4","assignment":{"1":{"level":1},"r2":{"level":2},"r":{"level":1},"s":{"level":2},"rs":{"level":2}}}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["moonshine", "certify", "--spec", spec.to_str().unwrap(), "--prec", "4"]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("NOT certified"));
}

#[test]
fn verify_all_passes() {
    let v = json(&["verify", "all"]);
    assert_eq!(v["violations"], "0");
}

#[test]
fn binary_prints_a_certificate() {
    let out = Command::new(env!("CARGO_BIN_EXE_weak-moonshine"))
        .args(["moonshine", "certify", "--group", "Q8", "--prec", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "certified"), "{text}");
}
