use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;

use arq::cli::run_with;
use jsonschema::JSONSchema;
use serde_json::Value;

fn sample(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("samples").join(name).display().to_string()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn arq(args: &[&str]) -> Run {
    let mut argv = vec!["arq"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn schema() -> &'static JSONSchema {
    static S: OnceLock<JSONSchema> = OnceLock::new();
    S.get_or_init(|| {
        let v: Value = serde_json::from_str(arq::report::SCHEMA).unwrap();
        JSONSchema::compile(&v).expect("schema compiles")
    })
}

fn validated(r: &Run) -> Value {
    let v: Value = serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("not JSON ({e}): {}", r.out));
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("report does not match the schema: {msgs:?}\n{}", r.out);
    }
    v
}

#[test]
fn ass_s1_is_certified_against_all() {
    let a2 = sample("a2.arq");
    let r = arq(&["ass", &a2, "--rep", "S1", "--verify-against", "all"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = validated(&r);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["certificate"]["verdict"], "valid");
    assert_eq!(v["result"]["certificate"]["tested"], 3);
    assert_eq!(v["result"]["translate"]["name"], "S2");
    assert_eq!(v["result"]["middle_summands"][0]["rep"]["name"], "P1");
}

#[test]
fn ass_at_a_projective_is_a_negative() {
    let r = arq(&["ass", &sample("a2.arq"), "--rep", "P1"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("projective: no almost split sequence ends here"), "{}", r.err);
    assert_eq!(validated(&r)["status"], "negative");
}

#[test]
fn bad_vertex_is_a_positioned_usage_error() {
    let path = sample("broken.arq");
    let r = arq(&["check", &path]);
    assert_eq!(r.code, 2);
    assert_eq!(r.err.trim(), format!("{path}:3:17: unknown vertex 3"));
    assert!(r.out.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    let a2 = sample("a2.arq");
    assert_eq!(arq(&["ass", &a2, "--rep", "Nope"]).code, 2);
    assert_eq!(arq(&["ass", &a2]).code, 2);
    assert_eq!(arq(&["--prime", "12", "check", &a2]).code, 2);
    assert_eq!(arq(&["check", "/nonexistent.arq"]).code, 2);
    assert_eq!(arq(&["--format", "dot", "check", &a2]).code, 2);
    assert_eq!(arq(&["torsion", &a2, "--pair", "T"]).code, 2);
}

#[test]
fn help_lists_defaults() {
    let r = arq(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("[default: 32003]"), "{}", r.out);
    assert!(r.out.contains("[default: 0]"));
    assert!(r.out.contains("[default: json]"));
}

/// Every subcommand on the samples: expected exit code and a report that
/// validates.
#[test]
fn every_report_validates() {
    let (a2, a3, rays) = (sample("a2.arq"), sample("a3.arq"), sample("rays.arq"));
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["check", &a2], 0),
        (vec!["check", &a3], 0),
        (vec!["check", &rays], 0),
        (vec!["decompose", &a3, "--rep", "Mix"], 0),
        (vec!["hom", &a3, "--from", "P2", "--to", "P1"], 0),
        (vec!["ext", &a3, "--z", "S1", "--x", "S2"], 0),
        (vec!["dtr", &a3, "--rep", "S1"], 0),
        (vec!["trd", &a3, "--rep", "S3"], 0),
        (vec!["dtr", &a3, "--rep", "P2"], 1),
        (vec!["ass", &a3, "--rep", "S2", "--verify-against", "S1,S2,S3"], 0),
        (vec!["ass", &a3, "--rep", "I2"], 0),
        (vec!["arquiver", &a3, "--quiver", "A3"], 0),
        (vec!["approx", &a3, "--rep", "S2", "--subcat", "C"], 0),
        (vec!["approx", &a3, "--rep", "P2", "--subcat", "C", "--side", "left"], 0),
        (vec!["subcat-ass", &a3, "--rep", "S1", "--subcat", "C"], 0),
        (vec!["subcat-ass", &a3, "--rep", "S2", "--subcat", "C"], 1),
        (vec!["subcat-ass", &a2, "--rep", "P1", "--subcat", "All"], 1),
        (vec!["torsion", &a3, "--pair", "Free", "--rep", "Mix"], 0),
        (vec!["torsion", &a3, "--pair", "Tor", "--transfer", "S1", "--side", "torsion"], 0),
        (vec!["torsion", &a3, "--pair", "Free", "--transfer", "S3", "--side", "free"], 0),
        (vec!["torsion", &a3, "--pair", "Free", "--transfer", "S1", "--side", "torsion"], 1),
        (vec!["inf-dtr", &rays, "--fprep", "S2"], 0),
        (vec!["inf-dtr", &rays, "--fprep", "U1", "--depth", "5"], 0),
        (vec!["inf-ass", &rays, "--fprep", "S2"], 0),
        (vec!["inf-ass", &rays, "--fprep", "U1"], 1),
    ];
    for (args, code) in cases {
        let r = arq(&args);
        assert_eq!(r.code, code, "{args:?}: {}", r.err);
        let v = validated(&r);
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn infinite_translate_names_the_ray() {
    let rays = sample("rays.arq");
    for depth in ["4", "5", "6"] {
        let r = arq(&["inf-dtr", &rays, "--fprep", "U1", "--depth", depth]);
        let v = validated(&r);
        let verdict = &v["result"]["verdict"];
        assert_eq!(verdict["kind"], "infinite");
        assert_eq!(verdict["ray"], "v");
        assert_eq!(verdict["stable_dim"], 1);
        assert_eq!(verdict["depth"].to_string(), depth);
    }
}

#[test]
fn output_is_deterministic() {
    let a3 = sample("a3.arq");
    for args in [
        vec!["ass", a3.as_str(), "--rep", "S2", "--verify-against", "all"],
        vec!["decompose", a3.as_str(), "--rep", "Mix", "--seed", "7"],
        vec!["arquiver", a3.as_str(), "--quiver", "A3"],
    ] {
        let first = arq(&args);
        let second = arq(&args);
        assert_eq!(first.code, 0);
        assert_eq!(first.out, second.out, "{args:?}");
    }
}

#[test]
fn dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.dot");
    let a3 = sample("a3.arq");
    let r = arq(&["arquiver", &a3, "--quiver", "A3", "--dot", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(validated(&r)["result"]["count"], 6);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=dashed").count(), 3);
    let stdout = arq(&["--format", "dot", "arquiver", &a3, "--quiver", "A3"]);
    assert_eq!(stdout.out, dot);
}

#[test]
fn text_format_renders_the_same_data() {
    let r = arq(&["--format", "text", "hom", &sample("a3.arq"), "--from", "P2", "--to", "P1"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("command: hom\nstatus: ok\n"), "{}", r.out);
    assert!(r.out.contains("dim: 1"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_arq");
    let a2 = sample("a2.arq");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["ass", &a2, "--rep", "S1", "--verify-against", "all"]), Some(0));
    assert_eq!(code(&["ass", &a2, "--rep", "P1"]), Some(1));
    assert_eq!(code(&["check", &sample("broken.arq")]), Some(2));
}

#[test]
fn schema_rejects_malformed_reports() {
    let r = arq(&["ass", &sample("a2.arq"), "--rep", "S1"]);
    let mut v = validated(&r);
    assert!(schema().is_valid(&v));
    v["result"]["sequence"]["realization"].as_object_mut().unwrap().remove("p");
    assert!(!schema().is_valid(&v));
    let mut w = validated(&r);
    w["status"] = "maybe".into();
    assert!(!schema().is_valid(&w));
    let mut x = validated(&r);
    x["result"]["translate"]["mats"]["a"] = serde_json::json!([[-1]]);
    assert!(!schema().is_valid(&x));
}
