use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name)
}

fn pfspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfspec"))
        .args(args)
        .env_remove("PFSPEC_MAX_EXHAUSTIVE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn arg(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn localic_spectrum_of_z4() {
    let z4 = model("z4.model");
    let o = pfspec(&["spectrum", arg(&z4), "--object", "Z4", "--mode", "localic"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("Rad(Z4): 2 elements\n"), "{out}");
    assert!(out.contains("  e0 < e1\n"));
    assert!(out.ends_with("points of Z4: 1\n  {1,3}\n"), "{out}");
}

#[test]
fn quantic_spectrum_of_z4_is_a_three_chain() {
    let z4 = model("z4.model");
    let o = pfspec(&["spectrum", arg(&z4), "--object", "Z4", "--mode", "quantic"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("Idl(Z4): 3 elements\n"), "{out}");
    assert!(out.contains("covers: 2\n"));
}

#[test]
fn reversed_sierpinski_has_no_points() {
    let s = model("sierpinski_rev.model");
    let o = pfspec(&["points", arg(&s), "--object", "S"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "points of S: 0\n");
}

#[test]
fn dot_export_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("z4.model", "Z4", None, 3, 2),
        ("catalog.model", "Z6", Some("rad"), 4, 4),
        ("catalog.model", "Pt", None, 1, 0),
    ];
    for (file, object, structure, nodes, edges) in cases {
        let out = dir.path().join(format!("{object}.dot"));
        let f = model(file);
        let mut args = vec!["export", arg(&f), "--object", object, "--out", arg(&out)];
        if let Some(s) = structure {
            args.extend(["--structure", s]);
        }
        let o = pfspec(&args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).ends_with(&format!("({nodes} nodes, {edges} edges)\n")));
        let dot = fs::read_to_string(&out).unwrap();
        assert!(dot.starts_with("digraph \""));
        assert_eq!(dot.matches(" [label=").count(), nodes);
        assert_eq!(dot.matches(" -> ").count(), edges);
    }
}

#[test]
fn dot_export_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let f = model("catalog.model");
    let mut bytes = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("run{i}.dot"));
        let o = pfspec(&["export", arg(&f), "--object", "Z6", "--structure", "idl", "--out", arg(&out)]);
        assert!(o.status.success());
        bytes.push(fs::read(&out).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn malformed_models_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = dir.path().join("unknown.model");
    fs::write(&unknown, "semiring B { elements: 0 1 ; zero: 0 ; one: 1 ; add: 0 1 1 1 ; mul: 0 0 0 1 ; order: P }\n").unwrap();
    let short = dir.path().join("short.model");
    fs::write(&short, "monoid M {\n  elements: 1 a ;\n  unit: 1 ;\n  mul: 1 a a\n}\n").unwrap();
    for (path, needle) in [(&unknown, "P"), (&short, "mul")] {
        let o = pfspec(&["validate", arg(path)]);
        assert_eq!(o.status.code(), Some(2));
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.starts_with("error: ") && err.contains(needle), "{err}");
    }
}

#[test]
fn representability_suite_passes_on_the_catalog() {
    let f = model("catalog.model");
    let o = pfspec(&["verify", arg(&f), "--suite", "representability"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("== representability ==\n"));
    assert!(out.contains(" 0 FAIL, 0 SKIPPED(cap)\n"), "{out}");
    assert!(!out.contains(" ms]"));
}

#[test]
fn print_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = model("catalog.model");
    let once = stdout(&pfspec(&["print", arg(&f)]));
    let copy = dir.path().join("printed.model");
    fs::write(&copy, &once).unwrap();
    let twice = pfspec(&["print", arg(&copy)]);
    assert!(twice.status.success());
    assert_eq!(stdout(&twice), once);
    assert!(pfspec(&["validate", arg(&copy)]).status.success());
}

#[test]
fn caps_from_the_environment_skip_and_strict_fails() {
    let f = model("catalog.model");
    let run = |strict: bool| {
        let mut args = vec!["verify", arg(&f), "--suite", "oracles"];
        if strict {
            args.push("--strict-caps");
        }
        Command::new(env!("CARGO_BIN_EXE_pfspec"))
            .args(&args)
            .env("PFSPEC_MAX_EXHAUSTIVE", "3")
            .output()
            .unwrap()
    };
    let lax = run(false);
    assert_eq!(lax.status.code(), Some(0));
    let out = stdout(&lax);
    assert!(out.contains("caps: max-exhaustive 3,"));
    assert!(out.contains("SKIPPED(cap)  Sq: "), "{out}");
    assert!(!out.contains(" 0 SKIPPED(cap)"));
    assert_eq!(run(true).status.code(), Some(1));
}

#[test]
fn timings_are_opt_in() {
    let f = model("z4.model");
    let plain = stdout(&pfspec(&["verify", arg(&f)]));
    let timed = stdout(&pfspec(&["verify", arg(&f), "--timings"]));
    assert!(!plain.contains(" ms]"));
    assert!(timed.contains(" ms]"));
}
