use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transvect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn tclass_e6() {
    let out = run(&["tclass", "-g", &data("e6.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["classes"], json!(32));
}

#[test]
fn tclass_partial_closure_is_flagged() {
    let out = run(&["tclass", "-g", &data("e6.json"), "--max", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&out);
    assert_eq!(v["complete"], json!(false));
    assert_eq!(v["error"], json!("BudgetExceeded"));
}

#[test]
fn classify_e6() {
    let out = run(&["classify", "-p", &data("e6.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["per_component"], json!(["orthogonal"]));
}

#[test]
fn classify_two_components() {
    let out = run(&["classify", "-p", &data("two_component.json")]);
    let v = stdout_json(&out);
    assert_eq!(v["components"], json!([[0, 1], [2, 3, 4]]));
    assert_eq!(v["per_component"], json!(["line_graph", "line_graph"]));
}

#[test]
fn reach_dual_exit_codes() {
    let k2 = data("k2.json");
    let out = run(&["reach-dual", "-p", &k2, "--from", &data("k2_lamps_10.json"), "--to", &data("k2_lamps_10.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({"verdict": "same", "witness": []}));

    let out = run(&["reach-dual", "-p", &k2, "--from", &data("k2_lamps_10.json"), "--to", &data("k2_lamps_00.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["certificate"], json!("ZeroVsNonzero"));

    let out = run(&[
        "reach-dual", "-p", &k2, "--from", &data("k2_lamps_10.json"), "--to", &data("k2_lamps_11.json"), "--witness",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["witness"], json!([{"s": 0, "k": 1}]));
}

#[test]
fn reach_nondual_gf3() {
    let out = run(&["reach", "-p", &data("gf3_plane.json"), "--from", &data("gf3_x.json"), "--to", &data("gf3_y.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], json!("same"));
}

#[test]
fn orbits_k2() {
    let out = run(&["orbits", "-p", &data("k2.json")]);
    assert_eq!(stdout_json(&out)["blocks"], json!([[0], [1, 2, 3]]));
    let out = run(&["orbits", "-p", &data("k2.json"), "--action", "affine"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn root_and_mingame() {
    let out = run(&["root", "-g", &data("e6.json")]);
    assert_eq!(stdout_json(&out), json!({"root": null}));
    let out = run(&["root", "-g", &data("p3.json")]);
    assert_eq!(stdout_json(&out)["root"]["edges"].as_array().unwrap().len(), 3);
    let out = run(&["mingame", "-g", &data("k2.json"), "--lamps", &data("k2_lamps_11.json")]);
    assert_eq!(stdout_json(&out)["count"], json!(1));
}

#[test]
fn malformed_input_is_a_json_error() {
    let dir = std::env::temp_dir().join(format!("transvect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"p\": 2, \"dim\": 2").unwrap();
    let out = run(&["classify", "-p", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("ParseError"));

    let odd = dir.join("odd.json");
    std::fs::write(&odd, r#"{"p": 2, "dim": 2, "form": [[0, 1], [0, 0]]}"#).unwrap();
    let out = run(&["classify", "-p", odd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["error"], json!("InvalidInput"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "-p", "e6.json"],
        vec!["tclass", "-g", "e6.json", "--list"],
        vec!["mingame", "-g", "e6.json", "--lamps", "e6_all_on.json"],
        vec!["selftest", "--seed", "7", "--spaces", "6"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { data(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn bundled_files_round_trip() {
    for entry in std::fs::read_dir(data("")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(v, again, "{}", path.display());
        // every file is a space, a graph, or a coordinate row
        let kind = if v.is_array() || v.get("coords").is_some() {
            "coords"
        } else {
            "space"
        };
        let probe = if kind == "coords" {
            run(&["orbits", "-p", &data("k2.json"), "--action", "affine", "--alpha", path.to_str().unwrap()])
        } else {
            run(&["classify", "-p", path.to_str().unwrap()])
        };
        let code = probe.status.code();
        let out = stdout_json(&probe);
        assert!(
            code == Some(0) || out["error"] == json!("InvalidInput"),
            "{}: {}",
            path.display(),
            out
        );
        assert_ne!(out["error"], json!("ParseError"), "{}", path.display());
    }
}

#[test]
fn stdio_protocol_transcript() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_transvect"))
        .args(["serve", "--stdio"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let requests = [
        r#"{"op":"new","graph":{"vertices":[0,1],"edges":[[0,1]]},"lamps":[1,0]}"#,
        r#"{"op":"play","session":"s1","vertex":1}"#,
        r#"{"op":"play","session":"s1","vertex":0}"#,
        "",
        r#"{"op":"reachable","session":"s1","target":[0,0]}"#,
        r#"{"op":"undo","session":"s1"}"#,
        r#"{"op":"min_lit","session":"s1"}"#,
        r#"{"op":"classify","session":"s1"}"#,
    ];
    {
        let stdin = child.stdin.as_mut().unwrap();
        for r in requests {
            writeln!(stdin, "{r}").unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(
        lines,
        vec![
            r#"{"legal":[0],"session":"s1","state":{"history":[],"lamps":[1,0]}}"#,
            r#"{"error":"IllegalMove"}"#,
            r#"{"legal":[0,1],"state":{"history":[0],"lamps":[1,1]}}"#,
            r#"{"certificate":"ZeroVsNonzero","verdict":"different"}"#,
            r#"{"legal":[0],"state":{"history":[],"lamps":[1,0]}}"#,
            r#"{"count":1,"lamps":[1,0],"moves":[]}"#,
            r#"{"components":[[0,1]],"per_component":["line_graph"],"roots":[{"edges":[[0,1],[0,2]],"vertices":3}]}"#,
        ]
    );
}
