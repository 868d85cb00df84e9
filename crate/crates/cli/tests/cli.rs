use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chevalley")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out) = run(&all);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn check_schema(v: &Value) {
    let obj = v.as_object().unwrap();
    for key in ["command", "parameters", "cases", "summary", "error", "wall_time_ms"] {
        assert!(obj.contains_key(key), "missing {key} in {v}");
    }
    assert!(v["command"].is_string());
    assert!(v["parameters"].is_object());
    assert!(v["wall_time_ms"].is_u64());
    let cases = v["cases"].as_array().unwrap();
    let mut passed = 0;
    for c in cases {
        assert!(c["name"].is_string());
        let status = c["status"].as_str().unwrap();
        assert!(status == "pass" || status == "fail");
        passed += (status == "pass") as u64;
        assert!(c["data"].is_object());
        no_floats(&c["data"]);
    }
    assert_eq!(v["summary"]["total"].as_u64().unwrap(), cases.len() as u64);
    assert_eq!(v["summary"]["passed"].as_u64().unwrap(), passed);
    assert_eq!(v["summary"]["failed"].as_u64().unwrap(), cases.len() as u64 - passed);
}

fn no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float in report: {n}"),
        Value::Array(a) => a.iter().for_each(no_floats),
        Value::Object(o) => o.values().for_each(no_floats),
        _ => {}
    }
}

const COMMANDS: &[&[&str]] = &[
    &["dunkl", "commute", "--type", "A2", "--k", "all=1/2", "--max-degree", "3", "--random", "4"],
    &["dunkl", "gram", "--type", "B2", "--k", "long=1,short=1/2", "--degree", "2", "--invariants-only"],
    &["dunkl", "apply", "--type", "G2", "--k", "long=1,short=1/3", "--xi", "1,-1/2", "--poly", "x1^2 x2"],
    &["chevalley", "check", "--algebra", "sl2", "--max-degree", "4"],
    &["takiff", "invariants", "--algebra", "sl2", "--m", "1", "--max-degree", "2"],
    &["takiff", "image", "--algebra", "sl2", "--m", "2", "--degree", "2"],
    &["takiff", "criterion", "--algebra", "sl2", "--m", "1", "--poly", "u v"],
];

#[test]
fn schema_is_stable() {
    for args in COMMANDS {
        let (code, v) = run_json(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        check_schema(&v);
        assert_eq!(v["command"], format!("{} {}", args[0], args[1]));
        assert_eq!(v["parameters"]["seed"], 0);
    }
}

#[test]
fn deterministic_apart_from_wall_time() {
    for args in COMMANDS {
        let strip = |mut v: Value| {
            v.as_object_mut().unwrap().remove("wall_time_ms");
            serde_json::to_string(&v).unwrap()
        };
        assert_eq!(strip(run_json(args).1), strip(run_json(args).1));
    }
    let seeded = ["dunkl", "commute", "--type", "B2", "--random", "5", "--seed", "17"];
    assert_eq!(run_json(&seeded).1["parameters"]["seed"], 17);
}

#[test]
fn gram_examples() {
    let (_, v) = run_json(&["dunkl", "gram", "--type", "A1", "--k", "all=1", "--degree", "1"]);
    assert_eq!(v["cases"][0]["data"]["matrix"], serde_json::json!([["3"]]));
    let (_, v) = run_json(&["dunkl", "gram", "--type", "A1", "--k", "all=1", "--degree", "0"]);
    assert_eq!(v["cases"][0]["data"]["matrix"], serde_json::json!([["1"]]));
    let (code, v) = run_json(&["dunkl", "gram", "--type", "A2", "--k", "all=1", "--degree", "4", "--invariants-only"]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"][0]["data"]["positive_definite"], true);
}

#[test]
fn chevalley_dims() {
    let (code, v) = run_json(&["chevalley", "check", "--algebra", "sl3", "--max-degree", "6"]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["data"]["dim_target"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 0, 1, 1, 1, 1, 2]);
    let (_, v) = run_json(&["chevalley", "check", "--algebra", "sl2", "--max-degree", "0"]);
    assert_eq!(v["cases"].as_array().unwrap().len(), 1);
}

#[test]
fn takiff_image_verdicts() {
    let (code, v) = run_json(&["takiff", "image", "--algebra", "sl2", "--m", "2", "--degree", "2"]);
    assert_eq!(code, 0);
    let d = &v["cases"][0]["data"];
    assert_eq!((d["image_dim"].as_u64(), d["criterion_dim"].as_u64()), (Some(3), Some(4)));
    assert_eq!(d["verdict"], "strict inclusion");
    let (code, v) = run_json(&["takiff", "image", "--algebra", "sl2", "--m", "1", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["cases"][0]["data"]["image_dim"], 0);
    assert_eq!(v["cases"][0]["data"]["criterion_dim"], 0);
}

#[test]
fn criterion_reports() {
    let (code, v) = run_json(&["takiff", "criterion", "--algebra", "sl2", "--m", "1", "--poly", "u^2"]);
    assert_eq!(code, 1);
    let w = &v["cases"][1]["data"]["witness"];
    assert_eq!((w["n"].as_u64(), w["remainder"].as_str()), (Some(1), Some("4 u")));

    let (code, v) = run_json(&["takiff", "criterion", "--algebra", "sl2", "--m", "2", "--poly", "v^2"]);
    assert_eq!(code, 1);
    let status: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert_eq!(status, ["pass", "pass", "fail"]);
    assert_eq!(v["cases"][2]["data"]["result"], "fail");

    let (code, _) = run_json(&["takiff", "criterion", "--algebra", "sl2", "--m", "1", "--poly", "u v"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["takiff", "criterion", "--algebra", "sl2", "--poly", "u +"]).0, 2);
    assert_eq!(run(&["dunkl", "commute", "--type", "E8"]).0, 2);
    assert_eq!(run(&["dunkl", "commute", "--type", "A1", "--k", "all=x"]).0, 2);
    assert_eq!(run(&["chevalley", "check"]).0, 2);
    assert_eq!(run(&["takiff", "image", "--algebra", "so5"]).0, 2);
    let (code, v) = run_json(&["chevalley", "check", "--algebra", "sl3", "--max-degree", "6", "--work-bound", "500"]);
    assert_eq!(code, 3);
    assert!(v["error"].as_str().unwrap().contains("work bound"));
    assert!(!v["cases"].as_array().unwrap().is_empty());
    let (code, _) = run_json(&["dunkl", "commute", "--type", "A1", "--k", "all=0", "--max-degree", "5"]);
    assert_eq!(code, 0);
}
