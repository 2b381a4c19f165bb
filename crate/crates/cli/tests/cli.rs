use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewcalc"))
        .args(args)
        .env_remove("SKEWCALC_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn golden(args: &[&str], file: &str) {
    let out = run(args);
    let expected = std::fs::read_to_string(data("golden").join(file)).unwrap();
    assert_eq!(String::from_utf8(json_ok(out)).unwrap(), expected, "golden report {file} drifted");
}

fn json_ok(out: Output) -> Vec<u8> {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn count_in_p4() {
    let v = json(&run(&["count", "--ambient", "4", "--degree", "8", "--genus", "5"]));
    assert_eq!(v["nonskew_pairs"]["value"], 240);
    assert_eq!(v["schema"], 1);
    let v = json(&run(&["count", "--ambient", "4", "--degree", "4", "--genus", "0"]));
    assert_eq!(v["nonskew_pairs"]["value"], 0);
}

#[test]
fn count_in_p3() {
    let v = json(&run(&["count", "--ambient", "3", "--degree", "3", "--genus", "0"]));
    assert_eq!(v["incidence_times_tangent_pairs"]["value"], serde_json::json!([8, 28]));
    assert!(v["conclusion"].as_str().unwrap().contains("consistent"));
    let v = json(&run(&["count", "--ambient", "3", "--degree", "4", "--genus", "1"]));
    assert_eq!(v["genus_obstruction"]["value"], 2 * 8);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["count", "--ambient", "5", "--degree", "3", "--genus", "0"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--ambient", "4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad = data("bad_curve.json");
    assert_eq!(run(&["oracle", "--curve", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn classify_lists_survivors_and_exclusions() {
    let v = json(&run(&["classify"]));
    let got: Vec<(i64, i64)> = v["skew_curves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["genus"].as_i64().unwrap(), x["degree"].as_i64().unwrap()))
        .collect();
    assert_eq!(got, vec![(0, 4), (1, 5)]);
    assert!(v.get("candidates").is_none());
    let v = json(&run(&["classify", "--show-candidates"]));
    let excluded: Vec<(i64, i64)> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["exists"] == false)
        .map(|c| (c["genus"].as_i64().unwrap(), c["degree"].as_i64().unwrap()))
        .collect();
    assert_eq!(excluded, vec![(2, 5), (5, 4)]);
}

#[test]
fn oracle_runs() {
    let quintic = data("quintic.json");
    let v = json(&run(&["oracle", "--curve", quintic.to_str().unwrap()]));
    assert_eq!(v["pair_count"]["count"], 8);
    assert_eq!(v["formula_genus_0"], "8");

    let quartic = data("quartic.json");
    let v = json(&run(&["oracle", "--curve", quartic.to_str().unwrap(), "--task", "check-skew"]));
    assert_eq!(v["skew"], true);
    assert_eq!(v["pair_count"]["count"], 0);

    let v = json(&run(&["oracle", "--curve", quartic.to_str().unwrap(), "--task", "contact", "--t0", "2/5"]));
    assert_eq!(v["contact"]["confirmed"], true);

    let cubic = data("twisted_cubic.json");
    let v = json(&run(&["oracle", "--curve", cubic.to_str().unwrap(), "--task", "check-skew"]));
    assert_eq!(v["skew"], true);

    let v = json(&run(&["oracle", "--task", "veronese", "--samples", "100"]));
    assert_eq!(v["skew"], true);
}

#[test]
fn precondition_failures_exit_3() {
    let flat = data("flat_curve.json");
    let out = run(&["oracle", "--curve", flat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("osculating"));
    let out = run(&["oracle", "--curve", flat.to_str().unwrap(), "--task", "contact", "--t0", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn scrolls() {
    for file in ["quadric_scroll.json", "normal_scroll.json"] {
        let v = json(&run(&["scroll", "--scroll", data(file).to_str().unwrap()]));
        assert_eq!(v["skew"], true, "{file}");
    }
}

#[test]
fn chow_expressions() {
    let v = json(&run(&["chow", "--expr", data("displays.chow").to_str().unwrap()]));
    let class = |i: usize| v["results"][i]["class"].as_str().unwrap().to_string();
    assert_eq!(class(3), "j*(2σ̄1 + 2ζ)");
    assert_eq!(class(4), "j*((4dv^2-10dv-4g+4)σ̄22ζ^2 + (dv^2-2dv)σ̄21ζ^3)");

    let dir = std::env::temp_dir().join(format!("skewcalc-chow-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.chow");
    std::fs::write(&bad, "mul E D7\n").unwrap();
    assert_eq!(run(&["chow", "--expr", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn seeds_are_reproducible() {
    let quintic = data("quintic.json");
    let q = quintic.to_str().unwrap();
    let a = run(&["oracle", "--curve", q, "--seed", "7"]);
    let b = run(&["oracle", "--curve", q, "--seed", "7"]);
    assert_eq!(json_ok(a), json_ok(b));
    let c = Command::new(env!("CARGO_BIN_EXE_skewcalc"))
        .args(["oracle", "--curve", q])
        .env("SKEWCALC_SEED", "7")
        .output()
        .unwrap();
    let d = run(&["oracle", "--curve", q, "--seed", "7"]);
    assert_eq!(json_ok(c), json_ok(d));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("skewcalc-out-{}.json", std::process::id()));
    let out = run(&["classify", "-o", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "classify");
}

#[test]
fn golden_reports() {
    golden(&["count", "--ambient", "4", "--degree", "8", "--genus", "5", "--emit-intermediates"], "count_p4_8_5.json");
    golden(&["count", "--ambient", "3", "--degree", "3", "--genus", "0"], "count_p3_3_0.json");
    golden(&["classify", "--show-candidates"], "classify.json");
    golden(&["scroll", "--scroll", data("quadric_scroll.json").to_str().unwrap()], "scroll_quadric.json");
    golden(&["oracle", "--curve", data("quintic.json").to_str().unwrap()], "oracle_quintic.json");
}

#[test]
fn golden_chow() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewcalc"))
        .args(["chow", "--expr", "displays.chow"])
        .current_dir(data(""))
        .output()
        .unwrap();
    let expected = std::fs::read_to_string(data("golden/chow_gr24.json")).unwrap();
    assert_eq!(String::from_utf8(json_ok(out)).unwrap(), expected);
}
