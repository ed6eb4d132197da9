use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str, file: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name, file].iter().collect();
    p.to_string_lossy().into_owned()
}

fn tropex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropex")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("tropex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn curve_of_line() {
    let out = tropex(&["curve", "--poly", "0 + 0x + 0y"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 1);
    assert_eq!(v["vertices"][0]["point"], serde_json::json!(["0", "0"]));
    let dirs: Vec<&Value> = v["edges"].as_array().unwrap().iter().map(|e| &e["direction"]).collect();
    assert!(dirs.contains(&&serde_json::json!(["1", "1"])));
    assert!(dirs.contains(&&serde_json::json!(["-1", "0"])));
    assert!(dirs.contains(&&serde_json::json!(["0", "-1"])));
}

#[test]
fn output_is_deterministic() {
    let a = tropex(&["decompose", "--poly", "0+x+y+x^2+(-1)xy+y^2"]);
    let b = tropex(&["decompose", "--poly", "0+x+y+x^2+(-1)xy+y^2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_reports_extremal_quadratic() {
    let poly = std::fs::read_to_string(fixture("extremal-quadratic", "input.poly")).unwrap();
    let out = tropex(&["check", "--poly", poly.trim()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["extremal"], true);
    assert_eq!(v["curve_weighting_balanced"], true);
}

#[test]
fn decompose_six_ray_fan_two_parts() {
    for extra in [&[][..], &["--oracle"][..]] {
        let path = fixture("six-ray-fan", "input.json");
        let mut args = vec!["decompose", "--complex", path.as_str()];
        args.extend_from_slice(extra);
        let out = tropex(&args);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["parts"].as_array().unwrap().len(), 2);
        assert_eq!(v["unique"], false);
    }
}

#[test]
fn weighting_file_checked() {
    let c = fixture("six-ray-fan", "input.json");
    let good = tmp("good.json", r#"{"r1":"1","r2":"1","r3":"0","r4":"0","r5":"0","r6":"0"}"#);
    let bad = tmp("bad.json", r#"{"r1":"1","r2":"2","r3":"0","r4":"0","r5":"0","r6":"0"}"#);
    let v = json(&tropex(&["check", "--complex", &c, "--weighting", &good]));
    assert_eq!(v["weighting"]["balanced"], true);
    let vb = json(&tropex(&["check", "--complex", &c, "--weighting", &bad]));
    assert_eq!(vb["weighting"]["balanced"], false);
}

#[test]
fn rigidity_of_prism_framework() {
    let out = tropex(&["rigidity", "--framework", &fixture("prism-framework", "input.json")]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["rank"], 8);
    assert_eq!(v["perp_rank"], 8);
    assert_eq!(v["infinitesimally_rigid"], false);
    assert_eq!(v["direction_rigid"], false);
    assert_eq!(v["pebble_rigid"], true);
}

#[test]
fn reciprocal_recovers_weights() {
    let out = tropex(&["reciprocal", "--poly", "0+x+y+(-1)xy"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["integral"], true);
    assert_eq!(v["main_theorem"]["agree"], true);
}

#[test]
fn parse_error_exits_2() {
    let out = tropex(&["curve", "--poly", "x^"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "parse");
}

#[test]
fn missing_input_is_usage_error() {
    let out = tropex(&["curve"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_error_exits_1() {
    let text = r#"{"ambient_dim":2,"dim":1,
      "ridges":[{"id":"o","point":["0","0"],"basis":[]}],
      "faces":[{"id":"a","point":["1","0"],"basis":[["1","0"]],"ridges":["o"]},
               {"id":"b","point":["0","1"],"basis":[["0","1"]],"ridges":["o"]}]}"#;
    let out = tropex(&["check", "--complex", &tmp("cone.json", text)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "not_a_tropical_variety");
}

#[test]
fn limit_exceeded_exits_1() {
    let out = tropex(&["weightings", "--complex", &fixture("six-ray-fan", "input.json"), "--limit", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "limit_exceeded");
}

#[test]
fn render_svg() {
    let out = tropex(&["render", "--poly", "0+x+y+(-1)x^2", "--target", "curve"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("<svg"));
    assert!(s.trim_end().ends_with("</svg>"));
    let out = tropex(&["render", "--poly", "0+x+y+(-1)xy", "--target", "reciprocal"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("#ccc"));
}

#[test]
fn svg_to_file() {
    let dir = std::env::temp_dir().join(format!("tropex-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.svg");
    let out = tropex(&["curve", "--poly", "0+x+y", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(path).unwrap().contains("<line"));
}

#[test]
fn fixtures_all_pass() {
    let out = tropex(&["fixtures"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v.as_array().unwrap().iter().all(|o| o["passed"] == true));
}
