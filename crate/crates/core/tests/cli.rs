use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_approx-codec");

fn run(args: &[&str], env_config: Option<&Path>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("APPROX_CODEC_CONFIG");
    if let Some(p) = env_config {
        cmd.env("APPROX_CODEC_CONFIG", p);
    }
    cmd.output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stdout);
    serde_json::from_str(text.lines().next().expect("a line of output")).unwrap()
}

fn error_code(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("{}", String::from_utf8_lossy(&o.stderr)));
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn explore_commands() {
    let o = run(&["explore", "best-approx", "--c", "1/2", "--depth", "7"], None);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), r#"{"L":[2],"R":[1,4]}"#);

    let o = run(&["explore", "split", "--d1", "1"], None);
    assert_eq!(stdout_json(&o)["split"], 2);

    let o = run(&["explore", "gaps", "--n", "100"], None);
    assert!(stdout_json(&o)["distinct"].as_u64().unwrap() <= 3);

    let o = run(&["explore", "condition-ii", "--a", "-1/2", "--b", "1/3", "--d", "5", "--e", "4"], None);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o)["g_at_midpoint"], 4);
}

#[test]
fn encode_then_decode_through_files() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("a.json");
    let param = dir.path().join("p.json");
    fs::write(&input, r#"{"m":1,"tuples":[[1],[3]]}"#).unwrap();
    let o = run(&["encode", "--input", input.to_str().unwrap(), "--out", param.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["final_depth"], "18916");
    let o = run(&["decode", "--param", param.to_str().unwrap()], None);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o), serde_json::json!({"m":"1","tuples":[["1"],["3"]]}));
    let o = run(&["decode", "--param", param.to_str().unwrap(), "--count", "1"], None);
    assert_eq!(stdout_json(&o)["tuples"], serde_json::json!([["1"]]));

    // a chain that no longer extends its predecessor
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&param).unwrap()).unwrap();
    v["chains"][2][1]["R"].as_array_mut().unwrap().clear();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, v.to_string()).unwrap();
    let o = run(&["decode", "--param", bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "parse_error");
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let dup = dir.path().join("dup.json");
    fs::write(&dup, r#"{"m":1,"tuples":[[2],[2]]}"#).unwrap();
    let o = run(&["encode", "--input", dup.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "duplicate_tuple");

    let two = dir.path().join("two.json");
    fs::write(&two, r#"{"m":1,"tuples":[[1],[2]]}"#).unwrap();
    let o = run(&["--depth-cap", "1000", "encode", "--input", two.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_code(&o), "depth_exhausted");

    let o = run(&["explore", "best-approx", "--c", "0.5", "--depth", "3"], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "parse_error");

    let o = run(&["frobnicate"], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_code(&o), "usage");

    let o = run(&["--help"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("roundtrip"));
}

#[test]
fn roundtrip_command() {
    let o = run(&["roundtrip", "--trials", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["trials"], 0);

    let args = ["--seed", "3", "roundtrip", "--trials", "3", "--max-m", "1", "--max-n", "1"];
    let (a, b) = (run(&args, None), run(&args, None));
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["successes"], 3);
}

#[test]
fn config_file_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"limits":{"depth_cap":5}}"#).unwrap();
    let o = run(&["explore", "best-approx", "--c", "1/2", "--depth", "7"], Some(&cfg));
    assert_eq!(o.status.code(), Some(3));
    // flags win over the file
    let o = run(&["--depth-cap", "10", "explore", "best-approx", "--c", "1/2", "--depth", "7"], Some(&cfg));
    assert!(o.status.success());

    fs::write(&cfg, r#"{"limits":{"depth_cap":0}}"#).unwrap();
    let o = run(&["explore", "split", "--d1", "1"], Some(&cfg));
    assert_eq!(o.status.code(), Some(2));
    fs::write(&cfg, r#"{"colour":"red"}"#).unwrap();
    let o = run(&["explore", "split", "--d1", "1"], Some(&cfg));
    assert_eq!(o.status.code(), Some(2));

    let sys = dir.path().join("sine.json");
    fs::write(&sys, r#"{"kind":"sine"}"#).unwrap();
    let o = run(&["--system", sys.to_str().unwrap(), "explore", "best-approx", "--c", "0", "--depth", "4"], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["L"], serde_json::json!([4]));
    assert_eq!(v["R"], serde_json::json!([1, 3]));
}

#[test]
fn config_round_trips_through_a_file() {
    use approx_codec::cli::RunConfig;
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c.json");
    let mut c = RunConfig {
        seed: 9,
        ..RunConfig::default()
    };
    c.limits.search_cap = 77;
    c.save(&p).unwrap();
    assert_eq!(RunConfig::load(&p).unwrap(), c);
}
