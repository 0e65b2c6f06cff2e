use std::io::Write;
use std::process::{Command, Output};

fn pfq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfq")).args(args).output().expect("run pfq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn matrix_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

const J4: &str = r#"{"n":4,"entries":[["0","1","0","0"],["-1","0","0","0"],["0","0","0","1"],["0","0","-1","0"]]}"#;

#[test]
fn verify_special_json() {
    let o = pfq(&["verify", "--id", "pf-special", "--n", "2", "--r", "0", "--trials", "10", "--seed", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["passed"], 10);
    assert_eq!(v["reports"].as_array().unwrap().len(), 10);
    assert!(v.get("wall_ms").is_none());
}

#[test]
fn verify_text_modes() {
    let o = pfq(&["verify", "--id", "conj-motzkin", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("total 3 passed 3 failed 0 skipped 0\n"));
    let o = pfq(&["verify", "--id", "appendix-gosper", "--trials", "50", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_is_deterministic() {
    let args = ["verify", "--id", "q-dougall", "--m", "1", "--trials", "2", "--seed", "3", "--json"];
    assert_eq!(pfq(&args).stdout, pfq(&args).stdout);
}

#[test]
fn timing_is_opt_in() {
    let o = pfq(&["verify", "--id", "hermite", "--max-n", "1", "--json", "--timing"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("wall_ms").is_some());
    assert!(v["reports"][0].get("elapsed_ms").is_some());
}

#[test]
fn unknown_id_lists_valid_ids() {
    let o = pfq(&["verify", "--id", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("pf-special") && err.contains("qv4"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pfq(&["verify"]).status.code(), Some(2));
    assert_eq!(pfq(&["verify", "--id", "pf-special", "--a", "1/0"]).status.code(), Some(2));
    assert_eq!(pfq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pfq(&["rpp", "verify", "--id", "pf-special"]).status.code(), Some(2));
}

#[test]
fn pfaffian_files() {
    let f = matrix_file(J4);
    for alg in ["combinatorial", "expansion", "elimination"] {
        let o = pfq(&["pf", "--file", f.path().to_str().unwrap(), "--algorithm", alg]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), "1\n");
    }
    let odd = matrix_file(r#"{"n":3,"entries":[["0","1","2"],["-1","0","3"],["-2","-3","0"]]}"#);
    assert_eq!(pfq(&["pf", "--file", odd.path().to_str().unwrap()]).status.code(), Some(2));
    let bad = matrix_file(r#"{"n":2,"entries":[["0","1"],["1","0"]]}"#);
    let o = pfq(&["pf", "--file", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("(0, 1)"));
    let junk = matrix_file("not json");
    assert_eq!(pfq(&["pf", "--file", junk.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pfq(&["pf", "--file", "/nonexistent/m.json"]).status.code(), Some(2));
}

#[test]
fn decompose_j4() {
    let f = matrix_file(J4);
    let o = pfq(&["decompose", "--file", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t"], serde_json::json!(["1", "1"]));
    assert_eq!(v["v"]["n"], 4);
}

#[test]
fn decompose_zero_leading_pfaffian_fails() {
    let f = matrix_file(r#"{"n":4,"entries":[["0","0","1","0"],["0","0","0","1"],["-1","0","0","0"],["0","-1","0","0"]]}"#);
    let o = pfq(&["decompose", "--file", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rpp_gf_methods_agree() {
    let brute = pfq(&["rpp", "gf", "--shape", "2,1", "--profile", "0,2", "--trunc", "6", "--method", "brute"]);
    assert_eq!(stdout(&brute), "[0,0,1,1,1,0,0]\n");
    let det = pfq(&["rpp", "gf", "--shape", "2,1", "--profile", "0,2", "--trunc", "6", "--method", "det"]);
    assert_eq!(det.stdout, brute.stdout);
    let one = pfq(&["rpp", "gf", "--shape", "1", "--profile", "0", "--trunc", "3"]);
    assert_eq!(stdout(&one), "[1,0,0,0]\n");
}

#[test]
fn rpp_guards_exit_2() {
    let o = pfq(&["rpp", "gf", "--shape", "6,5,4,2", "--profile", "0,0,0,0", "--trunc", "4", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pfq(&["rpp", "gf", "--shape", "2,2", "--profile", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pfq(&["rpp", "gf", "--shape", "2,1", "--profile", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rpp_verify() {
    let o = pfq(&["rpp", "verify", "--id", "rpp-odd", "--n", "1", "--m", "1", "--trunc", "6", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn seq_and_list() {
    assert_eq!(stdout(&pfq(&["seq", "motzkin", "--n", "5"])), "1\n1\n2\n4\n9\n");
    assert_eq!(pfq(&["seq", "narayana"]).status.code(), Some(2));
    let ids = stdout(&pfq(&["list"]));
    assert!(ids.lines().any(|l| l == "appendix-telescoped"));
    assert!(ids.lines().count() >= 40);
}
