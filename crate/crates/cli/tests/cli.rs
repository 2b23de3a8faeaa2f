use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_darcais"));
    cmd.env_remove("DARCAIS_CACHE_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("darcais-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn lehmer_table_matches_printed_values() {
    let out = run(&["table", "lehmerQ"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("lehmerQ.csv"));
}

#[test]
fn parity_magnitudes_match_printed_values() {
    let out = run(&["table", "betraege"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), golden("betraege.csv"));
}

#[test]
fn alphabeta_leading_rows_match_printed_values() {
    let out = run(&["table", "alphabeta", "--n", "2,3,4,5,6,7,8,9,10,20"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), golden("alphabeta_small.csv"));
}

#[test]
fn observation_matches_printed_values() {
    let out = run(&["table", "observation"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), golden("observation.csv"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = scratch("repeat");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for path in [&a, &b] {
        let out = run(&["table", "figAA", "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert!(!a.contains(&b'\r'));
}

#[test]
fn extended_rows_need_the_flag() {
    let out = run(&["table", "observation", "--n", "149"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--extended"));
    assert!(stdout(&out).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["table", "table6"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["zeros", "P:nonsense", "3"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn json_mirror_has_same_cells() {
    let csv = stdout(&run(&["table", "lehmerQ", "--n", "1,2,3"]));
    let json = stdout(&run(&["table", "lehmerQ", "--n", "1,2,3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["id"], "lehmerQ");
    let rows = v["rows"].as_array().unwrap();
    let from_json: Vec<String> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    assert_eq!(csv.lines().skip(1).collect::<Vec<_>>(), from_json);
}

#[test]
fn out_extension_selects_json() {
    let dir = scratch("ext");
    let path = dir.join("t.json");
    assert!(run(&["table", "lehmerQ", "--out", path.to_str().unwrap()]).status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["columns"][1], "q_sigma_at_minus_one");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = scratch("config");
    let cfg = dir.join("cfg.json");
    fs::write(&cfg, r#"{"decimals": 2, "n": [3, 4]}"#).unwrap();
    let out = run(&["table", "alphabeta", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "n,alpha,beta,ratio_alpha,ratio_beta\n3,-3.00,-1.00,0.79,0.63\n4,-3.41,-0.59,0.76,0.53\n");
    // the command line wins
    let out = run(&["table", "alphabeta", "--config", cfg.to_str().unwrap(), "--decimals", "1"]);
    assert!(stdout(&out).contains("\n3,-3.0,-1.0,0.8,0.6\n"));
    fs::write(&cfg, r#"{"colour": "red"}"#).unwrap();
    assert_eq!(run(&["table", "lehmerQ", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn szego_constants_are_configurable() {
    let base = stdout(&run(&["table", "szego", "--n", "5"]));
    assert_eq!(base, "n,alpha_tilde,scaled_alpha,gamma\n5,-10.953894,-14.472136,-14.488051\n");
    let other = stdout(&run(&["table", "szego", "--n", "5", "--szego-exponent", "-0.5"]));
    assert!(other.starts_with("n,alpha_tilde,scaled_alpha,gamma\n5,-10.953894,-14.472136,"));
    assert_ne!(base, other);
}

#[test]
fn cache_is_written_reused_and_repaired() {
    let dir = scratch("cache");
    let cold = stdout(&run(&["table", "observation", "--n", "2,3,5,7"]));
    let out = bin()
        .env("DARCAIS_CACHE_DIR", &dir)
        .args(["cache", "sigma", "20"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 2);
    let warm = bin()
        .env("DARCAIS_CACHE_DIR", &dir)
        .args(["table", "observation", "--n", "2,3,5,7"])
        .output()
        .unwrap();
    assert_eq!(stdout(&warm), cold);
    assert!(stderr(&warm).is_empty());
    for f in &files {
        fs::write(f, "[1, 2").unwrap();
    }
    let repaired = bin()
        .env("DARCAIS_CACHE_DIR", &dir)
        .args(["table", "observation", "--n", "2,3,5,7"])
        .output()
        .unwrap();
    assert!(repaired.status.success());
    assert_eq!(stdout(&repaired), cold);
    assert!(stderr(&repaired).contains("warning"));
}

#[test]
fn cache_needs_a_directory() {
    let out = run(&["cache", "sigma", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("DARCAIS_CACHE_DIR"));
}

#[test]
fn zeros_reports_exact_endpoints() {
    let out = run(&["zeros", "Q:sigma", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["alpha"]["lo"], "-3/1");
    assert_eq!(v["alpha"]["hi"], "-3/1");
    let out = run(&["zeros", "parity", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["family"], "P[g=parity,h=id]");
}

#[test]
fn verify_lemma_writes_json_lines() {
    let out = run(&["verify", "lemma", "--seed", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 200);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["residual"], "0/1");
        assert_eq!(v["ok"], true);
        assert_eq!(v["seed"], 5);
    }
}

#[test]
fn verify_commands_pass() {
    for what in ["identities", "lehmer", "rechts"] {
        let out = run(&["verify", what, "--n", "12"]);
        assert!(out.status.success(), "{what}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
    }
}
