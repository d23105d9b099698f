use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tabstab(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tabstab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tabstab");
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            input.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

const S: &str = ". . 1 3\n. . 5 6\n2 4\n";
const T: &str = ". . . 4 5 6\n. . 3 7\n1 2\n";

#[test]
fn rect_text_from_stdin() {
    let o = tabstab(&["rect", "-"], Some(S));
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 3 5 6\n2 4\n");
}

#[test]
fn rect_json_tracks_rows() {
    let path = tmp("s.txt");
    std::fs::write(&path, S).unwrap();
    let o = tabstab(&["rect", path.to_str().unwrap(), "--format", "json"], None);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], "tabstab/1");
    assert_eq!(v["shape"], serde_json::json!([4, 2]));
    let prov = v["provenance"].as_array().unwrap();
    assert_eq!(prov.len(), 6);
    // 5 starts in row 2 and ends in row 1.
    assert_eq!(prov[4]["entry"], 5);
    assert_eq!(prov[4]["origin_row"], 2);
    assert_eq!(prov[4]["row"], 1);
}

#[test]
fn stab_reports_json() {
    let o = tabstab(&["stab", "-"], Some(S));
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["stab"], 2);
    assert_eq!(v["within_bound"], true);

    let o = tabstab(&["stab", "-"], Some(T));
    assert_eq!(json(&o)["stab"], 3);
}

#[test]
fn stab_accepts_json_input() {
    let o = tabstab(
        &["stab", "-"],
        Some(r#"{"inner":[2,2,0],"rows":[[1,3],[5,6],[2,4]]}"#),
    );
    assert!(o.status.success());
    assert_eq!(json(&o)["stab"], 2);
}

#[test]
fn stab_with_k_max_lists_every_verdict() {
    let o = tabstab(&["stab", "-", "--k-max", "4"], Some(S));
    let v = json(&o);
    assert_eq!(v["verdicts"], serde_json::json!([false, true, true, true]));
    assert_eq!(v["shapes"][2], serde_json::json!([8, 6, 4]));
}

#[test]
fn bad_input_exits_one() {
    let o = tabstab(&["stab", "-"], Some(". 1\n2 3\n"));
    assert_eq!(o.status.code(), Some(1));
    let o = tabstab(&["stab", "-"], Some("1 x\n"));
    assert_eq!(o.status.code(), Some(1));
    let o = tabstab(&["rect", "/nonexistent/file"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = tabstab(&["no-such-command"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = tabstab(&["lemma-check", "--lemma", "nope"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    assert_eq!(tabstab(&["--help"], None).status.code(), Some(0));
    assert_eq!(tabstab(&["--version"], None).status.code(), Some(0));
}

#[test]
fn greene_single_word() {
    let o = tabstab(
        &[
            "greene", "--k", "3", "2", "7", "3", "5", "9", "1", "4", "6", "8",
        ],
        None,
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "9");
    let o = tabstab(
        &[
            "greene", "--k", "1", "--oracle", "2", "7", "3", "5", "9", "1", "4", "6", "8",
        ],
        None,
    );
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn greene_several_words_with_witness() {
    let o = tabstab(
        &[
            "greene",
            "--witness",
            "--format",
            "json",
            "1 5 2 6 4 3",
            "/",
            "1 3 4 9 7",
        ],
        None,
    );
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["value"], 6);
    let total: usize = v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().split_whitespace().count())
        .sum();
    assert_eq!(total, 6);
}

#[test]
fn greene_reads_stdin_lines() {
    let o = tabstab(&["greene"], Some("1 5 2 6 4 3\n1 3 4 9 7\n"));
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn greene_oracle_cap_exits_three() {
    let word: Vec<String> = (1..=30).map(|x| x.to_string()).collect();
    let mut args = vec!["greene", "--oracle"];
    args.extend(word.iter().map(String::as_str));
    assert_eq!(tabstab(&args, None).status.code(), Some(3));
}

#[test]
fn lemma_check_reports() {
    let o = tabstab(
        &[
            "lemma-check",
            "--lemma",
            "tds",
            "--trials",
            "30",
            "--seed",
            "5",
        ],
        None,
    );
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], "tabstab/1");
    assert_eq!(v["report"]["failed"], 0);
    assert_eq!(v["report"]["seed"], 5);
}

#[test]
fn lemma_check_resource_limit_exits_three() {
    let o = tabstab(
        &["lemma-check", "--lemma", "lis1", "--max-letters", "40"],
        None,
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_writes_csv() {
    let path = tmp("enum.csv");
    let o = tabstab(
        &[
            "enumerate",
            "--max-n",
            "4",
            "--max-rows",
            "3",
            "--jobs",
            "2",
            "--csv",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("stab > r: 0"));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["shape", "inner", "entries_hash", "stab", "r"]
    );
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let stab: usize = rec[3].parse().unwrap();
        let r: usize = rec[4].parse().unwrap();
        assert!(stab <= r);
        assert_eq!(rec[2].len(), 16);
        rows += 1;
    }
    assert!(rows > 0);
}

#[test]
fn enumerate_json_summary_is_clean() {
    let o = tabstab(&["enumerate", "--max-n", "4", "--format", "json"], None);
    let v = json(&o);
    assert_eq!(v["summary"]["stab_violations"], serde_json::json!([]));
}

#[test]
fn enumerate_resource_limit_exits_three() {
    let o = tabstab(&["enumerate", "--max-n", "40"], None);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn perm_stats_csv() {
    let path = tmp("perm.csv");
    let o = tabstab(
        &["perm-stats", "--n", "3", "--csv", path.to_str().unwrap()],
        None,
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("w,stab,q_tableau,ascents"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.contains(&"1 3 2,2,1 2 / 3,1"));
    assert!(rows.contains(&"1 2 3,3,1 2 3,2"));
}

#[test]
fn perm_stats_json() {
    let o = tabstab(&["perm-stats", "--n", "4", "--format", "json"], None);
    let v = json(&o);
    assert_eq!(v["summary"]["classes"].as_array().unwrap().len(), 10);
    assert_eq!(v["summary"]["violations"], serde_json::json!([]));
}
