use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn loopforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopforge"))
        .args(args)
        .env_remove("LOOPFORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn check_corpus_json_reports_rif_false() {
    let o = loopforge(&["check", "--corpus", "table1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("\"rif\": {\n      \"holds\": false"), "{out}");
    assert!(out.starts_with("{\n  \"loop\": \"table1\",\n  \"order\": 24,"));
}

#[test]
fn check_output_is_deterministic() {
    let a = loopforge(&["check", "--corpus", "table2", "--json"]);
    let b = loopforge(&["check", "--corpus", "table2", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_expectations_set_the_exit_code() {
    let o = loopforge(&["check", "--corpus", "table1", "--expect", "rif"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("rif is false"));
    let o = loopforge(&[
        "check",
        "--corpus",
        "table1",
        "--expect",
        "rif=false",
        "--expect",
        "arif",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = loopforge(&["check", "--corpus", "table1", "--expect", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_latin_file_is_a_usage_error() {
    let f = temp("3\n0 1 2\n1 1 0\n2 0 1\n");
    let o = loopforge(&["check", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a Latin square"), "{}", stderr(&o));
}

#[test]
fn missing_arguments_are_usage_errors() {
    assert_eq!(loopforge(&["check"]).status.code(), Some(2));
    assert_eq!(loopforge(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        loopforge(&["check", "--corpus", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn words_use_point_labels_on_the_z13_loop() {
    let o = loopforge(&[
        "words",
        "--corpus",
        "steiner14",
        "--word",
        "0,1,5",
        "--ops",
        "pi",
    ]);
    assert_eq!(stdout(&o), "{3, 12}\n");
    let o = loopforge(&[
        "words",
        "--corpus",
        "steiner14",
        "--word",
        "1,0,5",
        "--ops",
        "pi",
    ]);
    assert_eq!(stdout(&o), "{12}\n");
    let o = loopforge(&[
        "words",
        "--corpus",
        "steiner14",
        "--word",
        "1,0",
        "--ops",
        "pir",
    ]);
    assert_eq!(stdout(&o), "10\n");
    let o = loopforge(&[
        "words",
        "--corpus",
        "steiner14",
        "--word",
        "9,e",
        "--ops",
        "pir",
    ]);
    assert_eq!(stdout(&o), "9\n");
}

#[test]
fn words_block_length() {
    let o = loopforge(&[
        "words",
        "--corpus",
        "z5",
        "--word",
        "1,1,4,2,3,2,1",
        "--ops",
        "blocks",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn steiner_z13_matches_file_input() {
    let z13 = loopforge(&["steiner", "--z13"]);
    assert_eq!(z13.status.code(), Some(0));
    let mut blocks = String::from("v = 13\n");
    for n in 0..13 {
        blocks.push_str(&format!("{} {} {}\n", n, (n + 2) % 13, (n + 8) % 13));
        blocks.push_str(&format!("{} {} {}\n", n, (n + 3) % 13, (n + 4) % 13));
    }
    let f = temp(&blocks);
    let from_file = loopforge(&["steiner", "--file", path(&f)]);
    assert_eq!(from_file.stdout, z13.stdout);
    assert!(stdout(&z13).starts_with("14\n0 1 2 3"));
    let broken = temp("v = 7\n0 1 3\n");
    assert_eq!(
        loopforge(&["steiner", "--file", path(&broken)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(loopforge(&["steiner"]).status.code(), Some(2));
}

#[test]
fn search_streams_models_and_reports_unsat() {
    let sat = temp("n = 4\nflag: exp2\n");
    let o = loopforge(&["search", path(&sat)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("4\n0 1 2 3\n"));
    assert!(stderr(&o).contains("status Sat"));

    let unsat = temp("n = 7\nflag: ip\nflag: exp2\nforbid: (x*y)*z = x*(y*z)\n");
    assert_eq!(loopforge(&["search", path(&unsat)]).status.code(), Some(1));
    assert_eq!(
        loopforge(&["search", path(&unsat), "--expect-unsat"])
            .status
            .code(),
        Some(0)
    );

    let o = loopforge(&["search", path(&temp("n = 5\n")), "--mode", "iso"]);
    assert!(stdout(&o).ends_with("# count 56\n"), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("\n\n").count(), 5);
}

#[test]
fn budget_comes_from_the_environment() {
    let f = temp("n = 10\nflag: ip\nflag: exp2\nforbid: (x*y)*z = x*(y*z)\n");
    let o = Command::new(env!("CARGO_BIN_EXE_loopforge"))
        .args(["search", path(&f)])
        .env("LOOPFORGE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("BudgetExhausted"));
    let o = Command::new(env!("CARGO_BIN_EXE_loopforge"))
        .args(["search", path(&f)])
        .env("LOOPFORGE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn product_and_chein() {
    let z2 = temp("2\n0 1\n1 0\n");
    let z3 = temp("3\n0 1 2\n1 2 0\n2 0 1\n");
    let o = loopforge(&["product", path(&z2), path(&z3)]);
    assert_eq!(stdout(&o).lines().next(), Some("6"));
    let o = loopforge(&["chein", path(&z3)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("6"));
    let nonassoc = loopforge(&["steiner", "--file", path(&temp(
        "v = 9\n0 1 2\n3 4 5\n6 7 8\n0 3 6\n1 4 7\n2 5 8\n0 4 8\n1 5 6\n2 3 7\n0 5 7\n1 3 8\n2 4 6\n",
    ))]);
    let s10 = temp(&stdout(&nonassoc));
    let o = loopforge(&["chein", path(&s10)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a group"));
}

#[test]
fn suite_filters_by_name() {
    let o = loopforge(&["suite", "--lemma", "p_xyx"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out
        .lines()
        .all(|l| l.contains("p_xyx") && l.ends_with("failed)")));
    assert!(out.contains("chein_s3"));
    assert_eq!(
        loopforge(&["suite", "--lemma", "nope"]).status.code(),
        Some(2)
    );
}
