use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thompson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).expect("utf-8")
}

#[test]
fn word_problem_on_a_file_genset() {
    let gs = data("g.gs");
    assert_eq!(code(&["wp", "--genset", &gs, "--word", "a a^-1"]), 0);
    assert_eq!(code(&["wp", "--genset", &gs, "--word", "a a"]), 1);
    assert_eq!(code(&["wp", "--genset", &gs, "--word", "a a^-1", "--cross-check"]), 0);
    assert_eq!(code(&["wp-via-eval", "--word", "A B A^-1"]), 1);
}

#[test]
fn eval_deciders() {
    assert_eq!(
        code(&["eval", "--word", "A", "--x", "0", "--y", "00", "--cross-check"]),
        0
    );
    assert_eq!(
        code(&["eval", "--word", "A", "--x", "0", "--y", "01", "--cross-check"]),
        1
    );
    for d in ["table", "universal", "commutation"] {
        assert_eq!(
            code(&["eval", "--word", "A A", "--x", "0", "--y", "000", "--decider", d]),
            0,
            "{d}"
        );
    }
    let json = stdout(&[
        "eval",
        "--word",
        "A",
        "--x",
        "0",
        "--y",
        "00",
        "--cross-check",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["decision"], true);
    assert_eq!(v["agree"], true);
    assert_eq!(v["deciders"].as_array().unwrap().len(), 3);
}

#[test]
fn long_inputs() {
    assert_eq!(stdout(&["classify", "--word", "A^-1 A", "--x", ""]).trim(), "Short");
    assert_eq!(stdout(&["classify", "--word", "A", "--x", "0"]).trim(), "Long");
    assert!(stdout(&["eval-long", "--word", "A", "--x", "0"]).starts_with("00\n"));
    assert_eq!(code(&["eval-long", "--word", "A^-1 A", "--x", ""]), 1);
}

#[test]
fn recognizer_both_directions() {
    assert_eq!(code(&["recognize", "--genset", "standard", &data("stream.txt")]), 0);
    assert_eq!(
        code(&["recognize", "--genset", "standard", "--rev", &data("stream.txt")]),
        1
    );
    let rev = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("rev.txt");
    std::fs::write(&rev, "00 A 0").unwrap();
    assert_eq!(
        code(&["recognize", "--genset", "standard", "--rev", rev.to_str().unwrap()]),
        0
    );
}

#[test]
fn complements() {
    assert_eq!(stdout(&["complement", "--single", "01"]), "00\n1\n");
    assert_eq!(stdout(&["complement", &data("p.code")]), "1\n");
}

#[test]
fn fixators_and_commutation() {
    let out = stdout(&["fixgen", "--code", &data("p.code")]);
    assert!(out.contains("# P' = {1}"));
    assert_eq!(
        code(&[
            "commtest",
            "--g",
            &data("fix.tbl"),
            "--code",
            &data("p.code"),
            "--cross-check"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "commtest",
            "--g",
            &data("swap.tbl"),
            "--code",
            &data("p.code"),
            "--cross-check"
        ]),
        1
    );
    assert_eq!(
        code(&[
            "eval-comm",
            "--g",
            &data("swap.tbl"),
            "--x",
            "0",
            "--y",
            "1",
            "--cross-check"
        ]),
        0
    );
    assert_eq!(
        code(&[
            "eval-comm",
            "--g",
            &data("swap.tbl"),
            "--x",
            "0",
            "--y",
            "0",
            "--cross-check"
        ]),
        1
    );
}

#[test]
fn circuits() {
    let ckt = data("and.ckt");
    assert_eq!(code(&["cvp", &ckt, "--x", "11", "--y", "1"]), 0);
    for x in ["00", "01", "10"] {
        assert_eq!(code(&["cvp", &ckt, "--x", x, "--y", "1", "--cross-check"]), 1);
        assert_eq!(code(&["cvp", &ckt, "--x", x, "--y", "0", "--cross-check"]), 0);
    }
    assert!(stdout(&["compile-circuit", &ckt]).contains("phi_AND"));
}

#[test]
fn brin_thompson() {
    let out = stdout(&["check2v", &data("bad.tbl"), "--cross-check"]);
    assert!(out.contains("Q1=false"));
    assert!(out.contains("witness"));
    let ext = stdout(&["extend2v", &data("f.tbl")]);
    assert_eq!(
        ext,
        "n=2\n(e,0) -> (e,0)\n(0,e) -> (0,e)\n(1,10) -> (1,11)\n(1,11) -> (1,10)\n"
    );
    assert_eq!(code(&["check2v", &data("f.tbl"), "--cross-check"]), 0);
    assert_eq!(stdout(&["complement2v", &data("pair.code")]), "(1,1)\nessential: no\n");
    assert_eq!(stdout(&["embed", "--word", "A t2"]).trim(), "A*1 sigma t12*1 sigma^-1");
    assert_eq!(code(&["eval2v", "--word", "A*1", "--x", "(0,1)", "--y", "(00,1)"]), 0);
    assert_eq!(
        code(&["eval2v", "--word", "sigma", "--x", "(01,1)", "--y", "(101,e)"]),
        0
    );
}

#[test]
fn monoid() {
    assert_eq!(
        code(&[
            "monoid-check",
            "--word",
            "push0",
            "--x",
            "1",
            "--y",
            "01",
            "--cross-check"
        ]),
        0
    );
    assert_eq!(
        code(&["monoid-check", "--word", "pop0", "--x", "1", "--y", "", "--cross-check"]),
        1
    );
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&["eval", "--word", "Z", "--x", "0", "--y", "0"]), 2);
    assert_eq!(code(&["eval", "--word", "A", "--x", "0a", "--y", "0"]), 2);
    assert_eq!(code(&["cvp", &data("missing.ckt"), "--x", "1", "--y", "1"]), 2);
    assert_eq!(code(&["eval"]), 2);
    assert_eq!(code(&["selftest", "--only", "11"]), 2);
}

#[test]
fn selftest_single_criterion() {
    let out = stdout(&["selftest", "--only", "1"]);
    assert!(out.starts_with("PASS  1 "), "{out}");
}
