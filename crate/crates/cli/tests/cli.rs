use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hajos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hajos")).args(args).env_remove("HAJOS_SEED").output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hajos"))
        .args(args)
        .env_remove("HAJOS_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bound_prints_floor_half() {
    let o = hajos(&["bound", "--order", "9"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn generate_writes_one_class_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n7.g6");
    let o = hajos(&["generate", "--order", "7", "--out", out.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 30);
    let summary: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(summary["nonisomorphic_count"], 30);
    assert_eq!(summary["labeled_even_count"], 1u64 << 15);
}

#[test]
fn filter_reports_csv() {
    let classes = stdout(&hajos(&["generate", "--order", "7"]));
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("n7.g6");
    fs::write(&input, classes).unwrap();
    let o = hajos(&["filter", input.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("7,")).unwrap();
    assert!(row.starts_with("7,30,29,0,0,0,1,0,0,"), "{row}");
}

#[test]
fn verify_succeeds_on_small_classes() {
    let mut input = String::new();
    for n in 3..=7 {
        input.push_str(&stdout(&hajos(&["generate", "--order", &n.to_string()])));
    }
    let o = with_stdin(&["verify", "-", "--report", "json"], &input);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["rows"]["7"]["total"], 30);
    assert!(report["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn verify_seed_comes_from_the_environment() {
    let input = "H~~~~~~\n";
    let run = |seed: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hajos"));
        cmd.args(["verify", "-", "--no-race", "--report", "json"]).env_remove("HAJOS_SEED");
        if let Some(s) = seed {
            cmd.env("HAJOS_SEED", s);
        }
        let mut child = cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
        child.wait_with_output().unwrap()
    };
    assert!(run(Some("17")).status.success());
    let bad = run(Some("not-a-number"));
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn invalid_input_exits_with_one_unless_skipped() {
    let input = "Bw\nCF\nB?\n";
    let strict = with_stdin(&["verify", "-"], input);
    assert_eq!(strict.status.code(), Some(1));
    let lenient = with_stdin(&["verify", "-", "--skip-invalid"], input);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&lenient.stderr).contains("skipped line 2"));
}

#[test]
fn exhausted_budget_exits_with_three() {
    let o = with_stdin(
        &["verify", "-", "--no-race", "--max-attempts", "0", "--node-limit", "1", "--timeout-ms", "0"],
        "H~~~~~~\n",
    );
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("aborted: H~~~~~~"));
}

#[test]
fn emit_lp_writes_named_models() {
    let dir = tempfile::tempdir().unwrap();
    let o = with_stdin(&["emit-lp", "-", "--formulation", "hd", "--out", dir.path().to_str().unwrap()], "D~{\n");
    assert!(o.status.success());
    let names: Vec<String> =
        fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(names, vec!["n5_447e7b_hd.lp".to_string()]);
    let text = fs::read_to_string(dir.path().join(&names[0])).unwrap();
    assert!(text.contains("Subject To") && text.ends_with("End\n"));

    // the five-cycle has no vertex of degree three or four
    let o = with_stdin(&["emit-lp", "-", "--formulation", "hd", "--out", dir.path().to_str().unwrap()], "Dhc\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(hajos(&["bound"]).status.code(), Some(1));
    assert_eq!(hajos(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hajos(&["--help"]).status.code(), Some(0));
}
