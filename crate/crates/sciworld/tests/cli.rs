use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sciworld"))
}

#[test]
fn usage_errors_exit_one() {
    let s = bin().args(["eval", "--bogus"]).output().unwrap().status;
    assert_eq!(s.code(), Some(1));
    let s = bin().args(["eval", "--split", "nope", "--seed", "1"]).output().unwrap().status;
    assert_eq!(s.code(), Some(1));
    let s = bin().args(["play", "--task", "99-9", "--seed", "1"]).output().unwrap().status;
    assert_eq!(s.code(), Some(1));
    let s = bin().args(["eval", "--simplifications", "fly", "--seed", "1"]).output().unwrap().status;
    assert_eq!(s.code(), Some(1));
}

#[test]
fn list_tasks_names_all_thirty() {
    let out = bin().arg("list-tasks").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert!(text.lines().any(|l| l.starts_with("10-2 ")));
}

#[test]
fn eval_results_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let s = bin()
            .args(["eval", "--agent", "random-valid", "--task", "4-2", "--episodes", "8", "--seed", "3", "--out"])
            .arg(&p)
            .output()
            .unwrap()
            .status;
        assert!(s.success());
        std::fs::read_to_string(p).unwrap()
    };
    let a = run("a.tsv");
    assert_eq!(a, run("b.tsv"));
    assert!(a.starts_with("task\ttopic\tname\tepisodes\tmean_score\n4-2\t"));
}

#[test]
fn gold_then_export() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold");
    let s = bin()
        .args(["gen-gold", "--task", "1-1", "--split", "train", "--seed", "0", "--out"])
        .arg(&gold)
        .output()
        .unwrap()
        .status;
    assert!(s.success());
    let ts = sciworld::transcript::read_corpus(&gold).unwrap();
    assert_eq!(ts.len(), 6);
    assert!(ts.iter().all(|t| t.final_score == 1.0));
    let out = dir.path().join("bc");
    let s = bin().arg("export").arg(&gold).args(["--format", "bc", "--out"]).arg(&out).output().unwrap().status;
    assert!(s.success());
    let lines = std::fs::read_to_string(out.join("bc.jsonl")).unwrap().lines().count();
    assert_eq!(lines, ts.iter().map(|t| t.steps.len()).sum::<usize>());
    let s = bin().arg("export").arg(&gold).args(["--format", "csv", "--out"]).arg(&out).output().unwrap().status;
    assert_eq!(s.code(), Some(1));
    let s = bin().arg("export").arg(dir.path().join("missing")).args(["--format", "bc", "--out"]).arg(&out).output().unwrap().status;
    assert_eq!(s.code(), Some(1));
}

#[test]
fn play_session_matches_the_api() {
    use std::io::Write;
    let mut child = bin()
        .args(["play", "--task", "1-1", "--var", "0", "--seed", "4"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"look around\ninventory\n:quit\n").unwrap();
    let out = String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap();
    let mut env = sciworld_core::env::Environment::new(sciworld_core::catalog::Catalog::builtin());
    env.reset("1-1", 0, 4, sciworld_core::task::Simplifications::easy()).unwrap();
    for cmd in ["look around", "inventory"] {
        let o = env.step(cmd).unwrap();
        assert!(out.contains(&o.obs_text), "{cmd}");
    }
}
