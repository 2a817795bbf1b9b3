use std::io::Write;
use std::process::{Command, Output, Stdio};

fn twistfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistfold")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn star_prints_structured_value() {
    let o = twistfold(&["--format", "structured", "star", "cylinder", "x3", "x1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "value star(x3,x1) x1*x3+i*nu*x2\n");
}

#[test]
fn project_splits_d1() {
    let o = twistfold(&["--order", "2", "project", "cylinder", "d1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("tangent = ") && text.contains("normal = "), "{text}");
}

#[test]
fn check_twist_and_cone_run_pass() {
    let o = twistfold(&["--order", "2", "check-twist", "cylinder", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = twistfold(&["--format", "structured", "run", "cone"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("summary 12 0\n"));
}

#[test]
fn failing_check_exits_one() {
    let dir = std::env::temp_dir().join(format!("twistfold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad");
    let src = "twistfold-scenario v1\n[setup]\nname = bad\ncoords = x1 x2\nlevel = x1^2 + x2^2 - 1\ngen rot = -x2*d1 + x1*d2\n\n[checks]\nnot-zero: zero x1\n";
    std::fs::write(&path, src).unwrap();
    let o = twistfold(&["--format", "structured", "run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "scenario bad\ncheck not-zero fail x1\norder not-zero 4\nsummary 0 1\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_exit_two() {
    let o = twistfold(&["run", "/nonexistent/scenario"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    let o = twistfold(&["star", "cylinder", "star(x3", "x1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repl_reads_stdin() {
    let mut child =
        Command::new(env!("CARGO_BIN_EXE_twistfold")).args(["--order", "2", "repl", "cylinder"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"let a = x1 + x2\nact(L12, a)\nquit\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x1 + x2\nx1 - x2\n");
}
