use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cutlab(args: &[&str], stdin: &str) -> Output {
    cutlab_env(args, stdin, &[])
}

fn cutlab_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cutlab"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn single_edge_bisection_costs_nothing() {
    let o = cutlab(&["solve", "--spec", "balanced:2", "--norm", "1"], "A_\n");
    assert!(o.status.success());
    let rec = &json_lines(&o)[0];
    assert_eq!(rec["value"], 0);
    assert_eq!(rec["g6"], "A_");
}

#[test]
fn five_vertex_triangle_free_graphs() {
    let o = cutlab(&["gen", "--n", "5", "--forbid", "3"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 14);
}

#[test]
fn t1_sweep_has_no_violations() {
    let o = cutlab(&["check", "--claims", "T1", "--n-range", "4..6"], "");
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["violated"], 0);
    assert_eq!(
        summary["records"].as_u64().unwrap() as usize,
        lines.len() - 1
    );
}

#[test]
fn exit_codes() {
    assert_eq!(cutlab(&["bogus"], "").status.code(), Some(64));
    assert_eq!(
        cutlab(&["solve", "--spec", "balanced:x"], "A_\n")
            .status
            .code(),
        Some(64)
    );
    assert_eq!(cutlab(&["gen", "--n", "20"], "").status.code(), Some(2));
    assert_eq!(
        cutlab(&["solve"], "not graph6 ~~\n").status.code(),
        Some(65)
    );
    assert_eq!(cutlab(&["--help"], "").status.code(), Some(0));
    // K_{3,1} has no bisection with both classes below 16/18 edges
    assert_eq!(
        cutlab(&["check", "--claims", "T6", "--n-range", "4..4"], "")
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn version_names_the_catalog_hash() {
    let o = cutlab(&["--version"], "");
    assert!(o.status.success());
    let v = stdout(&o);
    let hash = v.trim().rsplit("catalog-sha256:").next().unwrap();
    assert_eq!(hash, cutlab::flags::catalog_hash());
    assert_eq!(hash.len(), 64);
}

#[test]
fn gen_output_survives_solve() {
    let graphs = stdout(&cutlab(&["gen", "--n", "7"], ""));
    let o = cutlab(&["solve", "--spec", "balanced:3", "--norm", "inf"], &graphs);
    assert!(o.status.success());
    let echoed: Vec<String> = json_lines(&o)
        .iter()
        .map(|r| r["g6"].as_str().unwrap().to_string())
        .collect();
    let sent: Vec<&str> = graphs.lines().collect();
    assert_eq!(echoed, sent);
}

#[test]
fn seeded_heuristics_are_byte_identical() {
    let graphs = stdout(&cutlab(&["gen", "--n", "8"], ""));
    for method in ["random-k", "nbhd", "biased"] {
        let mut args = vec![
            "heur", "--method", method, "--seed", "1234", "--trials", "6",
        ];
        if method == "biased" {
            args.extend(["--alpha", "3/4"]);
        }
        let a = cutlab_env(&args, &graphs, &[("CUT_THREADS", "1")]);
        let b = cutlab_env(&args, &graphs, &[("CUT_THREADS", "4")]);
        let c = cutlab(&args, &graphs);
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{method}");
        assert_eq!(a.stdout, c.stdout, "{method}");
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = cutlab_env(&["gen", "--n", "3"], "", &[("CUT_THREADS", "lots")]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn resume_finishes_an_interrupted_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let p = path.to_str().unwrap();
    let args = [
        "check",
        "--claims",
        "T1,RAZ",
        "--n-range",
        "3..7",
        "--resume",
        p,
    ];
    let full = cutlab(&args, "");
    assert!(full.status.success());
    let complete = std::fs::read_to_string(&path).unwrap();
    let records: Vec<&str> = complete
        .lines()
        .filter(|l| !l.starts_with("{\"summary\""))
        .collect();

    // cut the file inside a graph's group and in the middle of a line
    let keep = records.len() / 2 + 1;
    let mut partial = records[..keep].join("\n");
    partial.push('\n');
    partial.push_str(&records[keep][..15]);
    std::fs::write(&path, partial).unwrap();

    let resumed = cutlab(&args, "");
    assert!(resumed.status.success());
    let after = std::fs::read_to_string(&path).unwrap();
    let again: Vec<&str> = after
        .lines()
        .filter(|l| !l.starts_with("{\"summary\""))
        .collect();
    assert_eq!(again, records);
    let summary: serde_json::Value = serde_json::from_str(after.lines().last().unwrap()).unwrap();
    assert_eq!(
        summary["summary"]["records"].as_u64().unwrap() as usize,
        records.len()
    );
    assert!(summary["summary"]["resumed"].as_u64().unwrap() > 0);
}

#[test]
fn flags_modes() {
    let o = cutlab(&["flags", "--labeled", "lu:2", "--anchor", "0"], "Dhc\n");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("1/2"));

    let o = cutlab(
        &["flags", "--expected-cut", "vertex:0", "--sizes", "2,2"],
        "Cr\n",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("brute_force_agrees"));

    let o = cutlab(&["flags", "--ineq", "max-degree-half"], "Dhc\n");
    assert!(o.status.success());
    assert_eq!(
        cutlab(&["flags", "--ineq", "no-such"], "Dhc\n")
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        cutlab(&["flags", "--labeled", "lu:2", "--anchor", "9"], "Dhc\n")
            .status
            .code(),
        Some(65)
    );
    assert_eq!(cutlab(&["flags", "--list"], "").status.code(), Some(0));
}
