use std::io::Write;
use std::process::{Command, Output, Stdio};

fn degseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degseq"))
        .args(args)
        .env_remove("DEGSEQ_NODE_BUDGET")
        .output()
        .unwrap()
}

fn degseq_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_degseq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["graphical", "3,3,1,1"], 0),
        (&["graphical", "5,4,4,3,3,3"], 0),
        (&["layoff", "5,4,4,3,3,3", "1"], 0),
        (&["realize", "2,2,2"], 0),
        (&["potential", "3,3,2,2,2", "C4"], 0),
        (&["clique-top", "3,3,3,3", "3"], 0),
        (&["rule", "5,4,4,3,3,3", "T2_1", "3"], 0),
        (&["sigma-formula", "thm11", "r=6", "48"], 0),
        (&["sigma-formula", "c4", "7"], 0),
        (&["sigma-brute", "K3", "6", "--no-zeros"], 0),
        (&["extremal", "6", "48"], 0),
        // refusals
        (&["layoff", "2,0,0", "1"], 1),
        (&["layoff", "2,2,2", "4"], 1),
        (&["realize", "3,3,1,1"], 1),
        (&["potential", "2,2", "K3"], 1),
        (&["rule", "3,3,3,3", "T2_2", "3"], 1),
        (&["sigma-formula", "thm11", "r=6", "47"], 1),
        (&["sigma-formula", "thm11", "r=5", "100"], 1),
        (&["sigma-brute", "K3", "9"], 1),
        (&["extremal", "3", "10"], 1),
        (&["verify", "6", "48", "K3"], 1),
        (&["potential", "2,2,2", "C2"], 1),
        // malformed
        (&["graphical", "3,x"], 2),
        (&["graphical", ""], 2),
        (&["layoff", "2,2,2", "one"], 2),
        (&["potential", "2,2,2", "Q5"], 2),
        (&["rule", "5,4,4,3,3,3", "T9_9", "3"], 2),
        (&["sigma-formula", "thm11", "48"], 2),
        (&["sigma-formula", "zeta", "48"], 2),
        (&["frobnicate"], 2),
        (&[], 2),
    ];
    for (args, want) in cases {
        let o = degseq(args);
        assert_eq!(
            o.status.code(),
            Some(*want),
            "degseq {args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn documented_outputs() {
    assert_eq!(stdout(&degseq(&["graphical", "3,3,1,1"])), "false");
    assert_eq!(stdout(&degseq(&["sigma-formula", "thm11", "r=6", "48"])), "324");
    assert_eq!(stdout(&degseq(&["sigma-formula", "ejl", "k=3", "6"])), "12");
    assert_eq!(stdout(&degseq(&["layoff", "5,4,4,3,3,3", "1"])), "3,3,2,2,2");
    assert_eq!(stdout(&degseq(&["extremal", "4", "7"])), "6,3,2,2,2,2,1");

    let o = degseq(&["verify", "6", "48", "U(K3,P3)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("PASS").count(), 5, "{text}");
    assert!(text.ends_with("overall: PASS"));
}

#[test]
fn unsorted_input_warns() {
    let o = degseq(&["graphical", "1,3,3,1"]);
    assert_eq!(stdout(&o), "false");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn json_sequences_round_trip() {
    let o = degseq(&["--json", "layoff", "5,4,4,3,3,3", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let printed = v["result"].to_string();
    assert_eq!(printed, "[4,3,3,2,2]");
    let o = degseq(&["--json", "graphical", &printed]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["graphical"], true);
    assert_eq!(v["sequence"].to_string(), printed);
    assert!(o.stderr.is_empty());
}

#[test]
fn json_graphs_round_trip() {
    for args in [
        &["--json", "realize", "3,3,2,2,2"][..],
        &["--json", "extremal", "6", "48"],
        &["--json", "potential", "3,3,2,2,2", "C4"],
    ] {
        let o = degseq(args);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let seq = match v.get("sequence") {
            Some(s) => s.clone(),
            None => serde_json::json!([3, 3, 2, 2, 2]),
        };
        let back = degseq_stdin(&["--json", "degrees", "-"], &String::from_utf8(o.stdout).unwrap());
        assert_eq!(back.status.code(), Some(0), "{args:?}");
        let w: serde_json::Value = serde_json::from_slice(&back.stdout).unwrap();
        assert_eq!(w["sequence"], seq, "{args:?}");
    }
}

#[test]
fn text_graph_round_trip() {
    let o = degseq(&["extremal", "5", "9", "--graph"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let back = degseq_stdin(&["degrees", "-"], &text);
    assert_eq!(stdout(&back), stdout(&degseq(&["extremal", "5", "9"])));
}

#[test]
fn realize_all_counts() {
    let o = degseq(&["--json", "realize", "1,1,1,1", "--all"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn sigma_brute_json() {
    let o = degseq(&["--json", "--threads", "2", "sigma-brute", "C4", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 10);
    assert_eq!(v["certificate"].to_string(), "[3,2,2,1]");
}

#[test]
fn node_budget_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_degseq"))
        .args(["verify", "6", "48", "U(K3,P3)"])
        .env("DEGSEQ_NODE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}
