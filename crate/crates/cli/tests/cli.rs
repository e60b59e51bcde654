use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clap::{CommandFactory, Parser};
use giantcomp_cli::Cli;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_giantcomp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn invariants_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "seq.txt", "#counts\n1\t900\n3\t100\n");
    let o = run(&["invariants", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["M"], 1200);
    assert_eq!(v["R"], 3);
    assert_eq!(v["jD"], 1000);
}

#[test]
fn classify_and_feasible() {
    let dir = tempfile::tempdir().unwrap();
    let twos = write(dir.path(), "twos.txt", "#counts\n2\t5000\n");
    let o = run(&["classify", s(&twos), "--eps", "0.1", "--delta", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "NotWellBehaved\n");

    let bad = write(dir.path(), "bad.txt", "#counts\n1\t3\n");
    let o = run(&["feasible", s(&bad)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "infeasible\n");
    assert_eq!(stdout(&run(&["feasible", s(&twos)])), "feasible\n");

    let o = run(&["classify", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["invariants", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let zero = write(dir.path(), "zero.txt", "3\n0\n");
    let o = run(&["invariants", s(&zero)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn sample_kernel_explore_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write(dir.path(), "seq.txt", "#counts\n1\t10\n2\t10\n3\t10\n");
    let graph = dir.path().join("g.txt");
    let o = run(&["sample", s(&seq), "--method", "mcmc", "--seed", "3", "--burn-in", "2000", "--out", s(&graph)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&graph).unwrap();
    assert!(text.starts_with("n 30\n"));
    assert_eq!(text.lines().count(), 1 + 30);
    let again = run(&["sample", s(&seq), "--method", "mcmc", "--seed", "3", "--burn-in", "2000"]);
    assert_eq!(stdout(&again), text);

    let kernel = dir.path().join("h.json");
    assert_eq!(run(&["kernel", s(&graph), "--out", s(&kernel)]).status.code(), Some(0));
    let h: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&kernel).unwrap()).unwrap();
    assert!(h["edges"].is_array());

    let csv = dir.path().join("trace.csv");
    let o = run(&["explore", s(&graph), "--s0", "prime", "--omega", "0.01", "--seed", "1", "--csv", s(&csv)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let trace = std::fs::read_to_string(&csv).unwrap();
    assert!(trace.starts_with("t,v,w,deg_w,dprime,X,Xprime\n"));
    let o = run(&["explore", s(&graph), "--s0", "0", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cyclestats_and_powerlaw() {
    let o = run(&["cyclestats", "--t", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# C_t,70\n"));

    let o = run(&["powerlaw", "beta0", "--tol", "1e-4"]);
    let b: f64 = stdout(&o).trim().parse().unwrap();
    assert!((b - 3.47875).abs() < 1e-4);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pl.txt");
    let o = run(&["powerlaw", "--alpha", &100f64.ln().to_string(), "--beta", "2", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("#counts\n1\t100\n2\t25\n"));
    assert_eq!(run(&["powerlaw", "--alpha", "1"]).status.code(), Some(1));
    assert_eq!(run(&["powerlaw", "--alpha", "40", "--beta", "1"]).status.code(), Some(1));
}

#[test]
fn experiment_writes_reproducible_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"scenario": {"kind": "regular", "n": 100, "degree": 3}, "trials": 5, "gamma": 0.5, "master_seed": 9}"#,
    );
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert_eq!(run(&["experiment", s(&spec), "--out", s(&a)]).status.code(), Some(0));
    assert_eq!(run(&["experiment", s(&spec), "--out", s(&b)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.lines().last().unwrap().starts_with("#aggregate,"));
    let bad = write(dir.path(), "bad.json", r#"{"scenario": {"kind": "regular", "n": 100, "degree": 3}, "gamma": 2}"#);
    assert_eq!(run(&["experiment", s(&bad)]).status.code(), Some(1));
}

/// Every flag shown in help parses, and every flag the parser knows has
/// help text that mentions it.
#[test]
fn help_round_trip() {
    fn visit(cmd: &mut clap::Command, path: &mut Vec<String>) {
        let help = cmd.render_long_help().to_string();
        for arg in cmd.get_arguments() {
            let Some(long) = arg.get_long() else { continue };
            if long == "help" || long == "version" {
                continue;
            }
            assert!(help.contains(&format!("--{long}")), "{path:?}: --{long} missing from help");
            assert!(arg.get_help().is_some(), "{path:?}: --{long} has no description");
        }
        for sub in cmd.get_subcommands_mut() {
            path.push(sub.get_name().to_string());
            assert!(sub.get_about().is_some(), "{path:?} has no description");
            visit(sub, path);
            path.pop();
        }
    }
    let mut cmd = Cli::command();
    cmd.build();
    visit(&mut cmd, &mut vec![]);

    let parses = |args: &[&str]| Cli::try_parse_from(std::iter::once("giantcomp").chain(args.iter().copied())).is_ok();
    assert!(parses(&["invariants", "f", "--lambda", "5"]));
    assert!(parses(&["classify", "f", "--eps", "0.2", "--delta", "0.01", "--lambda", "3", "--json"]));
    assert!(parses(&["sample", "f", "--method", "config", "--seed", "1", "--burn-in", "9", "--out", "o"]));
    assert!(parses(&["kernel", "g", "--out", "o"]));
    assert!(parses(&[
        "explore", "g", "--s0", "1,2", "--omega", "0.1", "--seed", "2", "--budget", "5", "--stop-at-zero", "--csv", "c", "--json"
    ]));
    assert!(parses(&["cyclestats", "--t", "9"]));
    assert!(parses(&["powerlaw", "--alpha", "1", "--beta", "2", "--vertex-budget", "10", "--out", "o"]));
    assert!(parses(&["powerlaw", "beta0", "--tol", "1e-3"]));
    assert!(parses(&["experiment", "s.json", "--seed", "4", "--out", "o", "--json"]));
    assert!(!parses(&["sample", "f", "--method", "other"]));
    assert!(!parses(&["invariants", "f", "--undocumented"]));
}
