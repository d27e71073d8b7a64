use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;
use tempconn::fixtures::FIG1;
use tempconn::parse_temporal_graph;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tempconn(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tempconn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn on_fig1(args: &[&str]) -> Run {
    let mut full = args.to_vec();
    full.extend(["--input", "-"]);
    tempconn(&full, FIG1)
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tempconn-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn reach_answers_with_exit_codes() {
    let r = on_fig1(&["reach", "--from", "a", "--to", "e", "--model", "nonstrict"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "yes"));
    let r = on_fig1(&["reach", "--from", "a", "--to", "f", "--model", "nonstrict"]);
    assert_eq!((r.code, r.stdout.trim()), (1, "no"));
    let r = on_fig1(&["reach", "--from", "a", "--to", "a"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "yes"));
    // the blue walk needs two moves at time 2
    let r = on_fig1(&["reach", "--from", "a", "--to", "e", "--model", "strict"]);
    assert_eq!(r.code, 1);
}

#[test]
fn reach_rejects_unknown_vertex() {
    let r = on_fig1(&["reach", "--from", "a", "--to", "zz"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error:"), "{}", r.stderr);
}

#[test]
fn reach_profile_lists_each_timestep() {
    let r = on_fig1(&["reach", "--from", "a", "--profile"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "1: a b");
    assert_eq!(lines[2], "2: a b c e");
}

#[test]
fn components_of_the_running_example() {
    let r = on_fig1(&["components", "--kind", "tcc", "--closed", "--model", "nonstrict"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().any(|l| l == "a b c d"), "{}", r.stdout);
    let r = on_fig1(&["components", "--kind", "tucc", "--model", "nonstrict"]);
    assert!(r.stdout.lines().any(|l| l == "a b c d e f"), "{}", r.stdout);
}

#[test]
fn components_json_is_sorted_and_parseable() {
    let r = on_fig1(&["components", "--kind", "tcc", "--closed", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let comps = v["components"].as_array().unwrap();
    assert!(comps.iter().any(|c| c == &serde_json::json!(["a", "b", "c", "d"])));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn components_on_one_snapshot_are_static_components() {
    let g = "tg undirected 6\n0 1 1\n1 2 1\n3 4 1\n";
    let r = tempconn(&["components", "--kind", "tcc", "--input", "-"], g);
    assert_eq!(r.code, 0);
    let body: Vec<&str> = r.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["0 1 2", "3 4", "5"]);
}

#[test]
fn check_connected_sets_and_components() {
    let r = on_fig1(&["check", "--set", "a,b,c,d", "--kind", "tcc", "--closed", "--maximal"]);
    assert_eq!(r.code, 0);
    let r = on_fig1(&["check", "--set", "a,b", "--kind", "tcc", "--closed", "--maximal"]);
    assert_eq!(r.code, 1);
    let r = on_fig1(&["check", "--set", "a,b", "--kind", "tcc", "--closed"]);
    assert_eq!(r.code, 0);
    let r = on_fig1(&["check", "--set", "a", "--kind", "tcc"]);
    assert_eq!(r.code, 0);
    let r = on_fig1(&["check", "--set", "a,q", "--kind", "tcc"]);
    assert_eq!(r.code, 2);
}

#[test]
fn find_witnesses() {
    let r = on_fig1(&["find", "--k", "5", "--kind", "tcc"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "a b c d e"));
    let r = on_fig1(&["find", "--k", "7", "--kind", "tcc"]);
    assert_eq!((r.code, r.stdout.trim()), (1, "none"));
    let r = on_fig1(&["find", "--k", "1", "--kind", "tucc"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.split_whitespace().count(), 1);
}

#[test]
fn find_fpt_needs_undirected_non_strict() {
    let r = on_fig1(&["find", "--k", "3", "--kind", "tcc", "--algo", "fpt"]);
    assert_eq!(r.code, 2);
    let path = "tg undirected 4\n0 1 1\n1 2 2\n2 3 3\n";
    let r = tempconn(&["find", "--k", "4", "--kind", "tucc", "--algo", "fpt", "--input", "-"], path);
    assert_eq!((r.code, r.stdout.trim()), (0, "0 1 2 3"));
    let r =
        tempconn(&["find", "--k", "3", "--kind", "tcc", "--algo", "fpt", "--model", "strict", "--input", "-"], path);
    assert_eq!(r.code, 2);
}

#[test]
fn malformed_graph_is_a_usage_error() {
    let r = tempconn(&["components", "--kind", "tcc", "--input", "-"], "tg undirected 2\n0 5 1\n");
    assert_eq!(r.code, 2);
    let r = tempconn(&["components", "--kind", "tcc", "--input", "/nonexistent/graph.tg"], "");
    assert_eq!(r.code, 2);
}

#[test]
fn gen_from_source_files() {
    let r = tempconn(&["gen", "dir-tau2", "--input", "-"], "graph 3\nnames u v z\nu v\nv z\n");
    assert_eq!(r.code, 0);
    let g = parse_temporal_graph(&r.stdout).unwrap();
    assert_eq!((g.vertex_count(), g.lifetime()), (7, 2));
    let r = tempconn(&["gen", "clique-tcc", "--input", "-"], "graph 3\n0 1\n1 2\n0 2\n");
    let g = parse_temporal_graph(&r.stdout).unwrap();
    assert_eq!((g.vertex_count(), g.lifetime()), (18, 12));
    let r = tempconn(&["gen", "dir-tau2", "--input", "-"], "graph 3\n0 7\n");
    assert_eq!(r.code, 2);
}

#[test]
fn gen_random_sat_gadget_with_sidecar() {
    let dir = scratch_dir("gen");
    let prefix = dir.join("sat");
    let prefix = prefix.to_str().unwrap();
    let r =
        tempconn(&["gen", "sat-conn", "--nx", "2", "--ny", "2", "--clauses", "3", "--seed", "7", "--out", prefix], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    let g = parse_temporal_graph(&std::fs::read_to_string(format!("{prefix}.tg")).unwrap()).unwrap();
    assert_eq!((g.vertex_count(), g.lifetime()), (12, 8));
    let sidecar: Value = serde_json::from_str(&std::fs::read_to_string(format!("{prefix}.json")).unwrap()).unwrap();
    assert_eq!(sidecar["query"]["kind"], "tcc");
    assert_eq!(sidecar["query"]["closed"], false);
    assert_eq!(sidecar["query"]["model"], "nonstrict");
    assert_eq!(sidecar["threshold"], 12);
    assert!(sidecar["iff"].as_str().unwrap().contains("<->"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn selftest_passes_and_vacuous_run_passes() {
    let r = tempconn(&["selftest", "--trials", "200", "--max-n", "9", "--seed", "1"], "");
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.stdout.lines().last(), Some("all suites passed"));
    let r = tempconn(&["selftest", "--trials", "0"], "");
    assert_eq!(r.code, 0);
}

#[test]
fn selftest_failure_dumps_a_replayable_counterexample() {
    let dir = scratch_dir("dump");
    let dump = dir.join("out");
    let r = tempconn(
        &["selftest", "--trials", "20", "--seed", "2", "--inject-failure", "--dump", dump.to_str().unwrap()],
        "",
    );
    assert_eq!(r.code, 1);
    let file = dump.join("counterexample.tg");
    let g = parse_temporal_graph(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert!(g.vertex_count() <= 2);
    let replay = tempconn(&["components", "--kind", "tcc", "--input", file.to_str().unwrap()], "");
    assert_eq!(replay.code, 0);
    std::fs::remove_dir_all(dir).ok();
}
