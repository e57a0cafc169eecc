use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kempe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kempe"))
        .args(args)
        .env_remove("KEMPE_FORMAT")
        .output()
        .expect("binary runs")
}

fn kempe_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kempe"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn catlin_has_no_correct_five_coloring() {
    let o = kempe(&["search", "--family", "catlin:2,2", "--q", "5", "--strategy", "exhaustive", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["status"], "proven_nonexistent");
    assert_eq!(v["version"], "1");
}

#[test]
fn koester_chi_is_four() {
    let o = kempe(&["chi", "--graph", "corpus:koester"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn generated_cycle_piped_into_clique() {
    let g = kempe(&["gen", "--family", "cycle", "--n", "5"]);
    assert_eq!(g.status.code(), Some(0));
    let o = kempe_stdin(&["clique", "--graph", "-", "--coloring", "[1,2,1,2,3]", "--format", "json"], &stdout(&g));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["clique"]["backbones"].as_array().unwrap().len(), 3);
    assert_eq!(v["clique"]["anchors"], serde_json::json!([0, 3, 4]));
}

#[test]
fn found_search_json_is_byte_identical_across_runs_and_workers() {
    let args = ["search", "--family", "catlin:2,2", "--q", "6", "--strategy", "kempe-walk", "--seed", "3", "--format", "json"];
    let a = kempe(&args);
    let mut more = args.to_vec();
    more.extend(["--workers", "3"]);
    let b = kempe(&more);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["status"], "found");
    assert_eq!(v["coloring"].as_array().unwrap().len(), 10);
}

#[test]
fn q_range_stops_at_first_found() {
    let o = kempe(&["search", "--family", "catlin:2,2", "--q-range", "5..7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let runs = json(&o)["runs"].as_array().unwrap().clone();
    assert_eq!(runs.len(), 2);
    assert_eq!(runs[0]["status"], "proven_nonexistent");
    assert_eq!(runs[1]["status"], "found");
}

#[test]
fn exhausted_budget_exits_one() {
    let o = kempe(&["search", "--family", "catlin:2,2", "--q", "5", "--budget", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["chi"],
        &["chi", "--graph", "corpus:nope"],
        &["chi", "--graph", "/no/such/file.col"],
        &["chi", "--family", "cycle:2"],
        &["critical", "--family", "cycle:5", "--coloring", "[1,1,2,1,2]"],
        &["critical", "--family", "cycle:5", "--coloring", "[1,2]"],
        &["search", "--family", "cycle:5"],
        &["search", "--family", "cycle:5", "--q-range", "4..3"],
        &["search", "--family", "cycle:5", "--q", "3", "--strategy", "annealing"],
        &["gen", "--family", "cycle", "--format", "dot"],
        &["chains", "--family", "cycle:5", "--coloring", "[1,2,1,2,3]", "--pair", "1,1"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = kempe(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?} wrote a partial report");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn self_loop_in_edge_list_is_rejected() {
    let o = kempe_stdin(&["chi", "--graph", "-"], "0 1\n2 2\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coloring_file_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("c.json");
    std::fs::write(&col, "[1, 2, 1, 2, 3]").unwrap();
    let graph = dir.path().join("c5.col");
    std::fs::write(&graph, stdout(&kempe(&["gen", "--family", "cycle:5"]))).unwrap();
    let out = dir.path().join("crit.json");
    let o = kempe(&[
        "critical",
        "--graph",
        graph.to_str().unwrap(),
        "--coloring",
        col.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["critical"], serde_json::json!([[0], [3], [4]]));
}

#[test]
fn backbone_chains_and_eliminate() {
    let c5 = ["--family", "cycle:5", "--coloring", "[1,2,1,2,3]"];
    let o = kempe(&[&["backbone", "--anchors", "0,3"][..], &c5].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 1 2 3"));

    let o = kempe(&[&["chains", "--pair", "1,3", "--format", "json"][..], &c5].concat());
    assert_eq!(json(&o)["chains"].as_array().unwrap().len(), 2);

    let o = kempe(&[&["eliminate", "--colors", "1,2", "--format", "json"][..], &c5].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["outcome"], "backbone_found");
}

#[test]
fn incorrect_coloring_has_no_clique() {
    // Vertex 2 is colored 3 but its neighbors show only color 1, so color 3
    // has no critical vertex.
    let o = kempe(&["clique", "--family", "path:3", "--coloring", "[1,2,3]", "--q", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn immersion_and_minor_on_catlin() {
    let found = json(&kempe(&["search", "--family", "catlin:2,2", "--q", "6", "--format", "json"]));
    let coloring = found["coloring"].to_string();
    let o = kempe(&["immersion-verify", "--family", "catlin:2,2", "--coloring", &coloring, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["edge_disjoint"], true);

    let o = kempe(&["minor", "--family", "catlin:2,2", "--q", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["hadwiger_lower_bound"], 6);

    let o = kempe(&["minor", "--family", "catlin:2,2", "--q", "6", "--format", "dot"]);
    assert!(stdout(&o).contains("subgraph cluster_"));
}

#[test]
fn dot_output_highlights_backbones() {
    let o = kempe(&["clique", "--family", "cycle:5", "--coloring", "[1,2,1,2,3]", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph"));
    assert!(dot.contains("penwidth"));
}

#[test]
fn environment_overrides_flags_defaults() {
    let o = Command::new(env!("CARGO_BIN_EXE_kempe"))
        .args(["chi"])
        .env("KEMPE_GRAPH", "corpus:catlin-2-2")
        .env("KEMPE_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["chi"], 5);
}

#[test]
fn corpus_subcommands() {
    let o = kempe(&["corpus", "list", "--format", "json"]);
    let names: Vec<String> = json(&o)["graphs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_owned())
        .collect();
    assert!(names.contains(&"koester".to_owned()));
    let o = kempe(&["corpus", "check", "catlin-2-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chi=8"));
    assert_eq!(kempe(&["corpus", "check", "nope"]).status.code(), Some(2));
}

#[test]
fn gen_json_lists_edges() {
    let v = json(&kempe(&["gen", "--family", "wheel:5", "--format", "json"]));
    assert_eq!(v["n"], 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 10);
}
