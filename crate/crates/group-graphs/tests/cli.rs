//! End-to-end tests of the command-line interface: exit codes, JSON
//! shapes, file formats, and determinism across thread counts.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_group-graphs"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// The JSON document is everything after the `#`-prefixed summary lines.
fn json_part(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    serde_json::from_str(&body).unwrap_or_else(|e| panic!("bad JSON ({e}): {body}"))
}

const S3_SPEC: &str = "kind = \"dihedral\"\nn = 3\n";
const A4_SPEC: &str = r#"
kind = "permutation"
degree = 4
generators = [[[1, 2, 3]], [[1, 2], [3, 4]]]
"#;

#[test]
fn build_info_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "s3.spec", S3_SPEC);
    let out = bin().args(["build-info"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json_part(&out);
    assert_eq!(doc["order"], 6);
    assert_eq!(doc["soluble"], true);
    assert_eq!(doc["nilpotent"], false);
    assert_eq!(doc["fitting_order"], 3);
    assert_eq!(doc["frobenius"]["is_frobenius"], true);
    assert_eq!(doc["frobenius"]["kernel_order"], 3);
    assert_eq!(doc["minimal_normal_orders"], serde_json::json!([3]));
}

#[test]
fn build_info_nilpotent_case() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "c12.spec", "kind = \"cyclic\"\nn = 12\n");
    let out = bin().args(["build-info"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json_part(&out);
    assert_eq!(doc["nilpotent"], true);
    assert_eq!(doc["fitting_order"], 12);
}

#[test]
fn malformed_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "bad.spec", "kind = \"nosuch\"\n");
    let out = bin().args(["build-info"]).arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    // missing file too
    let out = bin().args(["build-info", "missing.spec"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_diameter_and_components() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write(dir.path(), "s3.spec", S3_SPEC);
    let out = bin()
        .args(["graph"])
        .arg(&s3)
        .args(["--kind", "normalising", "--diameter"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json_part(&out);
    assert_eq!(doc["vertex_count"], 4);
    assert_eq!(doc["edge_count"], 3);
    assert_eq!(doc["diameter"], 2);

    let a4 = write(dir.path(), "a4.spec", A4_SPEC);
    let out = bin()
        .args(["graph"])
        .arg(&a4)
        .args(["--kind", "normalising", "--components"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = json_part(&out);
    assert_eq!(doc["components"], 5);
    // components are listed by smallest vertex id; the three order-2
    // subgroups form the only component with more than one vertex
    let mut sizes: Vec<u64> = doc["component_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 1, 1, 3]);
    let mut diams: Vec<u64> = doc["component_diameters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    diams.sort_unstable();
    assert_eq!(diams, vec![0, 0, 0, 0, 1]);

    // permuting components agree with normalising on A4
    let out = bin()
        .args(["graph"])
        .arg(&a4)
        .args(["--kind", "permuting", "--components"])
        .output()
        .unwrap();
    assert_eq!(json_part(&out)["components"], 5);
}

#[test]
fn graph_export_writes_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write(dir.path(), "s3.spec", S3_SPEC);
    let out_path = dir.path().join("edges.txt");
    let out = bin()
        .args(["graph"])
        .arg(&s3)
        .args(["--kind", "normalising", "--export"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "normalising 4 3");
    let mut edges: Vec<(u32, u32)> = lines
        .map(|l| {
            let mut it = l.split(' ');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(edges.len(), 3);
    for &(i, j) in &edges {
        assert!(i < j);
    }
    edges.dedup();
    assert_eq!(edges.len(), 3);
}

#[test]
fn exhausted_edge_budget_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "c30.spec", "kind = \"cyclic\"\nn = 30\n");
    let out = bin()
        .args(["graph"])
        .arg(&spec)
        .args(["--kind", "normalising", "--diameter", "--max-edges", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn unknown_graph_kind_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write(dir.path(), "s3.spec", S3_SPEC);
    let out = bin()
        .args(["graph"])
        .arg(&s3)
        .args(["--kind", "sideways"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

const SMALL_CORPUS: &str = r#"
[[group]]
name = "s3"
tags = ["soluble", "frobenius-expected"]
spec = { kind = "dihedral", n = 3 }

[[group]]
name = "a4"
tags = ["soluble", "frobenius-expected", "disconnected-expected"]
spec = { kind = "permutation", degree = 4, generators = [[[1, 2, 3]], [[1, 2], [3, 4]]] }

[[group]]
name = "c9"
tags = ["soluble"]
spec = { kind = "cyclic", n = 9 }
"#;

#[test]
fn verify_small_corpus_passes() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(dir.path(), "corpus.toml", SMALL_CORPUS);
    let out = bin()
        .args(["verify", "--corpus"])
        .arg(&corpus)
        .args(["--suite", "theorem1,corollary,hierarchy"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json_part(&out);
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["groups"], 3);
    assert!(doc["generated_unix"].as_u64().unwrap() > 0);
    let reports = doc["reports"].as_array().unwrap();
    assert!(reports.iter().all(|r| {
        r["claims"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["status"] != "fail")
    }));
}

#[test]
fn verify_failure_exits_1_and_names_witness() {
    // a corpus whose tag is wrong: S4 is not Frobenius
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(
        dir.path(),
        "corpus.toml",
        r#"
[[group]]
name = "s4"
tags = ["soluble", "frobenius-expected"]
spec = { kind = "symmetric", n = 4 }
"#,
    );
    let out = bin()
        .args(["verify", "--corpus"])
        .arg(&corpus)
        .args(["--suite", "theorem1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL s4"), "summary names the failing group");
}

#[test]
fn verify_records_build_failures_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(
        dir.path(),
        "corpus.toml",
        r#"
[[group]]
name = "broken"
spec = { kind = "symmetric", n = 9 }

[[group]]
name = "c6"
tags = ["soluble"]
spec = { kind = "cyclic", n = 6 }
"#,
    );
    let out = bin()
        .args(["verify", "--corpus"])
        .arg(&corpus)
        .args(["--suite", "corollary"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc = json_part(&out);
    let reports = doc["reports"].as_array().unwrap();
    // the broken entry is recorded, the good one still verified
    assert!(reports
        .iter()
        .any(|r| r["group"] == "broken" && r["suite"] == "build"));
    assert!(reports
        .iter()
        .any(|r| r["group"] == "c6" && r["suite"] == "corollary"));
}

#[test]
fn verify_empty_suite_list_is_usage_error() {
    let out = bin().args(["verify", "--suite", ""]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(dir.path(), "corpus.toml", SMALL_CORPUS);
    let run = |threads: &str| {
        let out = bin()
            .args(["verify", "--threads", threads, "--corpus"])
            .arg(&corpus)
            .args(["--suite", "hierarchy,theorem1,collapse-equivalence"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let mut doc = json_part(&out);
        doc["generated_unix"] = serde_json::json!(0);
        serde_json::to_string(&doc).unwrap()
    };
    assert_eq!(run("1"), run("2"));
}

#[test]
fn paper_example_local_phase() {
    let out = bin()
        .args(["paper-example", "--phase", "local"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json_part(&out);
    assert_eq!(doc["group_order"], 562_500);
    assert_eq!(doc["local"]["h_order"], 36);
    assert_eq!(doc["local"]["order_x"], 9);
    assert_eq!(doc["local"]["psi_edges_h_to_h_translate"], 0);
    assert!(doc.get("diameters").is_none() || doc["diameters"].is_null());
}

#[test]
fn paper_example_rejects_bad_phase() {
    let out = bin()
        .args(["paper-example", "--phase", "everything"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["graph", "--bogus-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    let out = bin().args(["--help"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in ["build-info", "graph", "verify", "paper-example"] {
        assert!(text.contains(sub), "help mentions {sub}");
    }
}

#[test]
fn threads_env_variable_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write(dir.path(), "s3.spec", S3_SPEC);
    let out = bin()
        .env("GROUP_GRAPHS_THREADS", "1")
        .args(["graph"])
        .arg(&s3)
        .args(["--kind", "permuting", "--diameter"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_part(&out)["diameter"], 2);
}
