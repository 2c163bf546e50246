//! The verification suites on a small corpus, with one JSON report per
//! suite and group.
//!
//!     cargo run --example verify_corpus

use group_graphs::spec::GroupSpec;
use group_graphs::verify::{run_corpus, Bounds, CorpusEntry, Suite, Tag};

fn main() {
    let corpus = vec![
        CorpusEntry {
            name: "s3".into(),
            spec: GroupSpec::Dihedral { n: 3 },
            tags: vec![Tag::Soluble, Tag::FrobeniusExpected],
        },
        CorpusEntry {
            name: "a4".into(),
            spec: GroupSpec::Permutation {
                degree: 4,
                generators: vec![vec![vec![1, 2, 3]], vec![vec![1, 2], vec![3, 4]]],
            },
            tags: vec![
                Tag::Soluble,
                Tag::FrobeniusExpected,
                Tag::DisconnectedExpected,
            ],
        },
        CorpusEntry {
            name: "s4".into(),
            spec: GroupSpec::Symmetric { n: 4 },
            tags: vec![Tag::Soluble],
        },
    ];
    let suites = [Suite::Hierarchy, Suite::Theorem1, Suite::Corollary];
    let run = run_corpus(&corpus, &suites, &Bounds::default());
    for report in &run.reports {
        println!("{}", serde_json::to_string(report).unwrap());
    }
    println!(
        "all pass: {} ({} reports)",
        run.all_pass,
        run.reports.len()
    );
    assert!(run.all_pass);
}
