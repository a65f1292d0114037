//! Runs the fuzz-target invariants over the checked-in seed corpora.

use std::fs;
use std::path::PathBuf;

use walkingtime::embedding::load_embeddings;
use walkingtime::graph::{parse_input, write_edge_list};
use walkingtime::plot::parse_labels;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|f| fs::read_to_string(f.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn edge_list_seeds() {
    let mut parsed = 0;
    for text in seeds("parse_edge_list") {
        if let Ok(g) = parse_input(&text) {
            let written = write_edge_list(&g);
            assert_eq!(write_edge_list(&parse_input(&written).unwrap()), written);
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn embedding_seeds() {
    for text in seeds("load_embeddings") {
        if let Ok(e) = load_embeddings(&text) {
            assert_eq!(load_embeddings(&e.to_text()).unwrap(), e);
        }
    }
}

#[test]
fn label_seeds() {
    let results: Vec<bool> = seeds("parse_labels").iter().map(|t| parse_labels(t).is_ok()).collect();
    assert!(results.contains(&true) && results.contains(&false));
}
