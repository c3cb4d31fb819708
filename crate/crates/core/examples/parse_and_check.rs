//! Parses a graph file, mines it, writes the patterns and reads them back.
//!
//! ```text
//! cargo run --example parse_and_check -- [graph_file]
//! ```

use patmine::dataio::{load_dataset, parse_patterns, write_patterns};
use patmine::dataset::ExampleClass;
use patmine::fixtures;
use patmine::miner::{mine, MiningConfig};
use patmine::morphism::{coverage, CoverageMode};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")),
        None => fixtures::GRAPH_FILE.to_owned(),
    };
    let ds = match load_dataset(&text, None) {
        Ok(ds) => ds,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    let found = mine(&ds, &MiningConfig::for_dataset(&ds)).expect("default configuration");
    let written = write_patterns(&found);
    let back = parse_patterns(&written, ds.is_undirected()).expect("own output parses");
    for p in &back {
        let pos = coverage(&p.graph, &ds, ExampleClass::Positive, CoverageMode::Full);
        let neg = coverage(&p.graph, &ds, ExampleClass::Negative, CoverageMode::Full);
        println!(
            "pattern #{} size {} positives {} negatives {}",
            p.index,
            p.subset.len(),
            pos.positive_covered,
            neg.negative_covered
        );
    }
}
