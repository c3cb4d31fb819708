mod common;

use patmine::dataio::{
    gen_synthetic, load_dataset, parse_graphs, parse_patterns, preset, write_bench_csv, write_dataset,
    write_patterns, BenchRecord, SynthParams,
};
use patmine::dataset::ExampleClass;
use patmine::fixtures;
use patmine::miner::{mine, MiningConfig, Strategy};

fn small(seed: u64) -> SynthParams {
    SynthParams {
        n_graphs: 12,
        vertex_range: (3, 9),
        target_avg_edges: 8,
        n_labels: 3,
        positive_fraction: 0.5,
        seed,
    }
}

#[test]
fn synthetic_datasets_round_trip() {
    for seed in 0..50 {
        let ds = gen_synthetic(&small(seed)).unwrap();
        let text = write_dataset(&ds);
        let back = load_dataset(&text, None).unwrap();
        assert_eq!(back.template(), ds.template());
        assert_eq!(back.examples(), ds.examples());
        assert_eq!(write_dataset(&back), text);
    }
}

#[test]
fn generator_is_deterministic_per_seed() {
    let p = preset("yoshida-small").unwrap();
    assert_eq!(write_dataset(&gen_synthetic(&p).unwrap()), write_dataset(&gen_synthetic(&p).unwrap()));
    let other = SynthParams { seed: 8, ..p.clone() };
    assert_ne!(write_dataset(&gen_synthetic(&p).unwrap()), write_dataset(&gen_synthetic(&other).unwrap()));
}

#[test]
fn generated_graphs_match_target_statistics() {
    let p = SynthParams {
        n_graphs: 100,
        ..preset("yoshida").unwrap()
    };
    let ds = gen_synthetic(&p).unwrap();
    let n = ds.examples().len() as f64;
    let vertices: f64 = ds.examples().iter().map(|e| e.graph.vertex_count() as f64).sum::<f64>() / n;
    let edges: f64 = ds.examples().iter().map(|e| e.graph.edge_count() as f64 / 2.0).sum::<f64>() / n;
    assert!((vertices - 20.0).abs() <= 2.0, "mean vertices {vertices}");
    assert!((edges - 23.0).abs() <= 2.3, "mean edges {edges}");
    for e in ds.examples() {
        assert!(e.graph.is_connected());
        assert!(e.graph.labels().iter().all(|l| l.as_str().starts_with('l')));
    }
    assert!(ds.template().is_connected());
}

#[test]
fn fixture_file_shape() {
    let blocks = parse_graphs(fixtures::GRAPH_FILE).unwrap();
    assert_eq!(blocks.len(), 3);
    assert_eq!(blocks[2].graph.vertex_count(), 8);
    let ds = load_dataset(fixtures::GRAPH_FILE, None).unwrap();
    assert_eq!(ds.count(ExampleClass::Positive), 1);
    assert_eq!(ds.count(ExampleClass::Negative), 1);
    assert_eq!(ds.label_universe().len(), 1);
}

#[test]
fn pattern_files_round_trip() {
    let ds = fixtures::dataset();
    let found = mine(&ds, &MiningConfig::for_dataset(&ds)).unwrap();
    let text = write_patterns(&found);
    let hexagon = text
        .lines()
        .find(|l| l.starts_with("p # ") && l.contains("size=6"))
        .unwrap();
    assert!(hexagon.contains("size=6 pos=1 neg=0 time_ms="), "{hexagon}");
    let back = parse_patterns(&text, true).unwrap();
    for (r, p) in found.iter().zip(&back) {
        let want: Vec<_> = r.pattern.edges().map(|(u, v)| (r.subset[u.index()], r.subset[v.index()])).collect();
        let got: Vec<_> = p.graph.edges().map(|(u, v)| (p.subset[u.index()], p.subset[v.index()])).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn bench_csv_row_accounting() {
    let rec = |i| BenchRecord {
        strategy: Strategy::Decomposed,
        index: i,
        elapsed_ms: 1.5,
        dataset: "yoshida".into(),
        seed: Some(1),
    };
    let text = write_bench_csv(&(1..=15).map(rec).collect::<Vec<_>>());
    assert_eq!(text.lines().count(), 16);
    assert_eq!(text.lines().nth(15), Some("decomposed,15,1.500,yoshida,1"));
}
