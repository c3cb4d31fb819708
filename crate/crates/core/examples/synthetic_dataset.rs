//! Generates a synthetic dataset and reports its shape.
//!
//! ```text
//! cargo run --example synthetic_dataset -- [preset] [seed]
//! ```

use patmine::dataio::{gen_synthetic, preset, write_dataset};
use patmine::dataset::ExampleClass;

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "yoshida-small".to_owned());
    let mut params = preset(&name).unwrap_or_else(|| panic!("unknown preset `{name}`"));
    if let Some(seed) = args.next() {
        params.seed = seed.parse().expect("numeric seed");
    }
    let ds = gen_synthetic(&params).expect("valid parameters");
    let n = ds.examples().len() as f64;
    let vertices: usize = ds.examples().iter().map(|e| e.graph.vertex_count()).sum();
    let edges: usize = ds.examples().iter().map(|e| e.graph.edge_count() / 2).sum();
    println!("preset {name}, seed {}", params.seed);
    println!(
        "{} positive, {} negative, N+ = {}",
        ds.count(ExampleClass::Positive),
        ds.count(ExampleClass::Negative),
        ds.n_pos_threshold()
    );
    println!("mean vertices {:.2}, mean edges {:.2}", vertices as f64 / n, edges as f64 / n);
    println!("labels used: {}", ds.label_universe().len());
    println!("serialized size: {} bytes", write_dataset(&ds).len());
}
