//! Times both strategies on a 50-graph synthetic dataset.
//!
//! ```text
//! cargo run --release --example strategy_benchmark -- [n_graphs] [patterns] [seed]
//! ```

use patmine::dataio::{gen_synthetic, preset, SynthParams};
use patmine::miner::{mine, MiningConfig, Strategy};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n_graphs = args.next().unwrap_or(50) as usize;
    let patterns = args.next().unwrap_or(5) as usize;
    let seed = args.next().unwrap_or(1);

    let params = SynthParams {
        n_graphs,
        seed,
        ..preset("yoshida").expect("built-in preset")
    };
    let ds = gen_synthetic(&params).expect("valid parameters");
    println!(
        "{} graphs, template {} vertices, N+ = {}",
        ds.examples().len(),
        ds.template().vertex_count(),
        ds.n_pos_threshold()
    );
    for strategy in [Strategy::Decomposed, Strategy::Monolithic] {
        let config = MiningConfig {
            strategy,
            max_patterns: Some(patterns),
            ..MiningConfig::for_dataset(&ds)
        };
        let found = mine(&ds, &config).expect("valid config");
        let times: Vec<String> = found.iter().map(|r| format!("{:.3}", r.elapsed_ms)).collect();
        println!("{strategy:<10} ms per pattern: {}", times.join(" "));
    }
}
