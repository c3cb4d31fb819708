//! Mines the hexagon instance level by level with both strategies.
//!
//! ```text
//! cargo run --example levelwise_mining -- [min_size] [max_size]
//! ```

use patmine::fixtures;
use patmine::miner::{mine, MiningConfig, Strategy};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("numeric argument"));
    let min = args.next().unwrap_or(2);
    let max = args.next();
    let ds = fixtures::dataset();
    for strategy in [Strategy::Decomposed, Strategy::Monolithic] {
        let config = MiningConfig {
            min_pattern_size: min,
            max_pattern_size: max,
            strategy,
            ..MiningConfig::for_dataset(&ds)
        };
        let found = mine(&ds, &config).expect("valid configuration");
        println!("{strategy}: {} patterns", found.len());
        for r in &found {
            let vs: Vec<_> = r.subset.iter().map(|v| v.0.to_string()).collect();
            println!(
                "  #{:<2} size {} edges {:<2} vertices {}",
                r.index,
                r.subset.len(),
                r.pattern.edge_count() / 2,
                vs.join(",")
            );
        }
    }
}
