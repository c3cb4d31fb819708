//! Checks the three candidate patterns against the hexagon instance.

use patmine::fixtures;
use patmine::miner::{is_valid_pattern, MiningConfig};

fn main() {
    let ds = fixtures::dataset();
    let config = MiningConfig::for_dataset(&ds);
    println!("N+ = {}, N- = {}", ds.n_pos_threshold(), ds.n_neg_threshold());
    for (name, p) in [
        ("hexagon with chord", fixtures::candidate_valid()),
        ("rotated chord", fixtures::candidate_rotated()),
        ("three-vertex path", fixtures::candidate_path()),
    ] {
        let v = is_valid_pattern(&p, &ds, &config);
        println!(
            "{name:<20} valid={:<5} positives={} negatives={}",
            v.valid, v.positive_covered, v.negative_covered
        );
    }
}
