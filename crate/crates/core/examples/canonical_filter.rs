//! Shows how template occurrences and isomorphism collapse equivalent subsets.

use patmine::fixtures;
use patmine::miner::{connected_subsets, template_occurrences};
use patmine::morphism::is_isomorphic;

fn main() {
    let t = fixtures::template();
    let a = fixtures::candidate_valid();
    let b = fixtures::candidate_rotated();
    println!("rotated chord isomorphic to original: {}", is_isomorphic(&a, &b));

    let hexagon = t.induced_subgraph(&fixtures::HEXAGON).unwrap().graph;
    let occ = template_occurrences(&hexagon, &t);
    println!("occurrences of the hexagon in the template: {}", occ.len());

    for size in 2..=4 {
        let mut classes: Vec<_> = Vec::new();
        for s in connected_subsets(&t, size) {
            let g = t.induced_subgraph(&s).unwrap().graph;
            if !classes.iter().any(|c| is_isomorphic(c, &g)) {
                classes.push(g);
            }
        }
        println!(
            "size {size}: {} connected subsets, {} shapes",
            connected_subsets(&t, size).len(),
            classes.len()
        );
    }
}
