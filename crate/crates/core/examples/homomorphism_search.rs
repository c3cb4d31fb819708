//! Finds and counts injective homomorphisms of a triangle into a small graph.

use patmine::graph::{Label, LabeledGraph};
use patmine::morphism::{count_homomorphisms, find_homomorphism};

fn graph(n: usize, edges: &[(u32, u32)]) -> LabeledGraph {
    let labels = vec![Label::new("c").unwrap(); n];
    LabeledGraph::build(n, edges, labels, true).unwrap()
}

fn main() {
    let triangle = graph(3, &[(0, 1), (1, 2), (2, 0)]);
    // two triangles sharing the edge 1-2
    let target = graph(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (2, 3)]);

    match find_homomorphism(&triangle, &target) {
        Some(m) => {
            let images: Vec<_> = m.images().unwrap().iter().map(|v| v.0).collect();
            println!("first mapping: {images:?}");
        }
        None => println!("no mapping"),
    }
    println!("mappings in total: {}", count_homomorphisms(&triangle, &target));

    let square = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    println!("triangle into square: {:?}", find_homomorphism(&triangle, &square).is_some());
}
