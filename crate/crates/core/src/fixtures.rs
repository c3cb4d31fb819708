//! The small hexagon instance used throughout the tests and examples.
//!
//! All vertices carry label `a` and every edge is undirected.
//!
//! - template: ring `h1..h6` with chord `h2-h5` and a tail `h4-t1-t2`
//!   (ids `0..8`, in that order)
//! - positive example: ring of six with both chords `0-3` and `2-5`
//! - negative example: path `0-1-2-3`

use crate::dataset::{Dataset, Example, ExampleClass};
use crate::graph::{Label, LabeledGraph, VertexId};

pub const H1: VertexId = VertexId(0);
pub const H2: VertexId = VertexId(1);
pub const H3: VertexId = VertexId(2);
pub const H4: VertexId = VertexId(3);
pub const H5: VertexId = VertexId(4);
pub const H6: VertexId = VertexId(5);
pub const T1: VertexId = VertexId(6);
pub const T2: VertexId = VertexId(7);

pub const HEXAGON: [VertexId; 6] = [H1, H2, H3, H4, H5, H6];

/// The instance in the graph file format, with the template as block 2.
pub const GRAPH_FILE: &str = include_str!("../assets/fig1.graphs");

const RING: [(u32, u32); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];

fn uniform(n: usize) -> Vec<Label> {
    vec![Label::new("a").expect("non-empty"); n]
}

fn undirected(n: usize, edges: &[(u32, u32)]) -> LabeledGraph {
    LabeledGraph::build(n, edges, uniform(n), true).expect("fixture edges in range")
}

fn ring_plus(extra: &[(u32, u32)]) -> LabeledGraph {
    let edges: Vec<_> = RING.iter().chain(extra).copied().collect();
    undirected(6, &edges)
}

pub fn template() -> LabeledGraph {
    let edges: Vec<_> = RING
        .iter()
        .chain(&[(1, 4), (3, 6), (6, 7)])
        .copied()
        .collect();
    undirected(8, &edges)
}

/// Hexagon with two long diagonals.
pub fn positive_example() -> LabeledGraph {
    ring_plus(&[(0, 3), (2, 5)])
}

/// Path on four vertices.
pub fn negative_path() -> LabeledGraph {
    undirected(4, &[(0, 1), (1, 2), (2, 3)])
}

/// Hexagon with chord `1-4`: the template's hexagon block.
pub fn candidate_valid() -> LabeledGraph {
    ring_plus(&[(1, 4)])
}

/// Hexagon with chord `0-3`; isomorphic to [`candidate_valid`].
pub fn candidate_rotated() -> LabeledGraph {
    ring_plus(&[(0, 3)])
}

/// Path on three vertices, the template's tail `h4-t1-t2`.
pub fn candidate_path() -> LabeledGraph {
    undirected(3, &[(0, 1), (1, 2)])
}

/// Template, one positive, one negative; `N+ = 1`, `N- = 0`.
pub fn dataset() -> Dataset {
    Dataset::new(
        template(),
        vec![
            Example {
                id: 0,
                class: ExampleClass::Positive,
                graph: positive_example(),
            },
            Example {
                id: 1,
                class: ExampleClass::Negative,
                graph: negative_path(),
            },
        ],
        1,
        0,
    )
    .expect("fixture dataset is valid")
}
