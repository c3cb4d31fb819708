//! Slow, obviously-correct reference implementations shared by the
//! integration tests, plus seeded instance generators.

#![allow(dead_code)]

use patmine::dataset::{Dataset, Example, ExampleClass};
use patmine::graph::{Label, LabeledGraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

pub fn label(s: &str) -> Label {
    Label::new(s).unwrap()
}

pub fn edge(g: &LabeledGraph, u: usize, v: usize) -> bool {
    g.has_edge(VertexId::from(u), VertexId::from(v))
}

/// Union-find over the symmetric closure of the edges of `vertices`.
pub fn connected_uf(g: &LabeledGraph, vertices: &[usize]) -> bool {
    if vertices.len() <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..vertices.len() {
        for j in 0..vertices.len() {
            if i != j && edge(g, vertices[i], vertices[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..vertices.len()).all(|i| find(&mut parent, i) == root)
}

/// Subgraph induced by `vertices` (in the given order), built edge by edge.
pub fn induced(g: &LabeledGraph, vertices: &[usize]) -> LabeledGraph {
    let mut edges = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate() {
            if edge(g, u, v) {
                edges.push((i as u32, j as u32));
            }
        }
    }
    let labels = vertices
        .iter()
        .map(|&v| g.label(VertexId::from(v)).clone())
        .collect();
    LabeledGraph::build(vertices.len(), &edges, labels, false).unwrap()
}

/// Calls `visit` with every injective sequence of `k` values from `0..n`.
pub fn injective_tuples(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                let stop = rec(n, k, cur, used, visit);
                cur.pop();
                used[v] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
    if k > n {
        return false;
    }
    rec(n, k, &mut Vec::new(), &mut vec![false; n], visit)
}

/// Whether an injective, label- and edge-preserving map exists.
pub fn brute_hom_exists(p: &LabeledGraph, t: &LabeledGraph) -> bool {
    let k = p.vertex_count();
    injective_tuples(t.vertex_count(), k, &mut |f| {
        (0..k).all(|x| p.label(VertexId::from(x)) == t.label(VertexId::from(f[x])))
            && (0..k).all(|x| (0..k).all(|y| !edge(p, x, y) || edge(t, f[x], f[y])))
    })
}

/// Bijection search: labels preserved, edges preserved both ways.
pub fn brute_iso(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    injective_tuples(n, n, &mut |f| {
        (0..n).all(|x| a.label(VertexId::from(x)) == b.label(VertexId::from(f[x])))
            && (0..n).all(|x| (0..n).all(|y| edge(a, x, y) == edge(b, f[x], f[y])))
    })
}

pub fn brute_coverage(p: &LabeledGraph, ds: &Dataset, class: ExampleClass) -> usize {
    ds.of_class(class)
        .filter(|e| brute_hom_exists(p, &e.graph))
        .count()
}

/// Valid patterns per size, one representative per isomorphism class, from
/// every vertex subset of the template.
pub fn exhaustive_classes(ds: &Dataset, min: usize, max: usize) -> Vec<Vec<LabeledGraph>> {
    let t = ds.template();
    let n = t.vertex_count();
    let mut levels = Vec::new();
    for size in min..=max.min(n) {
        let mut classes: Vec<LabeledGraph> = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if !connected_uf(t, &vs) {
                continue;
            }
            let p = induced(t, &vs);
            if brute_coverage(&p, ds, ExampleClass::Positive) < ds.n_pos_threshold()
                || brute_coverage(&p, ds, ExampleClass::Negative) > ds.n_neg_threshold()
            {
                continue;
            }
            if !classes.iter().any(|c| brute_iso(c, &p)) {
                classes.push(p);
            }
        }
        levels.push(classes);
    }
    levels
}

/// Whether `found` holds exactly one member of each class in `expected`
/// (graphs compared by brute-force isomorphism) and nothing else.
pub fn matches_classes(found: &[LabeledGraph], expected: &[LabeledGraph]) -> bool {
    found.len() == expected.len()
        && expected
            .iter()
            .all(|c| found.iter().filter(|p| brute_iso(p, c)).count() == 1)
}

pub fn random_graph(rng: &mut SplitMix64, n: usize, density: f64, labels: &[&str], undirected: bool) -> LabeledGraph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u == v || (undirected && v < u) {
                continue;
            }
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let ls = (0..n)
        .map(|_| label(labels[rng.random_range(0..labels.len())]))
        .collect();
    LabeledGraph::build(n, &edges, ls, undirected).unwrap()
}

/// Small mining instance: template of 4 to 8 vertices, 1 to `max_examples`
/// examples with at least one positive, thresholds drawn within range.
pub fn random_instance(seed: u64, max_examples: usize) -> Dataset {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let undirected = !seed.is_multiple_of(3);
    let labels: &[&str] = if seed.is_multiple_of(2) { &["a", "b"] } else { &["a"] };
    let tn = rng.random_range(4..=8);
    let template = random_graph(&mut rng, tn, 0.45, labels, undirected);
    let count = rng.random_range(1..=max_examples);
    let mut examples = Vec::new();
    let mut positives = 0;
    for id in 0..count {
        let n = rng.random_range(3..=7);
        let graph = random_graph(&mut rng, n, 0.5, labels, undirected);
        let class = if id == 0 || rng.random_bool(0.6) {
            positives += 1;
            ExampleClass::Positive
        } else {
            ExampleClass::Negative
        };
        examples.push(Example { id, class, graph });
    }
    let npos = rng.random_range(1..=positives);
    let nneg = rng.random_range(0..=1);
    Dataset::new(template, examples, npos, nneg).unwrap()
}
