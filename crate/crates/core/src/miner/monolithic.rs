//! Coverage as one combined search over the tagged union of all examples.
//!
//! Every example graph lives in a single relation keyed by graph id, and the
//! pattern's images live in one global map `f(g, x)` whose per-graph part is
//! only defined when the flag `homowith(g)` is set. The search assigns, in
//! graph-id order, `homowith(g)` (true first) followed by `f(g, x)` for each
//! pattern vertex over the whole shared vertex universe. Backtracking is
//! chronological; the only global constraint is the coverage count.
//!
//! An exhausted `f(g, _)` subtree that never completed a mapping proves that
//! `g` admits no homomorphism; that fact is learned as `homowith(g) = false`
//! and feeds the count bound.
//!
//! Rejection of negatives runs the same search a second time with the dual
//! goal: exhibit more than `N-` covered negatives. Success there rejects.

use std::collections::{HashMap, HashSet};

use crate::dataset::{Dataset, ExampleClass};
use crate::graph::{Label, LabeledGraph, VertexId};
use crate::miner::Verdict;
use crate::morphism::search_order;

/// The examples flattened into graph-id-tagged relations.
#[derive(Debug, Clone)]
pub struct DisjointUnion {
    universe: u32,
    edges: HashSet<(u32, u32, u32)>,
    labels: HashMap<(u32, u32), Label>,
    positives: Vec<u32>,
    negatives: Vec<u32>,
}

impl DisjointUnion {
    pub fn new(dataset: &Dataset) -> Self {
        let mut edges = HashSet::new();
        let mut labels = HashMap::new();
        let mut universe = 0;
        for ex in dataset.examples() {
            let gid = ex.id as u32;
            universe = universe.max(ex.graph.vertex_count() as u32);
            for v in ex.graph.vertices() {
                labels.insert((gid, v.0), ex.graph.label(v).clone());
            }
            for (u, v) in ex.graph.edges() {
                edges.insert((gid, u.0, v.0));
            }
        }
        let ids = |class| {
            dataset
                .of_class(class)
                .map(|e| e.id as u32)
                .collect::<Vec<_>>()
        };
        DisjointUnion {
            universe,
            edges,
            labels,
            positives: ids(ExampleClass::Positive),
            negatives: ids(ExampleClass::Negative),
        }
    }

    pub fn evaluate(&self, pattern: &LabeledGraph, n_pos: usize, n_neg: usize) -> Verdict {
        let (accepted, positive_covered) = self.search(pattern, &self.positives, n_pos);
        if !accepted {
            return Verdict {
                valid: false,
                positive_covered,
                negative_covered: 0,
            };
        }
        let (too_many, negative_covered) =
            self.search(pattern, &self.negatives, n_neg.saturating_add(1));
        Verdict {
            valid: !too_many,
            positive_covered,
            negative_covered,
        }
    }

    /// Whether some assignment covers at least `need` of `graphs`, and the
    /// number of graphs for which a mapping was exhibited along the way.
    fn search(&self, pattern: &LabeledGraph, graphs: &[u32], need: usize) -> (bool, usize) {
        let mut s = PhaseSearch::new(self, pattern, graphs, need);
        let sat = s.solve(0);
        (sat, s.found.iter().filter(|&&f| f).count())
    }
}

struct Link {
    earlier: usize,
    forward: bool,
    backward: bool,
}

struct PhaseSearch<'a> {
    union: &'a DisjointUnion,
    graphs: &'a [u32],
    need: usize,
    labels: Vec<Label>,
    self_loop: Vec<bool>,
    links: Vec<Vec<Link>>,
    placed: Vec<u32>,
    covered: usize,
    learned_false: Vec<bool>,
    found: Vec<bool>,
    cuts: usize,
}

impl<'a> PhaseSearch<'a> {
    fn new(union: &'a DisjointUnion, pattern: &LabeledGraph, graphs: &'a [u32], need: usize) -> Self {
        let order = search_order(pattern);
        let mut links = Vec::with_capacity(order.len());
        for (k, &p) in order.iter().enumerate() {
            links.push(
                order[..k]
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &q)| {
                        let forward = pattern.has_edge_idx(p, q);
                        let backward = pattern.has_edge_idx(q, p);
                        (forward || backward).then_some(Link {
                            earlier: j,
                            forward,
                            backward,
                        })
                    })
                    .collect(),
            );
        }
        PhaseSearch {
            union,
            graphs,
            need,
            labels: order
                .iter()
                .map(|&p| pattern.label(VertexId::from(p)).clone())
                .collect(),
            self_loop: order.iter().map(|&p| pattern.has_edge_idx(p, p)).collect(),
            links,
            placed: vec![0; order.len()],
            covered: 0,
            learned_false: vec![false; graphs.len()],
            found: vec![false; graphs.len()],
            cuts: 0,
        }
    }

    /// Upper bound on the final count, given decisions up to `decided`.
    fn potential(&self, decided: usize) -> usize {
        self.covered
            + self.learned_false[decided..]
                .iter()
                .filter(|&&f| !f)
                .count()
    }

    fn solve(&mut self, gi: usize) -> bool {
        if self.potential(gi) < self.need {
            self.cuts += 1;
            return false;
        }
        if gi == self.graphs.len() {
            return true;
        }
        if !self.learned_false[gi] {
            // homowith(g) = true
            self.covered += 1;
            let cuts_before = self.cuts;
            let found_before = self.found[gi];
            if self.assign(gi, 0) {
                return true;
            }
            self.covered -= 1;
            if !found_before && !self.found[gi] && self.cuts == cuts_before {
                self.learned_false[gi] = true;
            }
        }
        // homowith(g) = false
        self.solve(gi + 1)
    }

    fn assign(&mut self, gi: usize, k: usize) -> bool {
        if k == self.placed.len() {
            self.found[gi] = true;
            return self.solve(gi + 1);
        }
        let g = self.graphs[gi];
        for v in 0..self.union.universe {
            if self.potential(gi + 1) < self.need {
                self.cuts += 1;
                return false;
            }
            if !self.consistent(g, k, v) {
                continue;
            }
            self.placed[k] = v;
            if self.assign(gi, k + 1) {
                return true;
            }
        }
        false
    }

    fn consistent(&self, g: u32, k: usize, v: u32) -> bool {
        if self.union.labels.get(&(g, v)) != Some(&self.labels[k]) {
            return false;
        }
        if self.placed[..k].contains(&v) {
            return false;
        }
        if self.self_loop[k] && !self.union.edges.contains(&(g, v, v)) {
            return false;
        }
        self.links[k].iter().all(|link| {
            let s = self.placed[link.earlier];
            (!link.forward || self.union.edges.contains(&(g, v, s)))
                && (!link.backward || self.union.edges.contains(&(g, s, v)))
        })
    }
}
