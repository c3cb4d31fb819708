//! Labeled directed graphs, reachability and induced subgraphs.
//!
//! Graphs are stored directed. Inputs declared undirected are closed under
//! pair reversal at construction time and remember that they were, so that
//! serializers can write each undirected edge once.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Dense vertex index, `0..n` within its owning graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vertex label. Cloning shares the underlying string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(symbol: &str) -> Result<Self, GraphError> {
        if symbol.is_empty() {
            return Err(GraphError::EmptyLabel);
        }
        Ok(Label(Arc::from(symbol)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({src}, {dst}) has an endpoint outside 0..{n}")]
    EdgeOutOfRange { src: u32, dst: u32, n: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelArityMismatch { expected: usize, got: usize },
    #[error("vertex {0} is not in the graph")]
    VertexNotInGraph(u32),
    #[error("labels must be non-empty")]
    EmptyLabel,
}

/// A finite directed graph with a total vertex labeling.
#[derive(Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    labels: Vec<Label>,
    edge_count: usize,
    undirected_input: bool,
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("n", &self.vertex_count())
            .field("labels", &self.labels)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("undirected_input", &self.undirected_input)
            .finish()
    }
}

impl LabeledGraph {
    /// Builds a graph from a pair list. With `undirected`, every pair is
    /// stored in both directions. Duplicate pairs collapse.
    pub fn build(
        n: usize,
        edges: &[(u32, u32)],
        labels: Vec<Label>,
        undirected: bool,
    ) -> Result<Self, GraphError> {
        if labels.len() != n {
            return Err(GraphError::LabelArityMismatch {
                expected: n,
                got: labels.len(),
            });
        }
        let mut out_adj = vec![Vec::new(); n];
        for &(src, dst) in edges {
            if src as usize >= n || dst as usize >= n {
                return Err(GraphError::EdgeOutOfRange { src, dst, n });
            }
            out_adj[src as usize].push(dst);
            if undirected {
                out_adj[dst as usize].push(src);
            }
        }
        Ok(Self::from_out_adj(out_adj, labels, undirected))
    }

    fn from_out_adj(mut out_adj: Vec<Vec<u32>>, labels: Vec<Label>, undirected: bool) -> Self {
        let n = out_adj.len();
        let mut in_adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, succ) in out_adj.iter_mut().enumerate() {
            succ.sort_unstable();
            succ.dedup();
            edge_count += succ.len();
            for &v in succ.iter() {
                in_adj[v as usize].push(u as u32);
            }
        }
        // in_adj is filled in ascending source order, so it is already sorted.
        LabeledGraph {
            out_adj,
            in_adj,
            labels,
            edge_count,
            undirected_input: undirected,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of stored directed edges.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_undirected_input(&self) -> bool {
        self.undirected_input
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId::from)
    }

    #[inline]
    pub fn label(&self, v: VertexId) -> &Label {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out_adj[u.index()].binary_search(&v.0).is_ok()
    }

    #[inline]
    pub(crate) fn has_edge_idx(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Stored directed edges in ascending `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, succ)| succ.iter().map(move |&v| (VertexId::from(u), VertexId(v))))
    }

    pub fn successors(&self, v: VertexId) -> &[u32] {
        &self.out_adj[v.index()]
    }

    pub fn predecessors(&self, v: VertexId) -> &[u32] {
        &self.in_adj[v.index()]
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v.index()].len()
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v.index()].len()
    }

    /// Neighbors in the symmetric closure, ascending, without `v` itself.
    pub fn neighbors(&self, v: VertexId) -> Vec<u32> {
        let mut out: Vec<u32> = self.out_adj[v.index()]
            .iter()
            .chain(self.in_adj[v.index()].iter())
            .copied()
            .filter(|&w| w != v.0)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether `y` can be reached from `x` by a nonempty path over the
    /// symmetric closure of the edge relation.
    ///
    /// For `x == y` this holds exactly when `x` has an incident edge.
    pub fn reachable(&self, x: VertexId, y: VertexId) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        // Seed with the one-step successors so that the path is nonempty.
        for w in self.undirected_step(x.index()) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            if u == y.index() {
                return true;
            }
            for w in self.undirected_step(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    fn undirected_step(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_adj[u]
            .iter()
            .chain(self.in_adj[u].iter())
            .map(|&w| w as usize)
    }

    /// Empty and single-vertex graphs are connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for w in self.undirected_step(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Subgraph induced by `subset`, densely re-indexed in ascending order of
    /// the original ids.
    pub fn induced_subgraph(&self, subset: &[VertexId]) -> Result<InducedSubgraph, GraphError> {
        let n = self.vertex_count();
        let mut original: Vec<VertexId> = subset.to_vec();
        if let Some(bad) = original.iter().find(|v| v.index() >= n) {
            return Err(GraphError::VertexNotInGraph(bad.0));
        }
        original.sort_unstable();
        original.dedup();

        let mut local = vec![u32::MAX; n];
        for (i, v) in original.iter().enumerate() {
            local[v.index()] = i as u32;
        }
        let mut out_adj = vec![Vec::new(); original.len()];
        for (i, v) in original.iter().enumerate() {
            for &w in &self.out_adj[v.index()] {
                let lw = local[w as usize];
                if lw != u32::MAX {
                    out_adj[i].push(lw);
                }
            }
        }
        let labels = original.iter().map(|&v| self.label(v).clone()).collect();
        Ok(InducedSubgraph {
            graph: Self::from_out_adj(out_adj, labels, self.undirected_input),
            original,
        })
    }

    /// Sorted `(out-degree, in-degree)` pairs.
    pub(crate) fn sorted_degree_profile(&self) -> Vec<(usize, usize)> {
        let mut degs: Vec<(usize, usize)> = self
            .vertices()
            .map(|v| (self.out_degree(v), self.in_degree(v)))
            .collect();
        degs.sort_unstable();
        degs
    }
}

/// An induced subgraph together with the original id of each new vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: LabeledGraph,
    /// `original[i]` is the id in the parent graph of local vertex `i`.
    pub original: Vec<VertexId>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn uniform(n: usize) -> Vec<Label> {
        vec![Label::new("a").unwrap(); n]
    }

    #[test]
    fn undirected_build_stores_both_directions() {
        let g = LabeledGraph::build(4, &[(0, 1), (1, 2), (2, 3)], uniform(4), true).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.has_edge(VertexId(3), VertexId(2)));
    }

    #[test]
    fn singleton_and_directed_inputs() {
        let g = LabeledGraph::build(1, &[], uniform(1), false).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);

        let labels = vec![Label::new("a").unwrap(), Label::new("b").unwrap()];
        let g = LabeledGraph::build(2, &[(0, 1), (1, 0)], labels, false).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            LabeledGraph::build(3, &[(0, 5)], uniform(3), false),
            Err(GraphError::EdgeOutOfRange { src: 0, dst: 5, n: 3 })
        );
        assert_eq!(
            LabeledGraph::build(3, &[], uniform(2), false),
            Err(GraphError::LabelArityMismatch { expected: 3, got: 2 })
        );
        assert_eq!(Label::new(""), Err(GraphError::EmptyLabel));
    }

    #[test]
    fn reachability() {
        let path = fixtures::negative_path();
        assert!(path.reachable(VertexId(0), VertexId(3)));

        let two = LabeledGraph::build(4, &[(0, 1), (2, 3)], uniform(4), true).unwrap();
        assert!(!two.reachable(VertexId(0), VertexId(2)));

        let t = fixtures::template();
        assert!(t.reachable(fixtures::H1, fixtures::T2));
    }

    #[test]
    fn reachable_uses_symmetric_closure_on_directed_graphs() {
        let g = LabeledGraph::build(3, &[(0, 1), (2, 1)], uniform(3), false).unwrap();
        assert!(g.reachable(VertexId(0), VertexId(2)));
        assert!(g.is_connected());
    }

    #[test]
    fn reflexive_reachability_needs_an_incident_edge() {
        let g = LabeledGraph::build(3, &[(0, 1)], uniform(3), true).unwrap();
        assert!(g.reachable(VertexId(0), VertexId(0)));
        assert!(!g.reachable(VertexId(2), VertexId(2)));
    }

    #[test]
    fn connectivity() {
        assert!(fixtures::positive_example().is_connected());
        assert!(LabeledGraph::build(0, &[], vec![], true).unwrap().is_connected());
        let g = LabeledGraph::build(3, &[(0, 1)], uniform(3), true).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn hexagon_block_of_template() {
        let t = fixtures::template();
        let sub = t.induced_subgraph(&fixtures::HEXAGON).unwrap();
        assert_eq!(sub.graph.vertex_count(), 6);
        // six ring edges plus the chord, both directions
        assert_eq!(sub.graph.edge_count(), 14);
        assert!(sub.graph.has_edge(VertexId(1), VertexId(4)));
        assert_eq!(sub.graph, fixtures::candidate_valid());
    }

    #[test]
    fn full_subset_is_identity() {
        let t = fixtures::template();
        let all: Vec<VertexId> = t.vertices().collect();
        let sub = t.induced_subgraph(&all).unwrap();
        assert_eq!(sub.graph, t);
        assert_eq!(sub.original, all);
    }

    #[test]
    fn tail_subset_is_three_path() {
        let t = fixtures::template();
        let sub = t
            .induced_subgraph(&[fixtures::T2, fixtures::H4, fixtures::T1])
            .unwrap();
        assert_eq!(sub.original, vec![fixtures::H4, fixtures::T1, fixtures::T2]);
        assert_eq!(sub.graph, fixtures::candidate_path());
        assert_eq!(
            t.induced_subgraph(&[VertexId(9)]),
            Err(GraphError::VertexNotInGraph(9))
        );
    }
}
