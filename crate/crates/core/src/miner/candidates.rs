use std::collections::{BTreeSet, HashMap, HashSet};

use crate::graph::{LabeledGraph, VertexId};
use crate::morphism::for_each_induced_embedding;

/// Template-vertex subsets blocked because they induce a copy of an
/// already accepted pattern. Keyed by subset size.
#[derive(Debug, Default, Clone)]
pub struct NoGoodStore {
    blocked: HashMap<usize, HashSet<Vec<VertexId>>>,
}

impl NoGoodStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn block(&mut self, subset: &[VertexId]) {
        let mut key = subset.to_vec();
        key.sort_unstable();
        self.blocked.entry(key.len()).or_default().insert(key);
    }

    /// `subset` must be sorted ascending.
    pub fn is_blocked(&self, subset: &[VertexId]) -> bool {
        self.blocked
            .get(&subset.len())
            .is_some_and(|set| set.contains(subset))
    }

    pub fn len(&self) -> usize {
        self.blocked.values().map(HashSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&mut self) {
        self.blocked.clear();
    }
}

/// All `size`-subsets of `g`'s vertices that induce a connected subgraph,
/// each sorted, in lexicographic order.
///
/// Enumeration follows the ESU scheme: every connected set is grown from its
/// smallest vertex through exclusive neighborhoods, so it is produced once.
pub fn connected_subsets(g: &LabeledGraph, size: usize) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    if size == 0 || size > n {
        return Vec::new();
    }
    let neigh: Vec<Vec<u32>> = g.vertices().map(|v| g.neighbors(v)).collect();
    let mut in_sub = vec![false; n];
    let mut sub = Vec::with_capacity(size);
    let mut out = Vec::new();

    for root in 0..n {
        let ext: Vec<usize> = neigh[root]
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| w > root)
            .collect();
        in_sub[root] = true;
        sub.push(root);
        grow(&neigh, root, size, ext, &mut sub, &mut in_sub, &mut out);
        sub.pop();
        in_sub[root] = false;
    }
    out.sort_unstable();
    out
}

fn grow(
    neigh: &[Vec<u32>],
    root: usize,
    size: usize,
    mut ext: Vec<usize>,
    sub: &mut Vec<usize>,
    in_sub: &mut [bool],
    out: &mut Vec<Vec<VertexId>>,
) {
    if sub.len() == size {
        let mut s: Vec<VertexId> = sub.iter().map(|&v| VertexId::from(v)).collect();
        s.sort_unstable();
        out.push(s);
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in &neigh[w] {
            let u = u as usize;
            // exclusive neighbor: outside the current set and its neighborhood
            if u > root && !in_sub[u] && !neigh[u].iter().any(|&x| in_sub[x as usize]) {
                next.push(u);
            }
        }
        in_sub[w] = true;
        sub.push(w);
        grow(neigh, root, size, next, sub, in_sub, out);
        sub.pop();
        in_sub[w] = false;
    }
}

/// Connected `size`-subsets of the template not blocked by `nogoods`, in
/// lexicographic order.
pub fn candidate_subsets<'a>(
    template: &LabeledGraph,
    size: usize,
    nogoods: &'a NoGoodStore,
) -> impl Iterator<Item = Vec<VertexId>> + 'a {
    connected_subsets(template, size)
        .into_iter()
        .filter(move |s| !nogoods.is_blocked(s))
}

/// Every template-vertex subset whose induced subgraph is isomorphic to
/// `pattern`, sorted.
pub fn template_occurrences(pattern: &LabeledGraph, template: &LabeledGraph) -> Vec<Vec<VertexId>> {
    let mut found = BTreeSet::new();
    for_each_induced_embedding(pattern, template, |img| {
        let mut s: Vec<VertexId> = img.iter().map(|&v| VertexId(v)).collect();
        s.sort_unstable();
        found.insert(s);
    });
    found.into_iter().collect()
}
