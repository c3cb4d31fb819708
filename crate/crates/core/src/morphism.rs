//! Injective homomorphism search, isomorphism tests and example coverage.
//!
//! "Homomorphism" here is always injective, label preserving and edge
//! preserving, i.e. a subgraph monomorphism. The search is a plain
//! backtracking matcher: pattern vertices are visited in a connectivity-first
//! order (highest degree first, then breadth-first), target vertices are
//! tried in ascending id, and candidates are pre-filtered by label and
//! in/out-degree. The first match found is therefore deterministic.

use std::ops::ControlFlow;

use rayon::prelude::*;
use thiserror::Error;

use crate::dataset::{Dataset, ExampleClass};
use crate::graph::{LabeledGraph, VertexId};

/// Largest pattern accepted by [`brute_force_homomorphisms`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("pattern has {0} vertices; brute force is limited to {BRUTE_FORCE_LIMIT}")]
    PatternTooLarge(usize),
}

/// Partial injective map from pattern vertices to target vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mapping {
    assignment: Vec<Option<VertexId>>,
}

impl Mapping {
    pub fn empty(pattern_size: usize) -> Self {
        Mapping {
            assignment: vec![None; pattern_size],
        }
    }

    /// A total mapping from `image[i]` for pattern vertex `i`.
    pub fn from_images(image: &[u32]) -> Self {
        Mapping {
            assignment: image.iter().map(|&v| Some(VertexId(v))).collect(),
        }
    }

    pub fn get(&self, p: VertexId) -> Option<VertexId> {
        self.assignment.get(p.index()).copied().flatten()
    }

    pub fn set(&mut self, p: VertexId, t: Option<VertexId>) {
        self.assignment[p.index()] = t;
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<VertexId> = self.assignment.iter().flatten().copied().collect();
        let before = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == before
    }

    /// Images in pattern-vertex order; `None` if the mapping is partial.
    pub fn images(&self) -> Option<Vec<VertexId>> {
        self.assignment.iter().copied().collect()
    }

    /// Re-checks totality, injectivity, label and edge preservation.
    pub fn is_homomorphism(&self, pattern: &LabeledGraph, target: &LabeledGraph) -> bool {
        if self.len() != pattern.vertex_count() || !self.is_injective() {
            return false;
        }
        let Some(img) = self.images() else {
            return false;
        };
        if img.iter().any(|t| t.index() >= target.vertex_count()) {
            return false;
        }
        pattern
            .vertices()
            .all(|p| pattern.label(p) == target.label(img[p.index()]))
            && pattern
                .edges()
                .all(|(u, v)| target.has_edge(img[u.index()], img[v.index()]))
    }
}

/// Connectivity-first visiting order for the pattern's vertices.
///
/// Starts at the vertex with the most neighbors (lowest id on ties) and
/// continues breadth-first with neighbors in ascending id. A disconnected
/// pattern restarts from the best unvisited vertex.
pub(crate) fn search_order(pattern: &LabeledGraph) -> Vec<usize> {
    let n = pattern.vertex_count();
    let neigh: Vec<Vec<u32>> = pattern.vertices().map(|v| pattern.neighbors(v)).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| neigh[a].len().cmp(&neigh[b].len()).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &neigh[u] {
                let w = w as usize;
                if !visited[w] {
                    visited[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatchKind {
    /// Pattern edges must map onto target edges.
    Mono,
    /// Additionally, non-edges must map onto non-edges.
    Induced,
}

/// Per-position constraint against an earlier position.
struct BackLink {
    earlier: usize,
    forward: bool,
    backward: bool,
}

struct Matcher<'a> {
    target: &'a LabeledGraph,
    kind: MatchKind,
    order: Vec<usize>,
    links: Vec<Vec<BackLink>>,
    candidates: Vec<Vec<u32>>,
    /// Target vertex chosen at each search position.
    placed: Vec<u32>,
    /// The same assignment indexed by pattern vertex.
    image: Vec<u32>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    /// `None` when some pattern vertex has no candidate at all.
    fn new(
        pattern: &LabeledGraph,
        target: &'a LabeledGraph,
        kind: MatchKind,
        exact_degrees: bool,
    ) -> Option<Self> {
        let order = search_order(pattern);
        let mut links = Vec::with_capacity(order.len());
        let mut candidates = Vec::with_capacity(order.len());
        for (k, &p) in order.iter().enumerate() {
            let mut row = Vec::new();
            for (j, &q) in order[..k].iter().enumerate() {
                let forward = pattern.has_edge_idx(p, q);
                let backward = pattern.has_edge_idx(q, p);
                if kind == MatchKind::Induced || forward || backward {
                    row.push(BackLink {
                        earlier: j,
                        forward,
                        backward,
                    });
                }
            }
            links.push(row);
            let looped = pattern.has_edge_idx(p, p);

            let pv = VertexId::from(p);
            let (pout, pin) = (pattern.out_degree(pv), pattern.in_degree(pv));
            let label = pattern.label(pv);
            let cands: Vec<u32> = target
                .vertices()
                .filter(|&t| target.label(t) == label)
                .filter(|&t| {
                    let (tout, tin) = (target.out_degree(t), target.in_degree(t));
                    if exact_degrees {
                        tout == pout && tin == pin
                    } else {
                        tout >= pout && tin >= pin
                    }
                })
                .filter(|&t| match kind {
                    MatchKind::Mono => !looped || target.has_edge(t, t),
                    MatchKind::Induced => looped == target.has_edge(t, t),
                })
                .map(|t| t.0)
                .collect();
            if cands.is_empty() {
                return None;
            }
            candidates.push(cands);
        }
        Some(Matcher {
            target,
            kind,
            placed: vec![0; order.len()],
            image: vec![0; order.len()],
            used: vec![false; target.vertex_count()],
            order,
            links,
            candidates,
        })
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        self.extend(0, visit)
    }

    fn consistent(&self, k: usize, t: usize) -> bool {
        self.links[k].iter().all(|link| {
            let s = self.placed[link.earlier] as usize;
            let f = self.target.has_edge_idx(t, s);
            let b = self.target.has_edge_idx(s, t);
            match self.kind {
                MatchKind::Mono => (!link.forward || f) && (!link.backward || b),
                MatchKind::Induced => link.forward == f && link.backward == b,
            }
        })
    }

    fn extend<F>(&mut self, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if k == self.order.len() {
            return visit(&self.image);
        }
        for ci in 0..self.candidates[k].len() {
            let t = self.candidates[k][ci] as usize;
            if self.used[t] || !self.consistent(k, t) {
                continue;
            }
            self.used[t] = true;
            self.placed[k] = t as u32;
            self.image[self.order[k]] = t as u32;
            let flow = self.extend(k + 1, visit);
            self.used[t] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn first_match(
    pattern: &LabeledGraph,
    target: &LabeledGraph,
    kind: MatchKind,
    exact_degrees: bool,
) -> Option<Vec<u32>> {
    if pattern.vertex_count() > target.vertex_count() {
        return None;
    }
    let mut matcher = Matcher::new(pattern, target, kind, exact_degrees)?;
    let mut found = None;
    let _ = matcher.run(&mut |img: &[u32]| {
        found = Some(img.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Finds an injective label- and edge-preserving map of `pattern` into
/// `target`, or proves that none exists.
pub fn find_homomorphism(pattern: &LabeledGraph, target: &LabeledGraph) -> Option<Mapping> {
    first_match(pattern, target, MatchKind::Mono, false).map(|img| Mapping::from_images(&img))
}

/// Calls `visit` for every homomorphism in search order until it breaks.
pub fn for_each_homomorphism<F>(pattern: &LabeledGraph, target: &LabeledGraph, mut visit: F)
where
    F: FnMut(&Mapping) -> ControlFlow<()>,
{
    if pattern.vertex_count() > target.vertex_count() {
        return;
    }
    if let Some(mut m) = Matcher::new(pattern, target, MatchKind::Mono, false) {
        let _ = m.run(&mut |img: &[u32]| visit(&Mapping::from_images(img)));
    }
}

pub fn count_homomorphisms(pattern: &LabeledGraph, target: &LabeledGraph) -> usize {
    let mut count = 0;
    for_each_homomorphism(pattern, target, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Images of every induced embedding of `pattern` into `target`.
pub(crate) fn for_each_induced_embedding<F>(pattern: &LabeledGraph, target: &LabeledGraph, mut visit: F)
where
    F: FnMut(&[u32]),
{
    if pattern.vertex_count() > target.vertex_count() {
        return;
    }
    if let Some(mut m) = Matcher::new(pattern, target, MatchKind::Induced, false) {
        let _ = m.run(&mut |img: &[u32]| {
            visit(img);
            ControlFlow::Continue(())
        });
    }
}

/// Exhaustive reference enumeration of all homomorphisms, lexicographic in
/// the image tuple. Shares no code with the backtracking matcher.
pub fn brute_force_homomorphisms(
    pattern: &LabeledGraph,
    target: &LabeledGraph,
) -> Result<Vec<Mapping>, MorphismError> {
    let k = pattern.vertex_count();
    if k > BRUTE_FORCE_LIMIT {
        return Err(MorphismError::PatternTooLarge(k));
    }
    let n = target.vertex_count() as u32;
    let mut out = Vec::new();
    let mut tuple: Vec<u32> = Vec::with_capacity(k);

    fn rec(
        k: usize,
        n: u32,
        tuple: &mut Vec<u32>,
        pattern: &LabeledGraph,
        target: &LabeledGraph,
        out: &mut Vec<Mapping>,
    ) {
        if tuple.len() == k {
            let m = Mapping::from_images(tuple);
            if m.is_homomorphism(pattern, target) {
                out.push(m);
            }
            return;
        }
        for t in 0..n {
            if !tuple.contains(&t) {
                tuple.push(t);
                rec(k, n, tuple, pattern, target, out);
                tuple.pop();
            }
        }
    }

    rec(k, n, &mut tuple, pattern, target, &mut out);
    Ok(out)
}

/// Whether a label-preserving bijection exists under which the edge sets
/// correspond exactly.
pub fn is_isomorphic(g1: &LabeledGraph, g2: &LabeledGraph) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut l1 = g1.labels().to_vec();
    let mut l2 = g2.labels().to_vec();
    l1.sort_unstable();
    l2.sort_unstable();
    if l1 != l2 || g1.sorted_degree_profile() != g2.sorted_degree_profile() {
        return false;
    }
    first_match(g1, g2, MatchKind::Induced, true).is_some()
}

/// Coverage evaluation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageMode {
    /// Test every example of the class.
    Full,
    /// Stop once this many examples are covered.
    EarlyStopAt(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleVerdict {
    Covered,
    NotCovered,
    /// Not tested because the early-stop count was already reached.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub positive_covered: usize,
    pub negative_covered: usize,
    /// `(graph_id, verdict)` for each example of the evaluated class.
    pub per_example: Vec<(usize, ExampleVerdict)>,
}

impl CoverageReport {
    pub fn covered(&self, class: ExampleClass) -> usize {
        match class {
            ExampleClass::Positive => self.positive_covered,
            ExampleClass::Negative => self.negative_covered,
        }
    }
}

/// Runs per-example checks either inline or on a private thread pool.
///
/// Parallel runs evaluate examples in batches and fold them in id order, so
/// counts and `Unknown` marks match the sequential result exactly.
#[derive(Debug, Default)]
pub struct Executor {
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    pub fn sequential() -> Self {
        Executor { pool: None }
    }

    pub fn with_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            return Self::sequential();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .ok();
        Executor { pool }
    }

    pub fn jobs(&self) -> usize {
        self.pool.as_ref().map_or(1, |p| p.current_num_threads())
    }
}

pub fn coverage(
    pattern: &LabeledGraph,
    dataset: &Dataset,
    class: ExampleClass,
    mode: CoverageMode,
) -> CoverageReport {
    coverage_with(pattern, dataset, class, mode, &Executor::sequential())
}

pub fn coverage_with(
    pattern: &LabeledGraph,
    dataset: &Dataset,
    class: ExampleClass,
    mode: CoverageMode,
    exec: &Executor,
) -> CoverageReport {
    let examples: Vec<_> = dataset.of_class(class).collect();
    let stop_at = match mode {
        CoverageMode::Full => usize::MAX,
        CoverageMode::EarlyStopAt(k) => k,
    };
    let mut covered = 0;
    let mut per_example = Vec::with_capacity(examples.len());
    let mut record = |id: usize, hit: Option<bool>, covered: &mut usize| {
        let verdict = match hit {
            _ if *covered >= stop_at => ExampleVerdict::Unknown,
            Some(true) => {
                *covered += 1;
                ExampleVerdict::Covered
            }
            Some(false) => ExampleVerdict::NotCovered,
            None => ExampleVerdict::Unknown,
        };
        per_example.push((id, verdict));
    };

    match &exec.pool {
        None => {
            for ex in &examples {
                let hit = (covered < stop_at)
                    .then(|| find_homomorphism(pattern, &ex.graph).is_some());
                record(ex.id, hit, &mut covered);
            }
        }
        Some(pool) => {
            let batch = pool.current_num_threads().max(1);
            for chunk in examples.chunks(batch) {
                if covered >= stop_at {
                    for ex in chunk {
                        record(ex.id, None, &mut covered);
                    }
                    continue;
                }
                let hits: Vec<bool> = pool.install(|| {
                    chunk
                        .par_iter()
                        .map(|ex| find_homomorphism(pattern, &ex.graph).is_some())
                        .collect()
                });
                for (ex, hit) in chunk.iter().zip(hits) {
                    record(ex.id, Some(hit), &mut covered);
                }
            }
        }
    }

    let (positive_covered, negative_covered) = match class {
        ExampleClass::Positive => (covered, 0),
        ExampleClass::Negative => (0, covered),
    };
    CoverageReport {
        positive_covered,
        negative_covered,
        per_example,
    }
}
