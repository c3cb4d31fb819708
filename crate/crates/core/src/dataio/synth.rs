use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::dataset::{Dataset, Example, ExampleClass};
use crate::graph::{Label, LabeledGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    pub n_graphs: usize,
    /// Inclusive bounds on vertices per graph.
    pub vertex_range: (usize, usize),
    pub target_avg_edges: usize,
    pub n_labels: usize,
    pub positive_fraction: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("vertex range [{0}, {1}] must satisfy 2 <= lo <= hi")]
    BadVertexRange(usize, usize),
    #[error("at least one label is required")]
    NoLabels,
    #[error("positive fraction {0} is outside [0, 1]")]
    BadFraction(f64),
    #[error("{target} edges cannot connect {lo} vertices")]
    InfeasibleEdgeTarget { target: usize, lo: usize },
}

/// `ceil(5%)` of the positive count.
pub fn default_pos_threshold(positives: usize) -> usize {
    (positives * 5).div_ceil(100)
}

/// Named parameter sets. `yoshida` has 265 graphs of 15 to 25 vertices,
/// about 23 edges and 9 labels; `yoshida-small` is the same shape with 30
/// graphs.
pub fn preset(name: &str) -> Option<SynthParams> {
    let yoshida = SynthParams {
        n_graphs: 265,
        vertex_range: (15, 25),
        target_avg_edges: 23,
        n_labels: 9,
        positive_fraction: 1.0,
        seed: 1,
    };
    match name {
        "yoshida" => Some(yoshida),
        "yoshida-small" => Some(SynthParams {
            n_graphs: 30,
            seed: 7,
            ..yoshida
        }),
        _ => None,
    }
}

impl SynthParams {
    pub fn validate(&self) -> Result<(), SynthError> {
        let (lo, hi) = self.vertex_range;
        if lo < 2 || lo > hi {
            return Err(SynthError::BadVertexRange(lo, hi));
        }
        if self.n_labels == 0 {
            return Err(SynthError::NoLabels);
        }
        if !(0.0..=1.0).contains(&self.positive_fraction) {
            return Err(SynthError::BadFraction(self.positive_fraction));
        }
        if self.target_avg_edges + 1 < lo {
            return Err(SynthError::InfeasibleEdgeTarget {
                target: self.target_avg_edges,
                lo,
            });
        }
        Ok(())
    }
}

/// Seed-deterministic undirected dataset of connected graphs.
///
/// Draw order: every example graph in id order, then the class shuffle,
/// then the template (with the top vertex count of the range).
pub fn gen_synthetic(params: &SynthParams) -> Result<Dataset, SynthError> {
    params.validate()?;
    let mut rng = SplitMix64::seed_from_u64(params.seed);
    let labels: Vec<Label> = (0..params.n_labels)
        .map(|i| Label::new(&format!("l{i}")).expect("non-empty"))
        .collect();
    let (lo, hi) = params.vertex_range;

    let graphs: Vec<LabeledGraph> = (0..params.n_graphs)
        .map(|_| {
            let n = rng.random_range(lo as u32..=hi as u32) as usize;
            random_graph(&mut rng, n, params.target_avg_edges, &labels)
        })
        .collect();

    let positives = (params.positive_fraction * params.n_graphs as f64).round() as usize;
    let mut classes: Vec<ExampleClass> = (0..params.n_graphs)
        .map(|i| {
            if i < positives {
                ExampleClass::Positive
            } else {
                ExampleClass::Negative
            }
        })
        .collect();
    classes.shuffle(&mut rng);

    let template = random_graph(&mut rng, hi, params.target_avg_edges, &labels);
    let examples = graphs
        .into_iter()
        .zip(classes)
        .enumerate()
        .map(|(id, (graph, class))| Example { id, class, graph })
        .collect();
    Ok(Dataset::new(template, examples, default_pos_threshold(positives), 0)
        .expect("threshold within the positive count"))
}

fn random_graph(rng: &mut SplitMix64, n: usize, target: usize, labels: &[Label]) -> LabeledGraph {
    let spread = target / 10;
    let drawn = rng.random_range((target - spread) as u32..=(target + spread) as u32) as usize;
    let m = drawn.clamp(n - 1, n * (n - 1) / 2);

    let mut edges = random_tree(rng, n);
    let mut present = vec![false; n * n];
    for &(u, v) in &edges {
        present[u as usize * n + v as usize] = true;
    }
    let mut rest: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u as usize * n + v as usize])
        .collect();
    let extra = m - edges.len();
    let (chosen, _) = rest.partial_shuffle(rng, extra);
    edges.extend_from_slice(chosen);

    let vlabels = (0..n)
        .map(|_| labels[rng.random_range(0..labels.len() as u32) as usize].clone())
        .collect();
    LabeledGraph::build(n, &edges, vlabels, true).expect("edges within 0..n")
}

/// Uniform labeled spanning tree via a random Prüfer sequence; pairs are
/// returned with the smaller endpoint first.
fn random_tree(rng: &mut SplitMix64, n: usize) -> Vec<(u32, u32)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2)
        .map(|_| rng.random_range(0..n as u32) as usize)
        .collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(s) as u32, leaf.max(s) as u32));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0] as u32, last[1] as u32));
    edges
}
