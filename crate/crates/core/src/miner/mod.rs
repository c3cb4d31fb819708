//! Level-wise mining of canonical patterns over the template.

mod candidates;
mod monolithic;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::dataset::{Dataset, ExampleClass};
use crate::graph::{LabeledGraph, VertexId};
use crate::morphism::{coverage_with, is_isomorphic, CoverageMode, Executor};

pub use candidates::{
    candidate_subsets, connected_subsets, template_occurrences, NoGoodStore,
};
pub use monolithic::DisjointUnion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// One independent, early-stopping homomorphism search per example.
    Decomposed,
    /// One combined search over the tagged union of all examples.
    Monolithic,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Decomposed => "decomposed",
            Strategy::Monolithic => "monolithic",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "decomposed" => Ok(Strategy::Decomposed),
            "monolithic" => Ok(Strategy::Monolithic),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("min_pattern_size must be at least 1")]
    ZeroMinSize,
    #[error("max_pattern_size {max} is below min_pattern_size {min}")]
    EmptySizeRange { min: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningConfig {
    pub n_pos_threshold: usize,
    pub n_neg_threshold: usize,
    pub min_pattern_size: usize,
    pub max_pattern_size: Option<usize>,
    pub max_patterns: Option<usize>,
    pub strategy: Strategy,
    /// Worker threads for per-example searches; 1 runs on the caller's thread.
    pub jobs: usize,
}

impl MiningConfig {
    /// Thresholds taken from the dataset, sizes from 2 upward, no limits.
    pub fn for_dataset(dataset: &Dataset) -> Self {
        MiningConfig {
            n_pos_threshold: dataset.n_pos_threshold(),
            n_neg_threshold: dataset.n_neg_threshold(),
            min_pattern_size: 2,
            max_pattern_size: None,
            max_patterns: None,
            strategy: Strategy::Decomposed,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.min_pattern_size == 0 {
            return Err(ConfigError::ZeroMinSize);
        }
        match self.max_pattern_size {
            Some(max) if max < self.min_pattern_size => Err(ConfigError::EmptySizeRange {
                min: self.min_pattern_size,
                max,
            }),
            _ => Ok(()),
        }
    }
}

/// Outcome of checking one pattern against the examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    /// Positives shown to be covered; may stop short once the threshold is met.
    pub positive_covered: usize,
    /// Negatives shown to be covered; zero when the positive check failed.
    pub negative_covered: usize,
}

#[derive(Debug, Clone)]
pub struct MineResult {
    /// 1-based discovery order across all sizes.
    pub index: usize,
    pub subset: Vec<VertexId>,
    pub pattern: LabeledGraph,
    pub positive_covered: usize,
    pub negative_covered: usize,
    /// Wall time since the previous acceptance, or since mining started.
    pub elapsed_ms: f64,
}

/// Checks `pattern` with per-example early-stopping searches.
pub fn is_valid_pattern(pattern: &LabeledGraph, dataset: &Dataset, config: &MiningConfig) -> Verdict {
    decomposed(pattern, dataset, config, &Executor::sequential())
}

fn decomposed(
    pattern: &LabeledGraph,
    dataset: &Dataset,
    config: &MiningConfig,
    exec: &Executor,
) -> Verdict {
    let need = config.n_pos_threshold;
    let pos = coverage_with(
        pattern,
        dataset,
        ExampleClass::Positive,
        CoverageMode::EarlyStopAt(need),
        exec,
    );
    if pos.positive_covered < need {
        return Verdict {
            valid: false,
            positive_covered: pos.positive_covered,
            negative_covered: 0,
        };
    }
    let neg = coverage_with(
        pattern,
        dataset,
        ExampleClass::Negative,
        CoverageMode::EarlyStopAt(config.n_neg_threshold.saturating_add(1)),
        exec,
    );
    Verdict {
        valid: neg.negative_covered <= config.n_neg_threshold,
        positive_covered: pos.positive_covered,
        negative_covered: neg.negative_covered,
    }
}

/// Pattern checker bound to one dataset and configuration.
pub struct Evaluator<'a> {
    dataset: &'a Dataset,
    config: &'a MiningConfig,
    exec: Executor,
    union: Option<DisjointUnion>,
}

impl<'a> Evaluator<'a> {
    pub fn new(dataset: &'a Dataset, config: &'a MiningConfig) -> Self {
        let union = match config.strategy {
            Strategy::Decomposed => None,
            Strategy::Monolithic => Some(DisjointUnion::new(dataset)),
        };
        Evaluator {
            dataset,
            config,
            exec: Executor::with_jobs(config.jobs),
            union,
        }
    }

    pub fn evaluate(&self, pattern: &LabeledGraph) -> Verdict {
        match &self.union {
            None => decomposed(pattern, self.dataset, self.config, &self.exec),
            Some(u) => u.evaluate(pattern, self.config.n_pos_threshold, self.config.n_neg_threshold),
        }
    }
}

/// Checks `pattern` with the strategy named in `config`.
pub fn evaluate_strategy(pattern: &LabeledGraph, dataset: &Dataset, config: &MiningConfig) -> Verdict {
    Evaluator::new(dataset, config).evaluate(pattern)
}

/// Mines canonical patterns size by size, smallest first.
///
/// Within a size, candidates are visited in lexicographic subset order; an
/// accepted pattern blocks every template subset inducing a copy of it until
/// the next size starts.
pub fn mine(dataset: &Dataset, config: &MiningConfig) -> Result<Vec<MineResult>, ConfigError> {
    mine_with(dataset, config, |_| {})
}

/// [`mine`], calling `on_accept` as each pattern is found.
pub fn mine_with(
    dataset: &Dataset,
    config: &MiningConfig,
    mut on_accept: impl FnMut(&MineResult),
) -> Result<Vec<MineResult>, ConfigError> {
    config.validate()?;
    let mut results: Vec<MineResult> = Vec::new();
    if config.max_patterns == Some(0) {
        return Ok(results);
    }
    let template = dataset.template();
    let top = config
        .max_pattern_size
        .unwrap_or(usize::MAX)
        .min(template.vertex_count());
    let evaluator = Evaluator::new(dataset, config);
    let mut nogoods = NoGoodStore::new();
    let mut last = Instant::now();

    for size in config.min_pattern_size..=top {
        nogoods.clear();
        let level_start = results.len();
        for subset in connected_subsets(template, size) {
            if nogoods.is_blocked(&subset) {
                continue;
            }
            let pattern = template
                .induced_subgraph(&subset)
                .expect("subset drawn from the template")
                .graph;
            let verdict = evaluator.evaluate(&pattern);
            if !verdict.valid {
                continue;
            }
            for occ in template_occurrences(&pattern, template) {
                nogoods.block(&occ);
            }
            if results[level_start..]
                .iter()
                .any(|r| is_isomorphic(&r.pattern, &pattern))
            {
                continue;
            }
            let now = Instant::now();
            let result = MineResult {
                index: results.len() + 1,
                subset,
                pattern,
                positive_covered: verdict.positive_covered,
                negative_covered: verdict.negative_covered,
                elapsed_ms: now.duration_since(last).as_secs_f64() * 1e3,
            };
            last = now;
            on_accept(&result);
            results.push(result);
            if config.max_patterns == Some(results.len()) {
                return Ok(results);
            }
        }
    }
    Ok(results)
}

/// Whether two result lists hold the same isomorphism classes, size by size,
/// with the same multiplicities.
pub fn same_pattern_classes(a: &[MineResult], b: &[MineResult]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut unmatched: Vec<&LabeledGraph> = b.iter().map(|r| &r.pattern).collect();
    a.iter().all(|r| {
        match unmatched.iter().position(|q| is_isomorphic(&r.pattern, q)) {
            Some(i) => {
                unmatched.swap_remove(i);
                true
            }
            None => false,
        }
    })
}
