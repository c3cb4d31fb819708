//! Repeated timed mining runs under each strategy.

use crate::dataio::BenchRecord;
use crate::dataset::Dataset;
use crate::miner::{mine, ConfigError, MineResult, MiningConfig, Strategy};

#[derive(Debug, Clone)]
pub struct BenchRun {
    pub strategy: Strategy,
    /// 0-based repeat number.
    pub repeat: usize,
    pub results: Vec<MineResult>,
}

/// Mines `repeats` times per strategy, strategies interleaved per repeat.
pub fn run_bench(
    dataset: &Dataset,
    config: &MiningConfig,
    strategies: &[Strategy],
    repeats: usize,
) -> Result<Vec<BenchRun>, ConfigError> {
    let mut runs = Vec::with_capacity(strategies.len() * repeats);
    for repeat in 0..repeats {
        for &strategy in strategies {
            let config = MiningConfig {
                strategy,
                ..config.clone()
            };
            runs.push(BenchRun {
                strategy,
                repeat,
                results: mine(dataset, &config)?,
            });
        }
    }
    Ok(runs)
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    })
}

/// Median time of the i-th pattern across repeats, for i = 1, 2, ...
pub fn per_index_medians(runs: &[BenchRun], strategy: Strategy) -> Vec<f64> {
    let runs: Vec<&BenchRun> = runs.iter().filter(|r| r.strategy == strategy).collect();
    let longest = runs.iter().map(|r| r.results.len()).max().unwrap_or(0);
    (0..longest)
        .filter_map(|i| {
            let times: Vec<f64> = runs
                .iter()
                .filter_map(|r| r.results.get(i).map(|m| m.elapsed_ms))
                .collect();
            median(&times)
        })
        .collect()
}

/// Median over every per-pattern time recorded for `strategy`.
pub fn overall_median(runs: &[BenchRun], strategy: Strategy) -> Option<f64> {
    let times: Vec<f64> = runs
        .iter()
        .filter(|r| r.strategy == strategy)
        .flat_map(|r| r.results.iter().map(|m| m.elapsed_ms))
        .collect();
    median(&times)
}

/// Monolithic median over decomposed median; `None` unless both ran.
pub fn speedup(runs: &[BenchRun]) -> Option<f64> {
    let d = overall_median(runs, Strategy::Decomposed)?;
    let m = overall_median(runs, Strategy::Monolithic)?;
    Some(m / d)
}

pub fn records(runs: &[BenchRun], dataset: &str, seed: Option<u64>) -> Vec<BenchRecord> {
    runs.iter()
        .flat_map(|run| {
            run.results.iter().map(move |m| BenchRecord {
                strategy: run.strategy,
                index: m.index,
                elapsed_ms: m.elapsed_ms,
                dataset: dataset.to_owned(),
                seed,
            })
        })
        .collect()
}
