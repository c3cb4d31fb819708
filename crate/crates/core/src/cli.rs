//! The `patmine` command line.
//!
//! Exit status is 0 on success, 1 on usage, parse or configuration errors
//! and on invalid patterns in `check`, 2 on internal invariant violations
//! (`mine`) and I/O errors (`check`).

use std::ffi::OsString;
use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::bench;
use crate::dataio::{self, SynthParams};
use crate::dataset::{Dataset, ExampleClass};
use crate::encoder;
use crate::fixtures;
use crate::miner::{self, MineResult, MiningConfig, Strategy};
use crate::morphism::{coverage, CoverageMode, ExampleVerdict};

/// Overrides `--seed` for synthetic presets when set.
pub const SEED_ENV: &str = "PATMINE_SEED";

#[derive(Parser, Debug)]
#[command(name = "patmine", version, about = "Mine canonical graph patterns from labeled example graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mine patterns from a dataset.
    Mine(MineArgs),
    /// Re-check patterns from a pattern file against a dataset.
    Check(CheckArgs),
    /// Time both strategies over repeated mining runs.
    Bench(BenchArgs),
    /// Write an ASP or IDP encoding of a dataset.
    Encode(EncodeArgs),
    /// Generate a synthetic dataset.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["examples", "preset"])))]
struct DatasetArgs {
    /// Graph file with example blocks, and the template unless --template is given.
    #[arg(long, value_name = "FILE")]
    examples: Option<PathBuf>,
    /// Graph file holding the template block.
    #[arg(long, value_name = "FILE", requires = "examples")]
    template: Option<PathBuf>,
    /// Built-in dataset: fig1, yoshida or yoshida-small.
    #[arg(long, visible_alias = "synth", value_name = "NAME")]
    preset: Option<String>,
    /// Seed for synthetic presets.
    #[arg(long)]
    seed: Option<u64>,
    /// Minimum number of covered positives.
    #[arg(long, value_name = "K")]
    npos: Option<usize>,
    /// Minimum covered positives as a fraction of all positives, rounded up.
    #[arg(long, value_name = "R", conflicts_with = "npos")]
    npos_frac: Option<f64>,
    /// Maximum number of covered negatives.
    #[arg(long, value_name = "K")]
    nneg: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Decomposed,
    Monolithic,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Decomposed => Strategy::Decomposed,
            StrategyArg::Monolithic => Strategy::Monolithic,
        }
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    min_size: usize,
    #[arg(long)]
    max_size: Option<usize>,
    /// Worker threads for per-example searches [default: available parallelism].
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct MineArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long)]
    max_patterns: Option<usize>,
    #[arg(long, value_enum, default_value = "decomposed")]
    strategy: StrategyArg,
    /// Pattern file to write.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Per-pattern timing CSV to write.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Pattern file as written by `mine --out`.
    #[arg(long, value_name = "FILE")]
    pattern: PathBuf,
    #[command(flatten)]
    data: DatasetArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategySet {
    Both,
    Decomposed,
    Monolithic,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    data: DatasetArgs,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, value_enum, default_value = "both")]
    strategies: StrategySet,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    #[arg(long, default_value_t = 15)]
    max_patterns: usize,
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Asp,
    Idp,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[arg(long, value_enum)]
    target: Target,
    #[command(flatten)]
    data: DatasetArgs,
    /// Output file [default: standard output].
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Starting parameters: yoshida, yoshida-small, or fig1 for the fixture.
    #[arg(long, default_value = "yoshida")]
    preset: String,
    #[arg(long)]
    n_graphs: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    vertex_range: Option<Vec<usize>>,
    #[arg(long)]
    avg_edges: Option<usize>,
    #[arg(long)]
    labels: Option<usize>,
    #[arg(long)]
    pos_frac: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file [default: standard output].
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl fmt::Display) -> Failure {
    Failure {
        code,
        msg: msg.to_string(),
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{}", e.render());
                1
            };
        }
    };
    let outcome = match cli.command {
        Command::Mine(a) => cmd_mine(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Encode(a) => cmd_encode(a, out),
        Command::Gen(a) => cmd_gen(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

struct Loaded {
    dataset: Dataset,
    tag: String,
    seed: Option<u64>,
}

fn read(path: &Path, io_code: i32) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(io_code, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn env_seed() -> Result<Option<u64>, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| fail(1, format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(None),
    }
}

fn load(args: &DatasetArgs, io_code: i32) -> Result<Loaded, Failure> {
    let mut loaded = if let Some(path) = &args.examples {
        let examples = read(path, io_code)?;
        let template = args.template.as_deref().map(|p| read(p, io_code)).transpose()?;
        let dataset = dataio::load_dataset(&examples, template.as_deref())
            .map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
        let tag = path
            .file_name()
            .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        Loaded {
            dataset,
            tag,
            seed: None,
        }
    } else {
        let name = args.preset.as_deref().expect("clap requires a dataset source");
        if name == "fig1" {
            Loaded {
                dataset: dataio::load_dataset(fixtures::GRAPH_FILE, None)
                    .expect("built-in fixture parses"),
                tag: name.to_owned(),
                seed: None,
            }
        } else {
            let mut params = dataio::preset(name)
                .ok_or_else(|| fail(1, format!("unknown preset `{name}`")))?;
            if let Some(seed) = env_seed()?.or(args.seed) {
                params.seed = seed;
            }
            let dataset = dataio::gen_synthetic(&params).map_err(|e| fail(1, e))?;
            Loaded {
                dataset,
                tag: name.to_owned(),
                seed: Some(params.seed),
            }
        }
    };

    let ds = &mut loaded.dataset;
    let positives = ds.count(ExampleClass::Positive);
    let npos = match (args.npos, args.npos_frac) {
        (Some(k), _) => Some(k),
        (None, Some(r)) if (0.0..=1.0).contains(&r) => Some((r * positives as f64).ceil() as usize),
        (None, Some(r)) => return Err(fail(1, format!("--npos-frac {r} is outside [0, 1]"))),
        (None, None) => None,
    };
    if let Some(k) = npos {
        ds.set_pos_threshold(k).map_err(|e| fail(1, e))?;
    }
    if let Some(k) = args.nneg {
        ds.set_neg_threshold(k);
    }
    Ok(loaded)
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn mining_config(ds: &Dataset, search: &SearchArgs) -> Result<MiningConfig, Failure> {
    let config = MiningConfig {
        min_pattern_size: search.min_size,
        max_pattern_size: search.max_size,
        jobs: search.jobs.unwrap_or_else(default_jobs).max(1),
        ..MiningConfig::for_dataset(ds)
    };
    config.validate().map_err(|e| fail(1, e))?;
    Ok(config)
}

/// Summary of one `mine` run.
pub struct RunReport<'a> {
    pub dataset_tag: &'a str,
    pub dataset: &'a Dataset,
    pub config: &'a MiningConfig,
    pub results: &'a [MineResult],
    pub total_ms: f64,
}

impl fmt::Display for RunReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds = self.dataset;
        let c = self.config;
        writeln!(
            f,
            "dataset {}: {} positive, {} negative, template {} vertices, {} labels",
            self.dataset_tag,
            ds.count(ExampleClass::Positive),
            ds.count(ExampleClass::Negative),
            ds.template().vertex_count(),
            ds.label_universe().len()
        )?;
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_owned(), |v| v.to_string());
        writeln!(
            f,
            "config: strategy={} npos={} nneg={} sizes={}..{} max_patterns={} jobs={}",
            c.strategy,
            c.n_pos_threshold,
            c.n_neg_threshold,
            c.min_pattern_size,
            opt(c.max_pattern_size),
            opt(c.max_patterns),
            c.jobs
        )?;
        for r in self.results {
            let ids: Vec<String> = r.subset.iter().map(|v| v.0.to_string()).collect();
            writeln!(
                f,
                "#{} size={} pos={} neg={} time_ms={:.3} vertices={}",
                r.index,
                r.subset.len(),
                r.positive_covered,
                r.negative_covered,
                r.elapsed_ms,
                ids.join(",")
            )?;
        }
        writeln!(f, "{} patterns in {:.3} ms", self.results.len(), self.total_ms)
    }
}

/// First broken guarantee of a mining result, if any.
fn violation(r: &MineResult, ds: &Dataset, c: &MiningConfig) -> Option<String> {
    if r.positive_covered < c.n_pos_threshold {
        return Some(format!("pattern #{}: positive coverage below threshold", r.index));
    }
    if r.negative_covered > c.n_neg_threshold {
        return Some(format!("pattern #{}: negative coverage above threshold", r.index));
    }
    if !r.pattern.is_connected() {
        return Some(format!("pattern #{}: not connected", r.index));
    }
    match ds.template().induced_subgraph(&r.subset) {
        Ok(s) if s.graph == r.pattern => None,
        _ => Some(format!("pattern #{}: not the induced subgraph of its subset", r.index)),
    }
}

fn cmd_mine(a: MineArgs, out: &mut dyn Write) -> Outcome {
    let loaded = load(&a.data, 1)?;
    let ds = &loaded.dataset;
    let config = MiningConfig {
        max_patterns: a.max_patterns,
        strategy: a.strategy.into(),
        ..mining_config(ds, &a.search)?
    };
    let start = Instant::now();
    let results = miner::mine(ds, &config).map_err(|e| fail(1, e))?;
    let total_ms = start.elapsed().as_secs_f64() * 1e3;

    if let Some(v) = results.iter().find_map(|r| violation(r, ds, &config)) {
        return Err(fail(2, v));
    }
    if let Some(path) = &a.out {
        write_file(path, &dataio::write_patterns(&results))?;
    }
    if let Some(path) = &a.csv {
        let run = bench::BenchRun {
            strategy: config.strategy,
            repeat: 0,
            results: results.clone(),
        };
        let records = bench::records(std::slice::from_ref(&run), &loaded.tag, loaded.seed);
        write_file(path, &dataio::write_bench_csv(&records))?;
    }
    let report = RunReport {
        dataset_tag: &loaded.tag,
        dataset: ds,
        config: &config,
        results: &results,
        total_ms,
    };
    let _ = write!(out, "{report}");
    Ok(0)
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> Outcome {
    let text = read(&a.pattern, 2)?;
    let loaded = load(&a.data, 2)?;
    let ds = &loaded.dataset;
    let patterns = dataio::parse_patterns(&text, ds.is_undirected())
        .map_err(|e| fail(1, format!("{}: {e}", a.pattern.display())))?;
    if patterns.is_empty() {
        return Err(fail(1, format!("{}: no patterns", a.pattern.display())));
    }
    let template = ds.template();
    let mut all_valid = true;
    for p in &patterns {
        let mut reasons = Vec::new();
        if !p.graph.is_connected() {
            reasons.push("not connected".to_owned());
        }
        let n = p.subset.len();
        let induced = p.subset.iter().all(|v| v.index() < template.vertex_count())
            && p.graph.vertices().all(|v| p.graph.label(v) == template.label(p.subset[v.index()]))
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    p.graph.has_edge(i.into(), j.into()) == template.has_edge(p.subset[i], p.subset[j])
                })
            });
        if !induced {
            reasons.push("not induced".to_owned());
        }
        let pos = coverage(&p.graph, ds, ExampleClass::Positive, CoverageMode::Full);
        let neg = coverage(&p.graph, ds, ExampleClass::Negative, CoverageMode::Full);
        if pos.positive_covered < ds.n_pos_threshold() {
            reasons.push(format!(
                "positive coverage {} < {}",
                pos.positive_covered,
                ds.n_pos_threshold()
            ));
        }
        if neg.negative_covered > ds.n_neg_threshold() {
            reasons.push(format!(
                "negative coverage {} > {}",
                neg.negative_covered,
                ds.n_neg_threshold()
            ));
        }

        let mut lines = String::new();
        for (report, class) in [(&pos, ExampleClass::Positive), (&neg, ExampleClass::Negative)] {
            for &(id, verdict) in &report.per_example {
                let word = if verdict == ExampleVerdict::Covered {
                    "homomorphism"
                } else {
                    "no homomorphism"
                };
                let _ = writeln!(lines, "  example {id} ({class}): {word}");
            }
        }
        if reasons.is_empty() {
            let _ = writeln!(out, "pattern #{}: valid", p.index);
        } else {
            all_valid = false;
            let _ = writeln!(out, "pattern #{}: invalid ({})", p.index, reasons.join("; "));
        }
        let _ = write!(out, "{lines}");
    }
    Ok(if all_valid { 0 } else { 1 })
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Outcome {
    let loaded = load(&a.data, 1)?;
    let ds = &loaded.dataset;
    let config = MiningConfig {
        max_patterns: Some(a.max_patterns),
        ..mining_config(ds, &a.search)?
    };
    let strategies: &[Strategy] = match a.strategies {
        StrategySet::Both => &[Strategy::Decomposed, Strategy::Monolithic],
        StrategySet::Decomposed => &[Strategy::Decomposed],
        StrategySet::Monolithic => &[Strategy::Monolithic],
    };
    let runs = bench::run_bench(ds, &config, strategies, a.repeats).map_err(|e| fail(1, e))?;
    if let Some(path) = &a.csv {
        let records = bench::records(&runs, &loaded.tag, loaded.seed);
        write_file(path, &dataio::write_bench_csv(&records))?;
    }

    let _ = writeln!(
        out,
        "dataset {}: {} examples, {} repeats, up to {} patterns",
        loaded.tag,
        ds.examples().len(),
        a.repeats,
        a.max_patterns
    );
    let medians: Vec<(Strategy, Vec<f64>)> = strategies
        .iter()
        .map(|&s| (s, bench::per_index_medians(&runs, s)))
        .collect();
    let _ = write!(out, "index");
    for (s, _) in &medians {
        let _ = write!(out, " {:>12}", format!("{s}_ms"));
    }
    let _ = writeln!(out);
    let rows = medians.iter().map(|(_, m)| m.len()).max().unwrap_or(0);
    for i in 0..rows {
        let _ = write!(out, "{:>5}", i + 1);
        for (_, m) in &medians {
            let cell = m.get(i).map_or_else(|| "-".to_owned(), |t| format!("{t:.3}"));
            let _ = write!(out, " {cell:>12}");
        }
        let _ = writeln!(out);
    }
    for &s in strategies {
        let counts: Vec<String> = runs
            .iter()
            .filter(|r| r.strategy == s)
            .map(|r| r.results.len().to_string())
            .collect();
        let _ = writeln!(out, "{s} patterns per run: {}", counts.join(" "));
    }
    if let Some(x) = bench::speedup(&runs) {
        let first = |s| runs.iter().find(|r| r.strategy == s).map(|r| &r.results);
        if let (Some(d), Some(m)) = (first(Strategy::Decomposed), first(Strategy::Monolithic)) {
            let same = miner::same_pattern_classes(d, m);
            let _ = writeln!(out, "pattern classes agree: {}", if same { "yes" } else { "no" });
        }
        let _ = writeln!(out, "speedup (monolithic median / decomposed median): {x:.2}x");
    }
    Ok(0)
}

fn cmd_encode(a: EncodeArgs, out: &mut dyn Write) -> Outcome {
    let loaded = load(&a.data, 1)?;
    let text = match a.target {
        Target::Asp => encoder::emit_asp(&loaded.dataset),
        Target::Idp => encoder::emit_idp(&loaded.dataset),
    }
    .map_err(|e| fail(1, e))?
    .to_string();
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(0)
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Outcome {
    let text = if a.preset == "fig1" {
        fixtures::GRAPH_FILE.to_owned()
    } else {
        let base = dataio::preset(&a.preset)
            .ok_or_else(|| fail(1, format!("unknown preset `{}`", a.preset)))?;
        let vertex_range = match a.vertex_range.as_deref() {
            Some(&[lo, hi]) => (lo, hi),
            _ => base.vertex_range,
        };
        let params = SynthParams {
            n_graphs: a.n_graphs.unwrap_or(base.n_graphs),
            vertex_range,
            target_avg_edges: a.avg_edges.unwrap_or(base.target_avg_edges),
            n_labels: a.labels.unwrap_or(base.n_labels),
            positive_fraction: a.pos_frac.unwrap_or(base.positive_fraction),
            seed: env_seed()?.or(a.seed).unwrap_or(base.seed),
        };
        let ds = dataio::gen_synthetic(&params).map_err(|e| fail(1, e))?;
        dataio::write_dataset(&ds)
    };
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(0)
}
