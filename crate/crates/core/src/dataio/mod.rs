//! Graph files, pattern files, benchmark CSV and synthetic datasets.
//!
//! Graph file grammar, one item per line, `#` comment lines ignored:
//!
//! ```text
//! mode undirected
//! t # 0 pos
//! v 0 a
//! v 1 b
//! e 0 1
//! ```
//!
//! Vertex ids are dense per block. A block's tag is `pos`, `neg` or
//! `template`.

mod synth;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::dataset::{Dataset, DatasetError, Example, ExampleClass};
use crate::graph::{Label, LabeledGraph, VertexId};
use crate::miner::{MineResult, Strategy};

pub use synth::{default_pos_threshold, gen_synthetic, preset, SynthError, SynthParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Positive,
    Negative,
    Template,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Positive => "pos",
            ClassTag::Negative => "neg",
            ClassTag::Template => "template",
        }
    }
}

impl From<ExampleClass> for ClassTag {
    fn from(c: ExampleClass) -> Self {
        match c {
            ExampleClass::Positive => ClassTag::Positive,
            ExampleClass::Negative => ClassTag::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphBlock {
    pub id: usize,
    pub tag: ClassTag,
    pub graph: LabeledGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: block {block} declares vertex {found}, expected {expected}")]
    NonDenseVertexIds {
        line: usize,
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unknown class tag `{tag}`")]
    UnknownClassTag { line: usize, tag: String },
    #[error("line {line}: block id {id} used twice")]
    DuplicateBlockId { line: usize, id: usize },
}

impl ParseError {
    /// 1-based line number of the offending line.
    pub fn line(&self) -> usize {
        match *self {
            ParseError::Syntax { line, .. }
            | ParseError::NonDenseVertexIds { line, .. }
            | ParseError::UnknownClassTag { line, .. }
            | ParseError::DuplicateBlockId { line, .. } => line,
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

#[derive(Default)]
struct Interner(HashMap<String, Label>);

impl Interner {
    fn get(&mut self, s: &str, line: usize) -> Result<Label, ParseError> {
        if let Some(l) = self.0.get(s) {
            return Ok(l.clone());
        }
        let l = Label::new(s).map_err(|e| syntax(line, e.to_string()))?;
        self.0.insert(s.to_owned(), l.clone());
        Ok(l)
    }
}

struct OpenBlock {
    id: usize,
    tag: ClassTag,
    labels: Vec<Label>,
    edges: Vec<(u32, u32, usize)>,
}

impl OpenBlock {
    fn finish(self, undirected: bool) -> Result<GraphBlock, ParseError> {
        let n = self.labels.len();
        let mut pairs = Vec::with_capacity(self.edges.len());
        for (u, v, line) in self.edges {
            if u as usize >= n || v as usize >= n {
                return Err(syntax(
                    line,
                    format!("edge ({u}, {v}) refers to a vertex outside 0..{n}"),
                ));
            }
            pairs.push((u, v));
        }
        let graph = LabeledGraph::build(n, &pairs, self.labels, undirected)
            .expect("edges checked above");
        Ok(GraphBlock {
            id: self.id,
            tag: self.tag,
            graph,
        })
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_mode(line: usize, s: &str) -> Result<bool, ParseError> {
    match s.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["mode", "undirected"] => Ok(true),
        ["mode", "directed"] => Ok(false),
        _ => Err(syntax(line, "expected `mode directed` or `mode undirected`")),
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

/// Parses a graph file. A file without content lines yields no blocks.
pub fn parse_graphs(text: &str) -> Result<Vec<GraphBlock>, ParseError> {
    Ok(parse_graph_file(text)?.1)
}

/// Parses a graph file, also returning whether it was declared undirected.
pub fn parse_graph_file(text: &str) -> Result<(bool, Vec<GraphBlock>), ParseError> {
    let mut lines = content_lines(text);
    let Some((first_line, first)) = lines.next() else {
        return Ok((false, Vec::new()));
    };
    let undirected = parse_mode(first_line, first)?;
    let mut interner = Interner::default();
    let mut blocks = Vec::new();
    let mut seen = HashSet::new();
    let mut open: Option<OpenBlock> = None;

    for (line, s) in lines {
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["t", "#", id, tag] => {
                let id: usize = number(line, id, "block id")?;
                let tag = match *tag {
                    "pos" => ClassTag::Positive,
                    "neg" => ClassTag::Negative,
                    "template" => ClassTag::Template,
                    other => {
                        return Err(ParseError::UnknownClassTag {
                            line,
                            tag: other.to_owned(),
                        })
                    }
                };
                if !seen.insert(id) {
                    return Err(ParseError::DuplicateBlockId { line, id });
                }
                if let Some(b) = open.take() {
                    blocks.push(b.finish(undirected)?);
                }
                open = Some(OpenBlock {
                    id,
                    tag,
                    labels: Vec::new(),
                    edges: Vec::new(),
                });
            }
            ["v", vid, label] => {
                let b = open
                    .as_mut()
                    .ok_or_else(|| syntax(line, "vertex outside a block"))?;
                let vid: usize = number(line, vid, "vertex id")?;
                if vid != b.labels.len() {
                    return Err(ParseError::NonDenseVertexIds {
                        line,
                        block: b.id,
                        expected: b.labels.len(),
                        found: vid,
                    });
                }
                b.labels.push(interner.get(label, line)?);
            }
            ["e", u, v] => {
                let b = open
                    .as_mut()
                    .ok_or_else(|| syntax(line, "edge outside a block"))?;
                let u = number(line, u, "vertex id")?;
                let v = number(line, v, "vertex id")?;
                b.edges.push((u, v, line));
            }
            ["mode", ..] => return Err(syntax(line, "`mode` must be the first line")),
            _ => return Err(syntax(line, format!("unrecognized line `{s}`"))),
        }
    }
    if let Some(b) = open.take() {
        blocks.push(b.finish(undirected)?);
    }
    Ok((undirected, blocks))
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no template block found")]
    MissingTemplate,
    #[error("more than one template block (ids {0} and {1})")]
    MultipleTemplates(usize, usize),
    #[error("template file and example file disagree on `mode`")]
    ModeMismatch,
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

/// Builds a dataset from an examples file and an optional separate template
/// file. Exactly one template block must exist across both. Example blocks
/// keep their ids, which must run `0, 1, 2, ...` in some order.
///
/// Thresholds start at the default positive threshold and `N- = 0`.
pub fn load_dataset(examples: &str, template: Option<&str>) -> Result<Dataset, LoadError> {
    let (undirected, mut blocks) = parse_graph_file(examples)?;
    if let Some(t) = template {
        let (t_undirected, t_blocks) = parse_graph_file(t)?;
        if !blocks.is_empty() && !t_blocks.is_empty() && t_undirected != undirected {
            return Err(LoadError::ModeMismatch);
        }
        blocks.extend(t_blocks);
    }
    let mut template = None::<(usize, LabeledGraph)>;
    let mut examples = Vec::new();
    for b in blocks {
        let class = match b.tag {
            ClassTag::Template => {
                if let Some((first, _)) = &template {
                    return Err(LoadError::MultipleTemplates(*first, b.id));
                }
                template = Some((b.id, b.graph));
                continue;
            }
            ClassTag::Positive => ExampleClass::Positive,
            ClassTag::Negative => ExampleClass::Negative,
        };
        examples.push(Example {
            id: b.id,
            class,
            graph: b.graph,
        });
    }
    let (_, template) = template.ok_or(LoadError::MissingTemplate)?;
    let positives = examples
        .iter()
        .filter(|e| e.class == ExampleClass::Positive)
        .count();
    Ok(Dataset::new(template, examples, default_pos_threshold(positives), 0)?)
}

fn write_block(out: &mut String, header: &str, graph: &LabeledGraph, ids: Option<&[VertexId]>) {
    let name = |v: VertexId| ids.map_or(v.0, |ids| ids[v.index()].0);
    out.push_str(header);
    out.push('\n');
    for v in graph.vertices() {
        let _ = writeln!(out, "v {} {}", name(v), graph.label(v));
    }
    for (u, v) in graph.edges() {
        if graph.is_undirected_input() && u > v {
            continue;
        }
        let _ = writeln!(out, "e {} {}", name(u), name(v));
    }
}

fn mode_line(undirected: bool) -> &'static str {
    if undirected {
        "mode undirected\n"
    } else {
        "mode directed\n"
    }
}

/// Serializes blocks; undirected edges are written once, smaller id first.
pub fn write_graphs(undirected: bool, blocks: &[GraphBlock]) -> String {
    let mut out = String::from(mode_line(undirected));
    for b in blocks {
        out.push('\n');
        write_block(&mut out, &format!("t # {} {}", b.id, b.tag.as_str()), &b.graph, None);
    }
    out
}

/// Serializes a dataset; the template follows the examples with the next id.
pub fn write_dataset(dataset: &Dataset) -> String {
    let mut blocks: Vec<GraphBlock> = dataset
        .examples()
        .iter()
        .map(|e| GraphBlock {
            id: e.id,
            tag: e.class.into(),
            graph: e.graph.clone(),
        })
        .collect();
    blocks.push(GraphBlock {
        id: dataset.examples().len(),
        tag: ClassTag::Template,
        graph: dataset.template().clone(),
    });
    write_graphs(dataset.template().is_undirected_input(), &blocks)
}

/// Serializes mined patterns using their template vertex ids.
pub fn write_patterns(results: &[MineResult]) -> String {
    let Some(first) = results.first() else {
        return String::new();
    };
    let mut out = String::from(mode_line(first.pattern.is_undirected_input()));
    for r in results {
        out.push('\n');
        let header = format!(
            "p # {} size={} pos={} neg={} time_ms={:.3}",
            r.index,
            r.subset.len(),
            r.positive_covered,
            r.negative_covered,
            r.elapsed_ms
        );
        write_block(&mut out, &header, &r.pattern, Some(&r.subset));
    }
    out
}

/// A pattern read back from a pattern file.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternBlock {
    pub index: usize,
    /// Template vertices, in the order their `v` lines appear.
    pub subset: Vec<VertexId>,
    /// The pattern with vertices renumbered `0..n` in `subset` order.
    pub graph: LabeledGraph,
    /// `key=value` fields of the header line.
    pub fields: BTreeMap<String, String>,
}

/// Parses a pattern file. Without a `mode` line, `default_undirected`
/// decides how edges are read.
pub fn parse_patterns(text: &str, default_undirected: bool) -> Result<Vec<PatternBlock>, ParseError> {
    struct Open {
        index: usize,
        fields: BTreeMap<String, String>,
        subset: Vec<VertexId>,
        labels: Vec<Label>,
        edges: Vec<(u32, u32, usize)>,
    }
    let mut undirected = default_undirected;
    let mut interner = Interner::default();
    let mut out = Vec::new();
    let mut open: Option<Open> = None;

    let close = |b: Open, undirected: bool| -> Result<PatternBlock, ParseError> {
        let local: HashMap<u32, u32> = b
            .subset
            .iter()
            .enumerate()
            .map(|(i, v)| (v.0, i as u32))
            .collect();
        let mut pairs = Vec::new();
        for (u, v, line) in b.edges {
            match (local.get(&u), local.get(&v)) {
                (Some(&a), Some(&c)) => pairs.push((a, c)),
                _ => return Err(syntax(line, format!("edge ({u}, {v}) names an undeclared vertex"))),
            }
        }
        let graph = LabeledGraph::build(b.subset.len(), &pairs, b.labels, undirected)
            .expect("edges mapped to declared vertices");
        Ok(PatternBlock {
            index: b.index,
            subset: b.subset,
            graph,
            fields: b.fields,
        })
    };

    for (n, (line, s)) in content_lines(text).enumerate() {
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["mode", ..] if n == 0 => undirected = parse_mode(line, s)?,
            ["p", "#", index, rest @ ..] => {
                if let Some(b) = open.take() {
                    out.push(close(b, undirected)?);
                }
                let mut fields = BTreeMap::new();
                for kv in rest {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| syntax(line, format!("expected key=value, got `{kv}`")))?;
                    fields.insert(k.to_owned(), v.to_owned());
                }
                open = Some(Open {
                    index: number(line, index, "pattern index")?,
                    fields,
                    subset: Vec::new(),
                    labels: Vec::new(),
                    edges: Vec::new(),
                });
            }
            ["v", vid, label] => {
                let b = open
                    .as_mut()
                    .ok_or_else(|| syntax(line, "vertex outside a pattern"))?;
                let vid = VertexId(number(line, vid, "vertex id")?);
                if b.subset.contains(&vid) {
                    return Err(syntax(line, format!("vertex {vid} declared twice")));
                }
                b.subset.push(vid);
                b.labels.push(interner.get(label, line)?);
            }
            ["e", u, v] => {
                let b = open
                    .as_mut()
                    .ok_or_else(|| syntax(line, "edge outside a pattern"))?;
                b.edges
                    .push((number(line, u, "vertex id")?, number(line, v, "vertex id")?, line));
            }
            _ => return Err(syntax(line, format!("unrecognized line `{s}`"))),
        }
    }
    if let Some(b) = open.take() {
        out.push(close(b, undirected)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub strategy: Strategy,
    pub index: usize,
    pub elapsed_ms: f64,
    pub dataset: String,
    pub seed: Option<u64>,
}

/// CSV with header `strategy,index,elapsed_ms,dataset,seed`, rows in input
/// order. A missing seed is an empty field.
pub fn write_bench_csv(records: &[BenchRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["strategy", "index", "elapsed_ms", "dataset", "seed"])
        .expect("writing to memory");
    for r in records {
        w.write_record([
            r.strategy.name().to_owned(),
            r.index.to_string(),
            format!("{:.3}", r.elapsed_ms),
            r.dataset.clone(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}
