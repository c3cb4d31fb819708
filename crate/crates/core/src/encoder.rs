//! Solver-input generators: an ASP program and an IDP specification for
//! the mining problem of a dataset.
//!
//! Template nodes render as `x<id>`, example vertices as `v<id>`, graph ids
//! as integers. Labels that are not plain lowercase identifiers are quoted.
//! Output is deterministic; facts are grouped by predicate in alphabetical
//! order and sorted numerically within a group.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::dataset::{Dataset, ExampleClass};
use crate::graph::{Label, LabeledGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("the template has no vertices")]
    EmptyDataset,
}

/// Generated solver input: comment header plus rules and facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingText {
    /// Header lines, already prefixed with the comment token.
    pub header: Vec<String>,
    pub body: String,
}

impl fmt::Display for EncodingText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.header {
            writeln!(f, "{line}")?;
        }
        writeln!(f)?;
        f.write_str(&self.body)
    }
}

fn symbol(l: &Label) -> String {
    let s = l.as_str();
    let mut chars = s.chars();
    let plain = chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if plain {
        s.to_owned()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// Undirected graphs list each edge once, smaller endpoint first.
fn edge_pairs(g: &LabeledGraph, undirected: bool) -> Vec<(u32, u32)> {
    g.edges()
        .filter(|(u, v)| !undirected || u <= v)
        .map(|(u, v)| (u.0, v.0))
        .collect()
}

fn summary(dataset: &Dataset) -> String {
    let t = dataset.template();
    format!(
        "template {} nodes {} edges; {} positive, {} negative; N+ = {}, N- = {}; {}",
        t.vertex_count(),
        edge_pairs(t, t.is_undirected_input()).len(),
        dataset.count(ExampleClass::Positive),
        dataset.count(ExampleClass::Negative),
        dataset.n_pos_threshold(),
        dataset.n_neg_threshold(),
        if dataset.is_undirected() { "undirected" } else { "directed" },
    )
}

const ASP_POSITIVE: &str = "\
0 { homowith(G) } 1 :- positive(G).
1 { f(G,X,V) : node(G,V) } 1 :- positive(G), inpattern(X).
used_f(G,X,V) :- homowith(G), f(G,X,V).
:- used_f(G,X,V1), used_f(G,Y,V2), t_edge(X,Y), not edge(G,V1,V2), inpattern(X), inpattern(Y).
:- used_f(G,X,V), t_label(X,L), not label(G,V,L), inpattern(X).
:- used_f(G,X,V), used_f(G,Y,V), X != Y.
positive_count(N) :- N = #count{G:homowith(G)}.
";

const ASP_SATURATION: &str = "\
map(G,X,V) :- saturated(G), t_node(X), node(G,V).
saturated(G) :- t_edge(X,Y), map(G,X,V1), map(G,Y,V2), not edge(G,V1,V2), negative(G), inpattern(X), inpattern(Y).
saturated(G) :- map(G,X,V), map(G,Y,V), X != Y, inpattern(X), inpattern(Y).
saturated(G) :- map(G,X,V), t_label(X,L), not label(G,V,L), negative(G), inpattern(X).
neg_homowith(G) :- not saturated(G), negative(G).
negative_count(N) :- N = #count{G:neg_homowith(G)}.
";

const ASP_CANONICITY: &str = "\
candidate_var(X) :- iso(_,X).
iso_saturated :- inpattern(X1), inpattern(X2), iso(X1,V1), iso(X2,V2), t_edge(V1,V2), not t_edge(X1,X2).
iso_saturated :- inpattern(X1), inpattern(X2), iso(X1,V1), iso(X2,V2), not t_edge(V1,V2), t_edge(X1,X2).
iso_saturated :- iso(X,V), t_label(X,L), not t_label(V,L).
iso(X,V) :- inpattern(X), t_node(V), iso_saturated.
d1(X) :- inpattern(X), not candidate_var(X).
d2(X) :- not inpattern(X), candidate_var(X).
not_equal :- d1(X).
not_equal :- d2(X).
iso_saturated :- not not_equal.
min_d1(N) :- N = #min{ X: d1(X) }, not iso_saturated.
min_d2(N) :- N = #min{ X: d2(X) }, not iso_saturated.
iso_saturated :- min_d1(N1), min_d2(N2), N1 > N2.
";

const ASP_PATTERN_UNDIRECTED: &str = "\
0 { inpattern(X) } 1 :- t_node(X).
t_path(X,Y) :- t_edge(X,Y), inpattern(X), inpattern(Y).
t_path(X,Y) :- t_edge(X,Z), t_path(Z,Y), inpattern(X).
:- inpattern(X), inpattern(Y), X != Y, not t_path(X,Y).
edge(G,Y,X) :- edge(G,X,Y).
t_edge(Y,X) :- t_edge(X,Y).
node(G,Y) :- edge(G,Y,_).
t_node(X) :- t_edge(X,_).
";

const ASP_PATTERN_DIRECTED: &str = "\
0 { inpattern(X) } 1 :- t_node(X).
t_adj(X,Y) :- t_edge(X,Y).
t_adj(Y,X) :- t_edge(X,Y).
t_path(X,Y) :- t_adj(X,Y), inpattern(X), inpattern(Y).
t_path(X,Y) :- t_adj(X,Z), t_path(Z,Y), inpattern(X).
:- inpattern(X), inpattern(Y), X != Y, not t_path(X,Y).
node(G,Y) :- edge(G,Y,_).
t_node(X) :- t_edge(X,_).
";

/// Builds an ASP program whose answer sets are the valid patterns.
pub fn emit_asp(dataset: &Dataset) -> Result<EncodingText, EncodeError> {
    let t = dataset.template();
    if t.vertex_count() == 0 {
        return Err(EncodeError::EmptyDataset);
    }
    let undirected = dataset.is_undirected();
    let header = vec![
        format!("% patmine {} ASP encoding", env!("CARGO_PKG_VERSION")),
        format!("% instance: {}", summary(dataset)),
        "% predicates: inpattern/1 marks pattern nodes, homowith/1 covered positives,".to_owned(),
        "% iso_saturated/0 the canonicity check".to_owned(),
        "% canonicity: template-based check only".to_owned(),
    ];

    let mut b = String::new();
    b.push_str("% instance\n");
    // facts, predicates in alphabetical order
    for e in dataset.examples() {
        for (u, v) in edge_pairs(&e.graph, undirected) {
            let _ = writeln!(b, "edge({},v{u},v{v}).", e.id);
        }
    }
    for e in dataset.examples() {
        for v in e.graph.vertices() {
            let _ = writeln!(b, "label({},v{},{}).", e.id, v.0, symbol(e.graph.label(v)));
        }
    }
    for e in dataset.of_class(ExampleClass::Negative) {
        let _ = writeln!(b, "negative({}).", e.id);
    }
    for e in dataset.examples() {
        for v in e.graph.vertices() {
            let _ = writeln!(b, "node({},v{}).", e.id, v.0);
        }
    }
    for e in dataset.of_class(ExampleClass::Positive) {
        let _ = writeln!(b, "positive({}).", e.id);
    }
    for (u, v) in edge_pairs(t, undirected) {
        let _ = writeln!(b, "t_edge(x{u},x{v}).");
    }
    for v in t.vertices() {
        let _ = writeln!(b, "t_label(x{},{}).", v.0, symbol(t.label(v)));
    }
    for v in t.vertices() {
        let _ = writeln!(b, "t_node(x{}).", v.0);
    }

    b.push_str("\n% positive matching\n");
    b.push_str(ASP_POSITIVE);
    let _ = writeln!(b, ":- positive_count(N), N < {}.", dataset.n_pos_threshold());

    b.push_str("\n% negative matching\n");
    let negatives: Vec<_> = dataset.of_class(ExampleClass::Negative).collect();
    if negatives.is_empty() {
        b.push_str("% no negative examples: negative count constraint omitted\n");
    } else {
        for e in &negatives {
            let head: Vec<String> = e
                .graph
                .vertices()
                .map(|v| format!("map({},X,v{})", e.id, v.0))
                .collect();
            if head.is_empty() {
                let _ = writeln!(b, "saturated({}) :- inpattern(X), negative({}).", e.id, e.id);
            } else {
                let _ = writeln!(b, "{} :- inpattern(X), negative({}).", head.join(" | "), e.id);
            }
        }
        b.push_str(ASP_SATURATION);
        let _ = writeln!(b, ":- negative_count(N), N > {}.", dataset.n_neg_threshold());
    }

    b.push_str("\n% canonicity\n");
    let head: Vec<String> = t.vertices().map(|v| format!("iso(X,x{})", v.0)).collect();
    let _ = writeln!(b, "{} :- inpattern(X).", head.join(" | "));
    b.push_str(ASP_CANONICITY);

    b.push_str("\n% pattern selection and auxiliaries\n");
    b.push_str(if undirected {
        ASP_PATTERN_UNDIRECTED
    } else {
        ASP_PATTERN_DIRECTED
    });

    Ok(EncodingText { header, body: b })
}

const IDP_VOCABULARY: &str = "\
vocabulary V {
  type node isa nat
  type graphid isa nat
  type label

  template_edge(node, node)
  template_label(node): label

  example_edge(graphid, node, node)
  partial example_label(graphid, node): label
  positive(graphid)
  threshold: int

  inpattern(node)
  partial f(graphid, node): node
  homowith(graphid)
  path(node, node)
}
";

const IDP_THEORY: &str = "\
theory Positive: V {
  !x,y[node] : x ~= y & inpattern(x) & inpattern(y) => path(x,y).
  {
    path(x,y) <- template_edge(x,y) & inpattern(x) & inpattern(y).
    path(x,y) <- ?z[node] : path(x,z) & path(z,y).
    path(x,y) <- path(y,x).
  }

  !gid[graphid] : homowith(gid) => positive(gid).
  !gid[graphid] : !x[node] : homowith(gid) & inpattern(x) <=> ?y[node] : y = f(gid,x).
  !gid[graphid] : !x,y[node] : homowith(gid) & inpattern(x) & inpattern(y) & x ~= y => f(gid,x) ~= f(gid,y).
  !gid[graphid] : !x,y[node] : homowith(gid) & inpattern(x) & inpattern(y) & template_edge(x,y) => example_edge(gid, f(gid,x), f(gid,y)).
  !gid[graphid] : !x[node] : homowith(gid) & inpattern(x) => template_label(x) = example_label(gid, f(gid,x)).

  #{ gid[graphid] : homowith(gid) } >= threshold.
}
";

/// Builds an IDP specification for the positive side of the problem.
pub fn emit_idp(dataset: &Dataset) -> Result<EncodingText, EncodeError> {
    let t = dataset.template();
    if t.vertex_count() == 0 {
        return Err(EncodeError::EmptyDataset);
    }
    let header = vec![
        format!("// patmine {} IDP encoding", env!("CARGO_PKG_VERSION")),
        format!("// instance: {}", summary(dataset)),
        "// positive theory only; example labels use example_label/2".to_owned(),
    ];
    let max_nodes = dataset
        .examples()
        .iter()
        .map(|e| e.graph.vertex_count())
        .chain(Some(t.vertex_count()))
        .max()
        .unwrap_or(0);
    let set = |items: Vec<String>| format!("{{ {} }}", items.join("; "));

    let mut b = String::new();
    b.push_str(IDP_VOCABULARY);
    b.push('\n');
    b.push_str(IDP_THEORY);
    b.push('\n');
    b.push_str("structure S: V {\n");
    let _ = writeln!(b, "  node = {{ 0..{} }}", max_nodes - 1);
    let _ = writeln!(
        b,
        "  graphid = {}",
        set(dataset.examples().iter().map(|e| e.id.to_string()).collect())
    );
    let _ = writeln!(
        b,
        "  label = {}",
        set(dataset.label_universe().iter().map(symbol).collect())
    );
    let _ = writeln!(
        b,
        "  template_edge = {}",
        set(t.edges().map(|(u, v)| format!("{},{}", u.0, v.0)).collect())
    );
    let _ = writeln!(
        b,
        "  template_label = {}",
        set(t
            .vertices()
            .map(|v| format!("{}->{}", v.0, symbol(t.label(v))))
            .collect())
    );
    let _ = writeln!(
        b,
        "  example_edge = {}",
        set(dataset
            .examples()
            .iter()
            .flat_map(|e| e.graph.edges().map(move |(u, v)| format!("{},{},{}", e.id, u.0, v.0)))
            .collect())
    );
    let _ = writeln!(
        b,
        "  example_label = {}",
        set(dataset
            .examples()
            .iter()
            .flat_map(|e| {
                e.graph
                    .vertices()
                    .map(move |v| format!("{},{}->{}", e.id, v.0, symbol(e.graph.label(v))))
            })
            .collect())
    );
    let _ = writeln!(
        b,
        "  positive = {}",
        set(dataset
            .of_class(ExampleClass::Positive)
            .map(|e| e.id.to_string())
            .collect())
    );
    let _ = writeln!(b, "  threshold = {}", dataset.n_pos_threshold());
    b.push_str("}\n");

    Ok(EncodingText { header, body: b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Example;
    use crate::fixtures;

    #[test]
    fn label_symbols() {
        assert_eq!(symbol(&Label::new("a").unwrap()), "a");
        assert_eq!(symbol(&Label::new("c_12").unwrap()), "c_12");
        assert_eq!(symbol(&Label::new("Cl").unwrap()), "\"Cl\"");
        assert_eq!(symbol(&Label::new("a\"b").unwrap()), "\"a\\\"b\"");
    }

    #[test]
    fn saturation_head_lists_negative_vertices() {
        let text = emit_asp(&fixtures::dataset()).unwrap().to_string();
        assert!(text.contains(
            "map(1,X,v0) | map(1,X,v1) | map(1,X,v2) | map(1,X,v3) :- inpattern(X), negative(1).\n"
        ));
        assert!(text.contains(":- positive_count(N), N < 1.\n"));
        assert!(text.contains(":- negative_count(N), N > 0.\n"));
    }

    #[test]
    fn no_negatives_drops_saturation() {
        let ds = Dataset::new(
            fixtures::template(),
            vec![Example {
                id: 0,
                class: ExampleClass::Positive,
                graph: fixtures::positive_example(),
            }],
            1,
            0,
        )
        .unwrap();
        let text = emit_asp(&ds).unwrap().to_string();
        assert!(!text.contains("saturated(G)"));
        assert!(!text.contains("negative_count"));
        assert!(text.contains("% no negative examples"));
    }

    #[test]
    fn identical_examples_differ_only_in_id() {
        let ex = |id| Example {
            id,
            class: ExampleClass::Negative,
            graph: fixtures::negative_path(),
        };
        let ds = Dataset::new(fixtures::template(), vec![ex(0), ex(1)], 0, 0).unwrap();
        let text = emit_asp(&ds).unwrap().body;
        let with = |id: &str| -> Vec<String> {
            text.lines()
                .filter(|l| l.contains(&format!("({id},")) || l.contains(&format!("({id})")))
                .map(|l| l.replace(&format!("({id},"), "(G,").replace(&format!("({id})"), "(G)"))
                .collect()
        };
        assert_eq!(with("0"), with("1"));
        assert!(!with("0").is_empty());
    }

    #[test]
    fn idp_structure() {
        let text = emit_idp(&fixtures::dataset()).unwrap().to_string();
        assert!(text.contains("  graphid = { 0; 1 }\n"));
        assert!(text.contains("  threshold = 1\n"));
        assert!(text.contains("  node = { 0..7 }\n"));

        let empty = Dataset::new(fixtures::template(), Vec::new(), 0, 0).unwrap();
        let text = emit_idp(&empty).unwrap().to_string();
        assert!(text.contains("  example_edge = {  }\n"));
        assert!(text.contains("  threshold = 0\n"));
    }

    #[test]
    fn empty_template_is_rejected() {
        let t = LabeledGraph::build(0, &[], Vec::new(), true).unwrap();
        let ds = Dataset::new(t, Vec::new(), 0, 0).unwrap();
        assert_eq!(emit_asp(&ds), Err(EncodeError::EmptyDataset));
        assert_eq!(emit_idp(&ds), Err(EncodeError::EmptyDataset));
    }

    #[test]
    fn emission_is_deterministic() {
        let ds = fixtures::dataset();
        assert_eq!(emit_asp(&ds), emit_asp(&ds));
        assert_eq!(emit_idp(&ds), emit_idp(&ds));
    }
}
