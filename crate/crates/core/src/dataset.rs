use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Label, LabeledGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExampleClass {
    Positive,
    Negative,
}

impl fmt::Display for ExampleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExampleClass::Positive => "pos",
            ExampleClass::Negative => "neg",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub id: usize,
    pub class: ExampleClass,
    pub graph: LabeledGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("example ids must be contiguous from 0: expected {expected}, found {found}")]
    NonContiguousIds { expected: usize, found: usize },
    #[error("positive threshold {threshold} exceeds the {positives} positive examples")]
    ThresholdTooLarge { threshold: usize, positives: usize },
}

/// A template graph plus classified examples and the two coverage thresholds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    template: LabeledGraph,
    examples: Vec<Example>,
    n_pos_threshold: usize,
    n_neg_threshold: usize,
}

impl Dataset {
    /// Examples are reordered by id; ids must then read `0, 1, 2, ...`.
    pub fn new(
        template: LabeledGraph,
        mut examples: Vec<Example>,
        n_pos_threshold: usize,
        n_neg_threshold: usize,
    ) -> Result<Self, DatasetError> {
        examples.sort_by_key(|e| e.id);
        for (expected, e) in examples.iter().enumerate() {
            if e.id != expected {
                return Err(DatasetError::NonContiguousIds {
                    expected,
                    found: e.id,
                });
            }
        }
        let mut ds = Dataset {
            template,
            examples,
            n_pos_threshold: 0,
            n_neg_threshold,
        };
        ds.set_pos_threshold(n_pos_threshold)?;
        Ok(ds)
    }

    pub fn template(&self) -> &LabeledGraph {
        &self.template
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn of_class(&self, class: ExampleClass) -> impl Iterator<Item = &Example> + '_ {
        self.examples.iter().filter(move |e| e.class == class)
    }

    pub fn count(&self, class: ExampleClass) -> usize {
        self.of_class(class).count()
    }

    pub fn n_pos_threshold(&self) -> usize {
        self.n_pos_threshold
    }

    pub fn n_neg_threshold(&self) -> usize {
        self.n_neg_threshold
    }

    pub fn set_pos_threshold(&mut self, threshold: usize) -> Result<(), DatasetError> {
        let positives = self.count(ExampleClass::Positive);
        if threshold > positives {
            return Err(DatasetError::ThresholdTooLarge {
                threshold,
                positives,
            });
        }
        self.n_pos_threshold = threshold;
        Ok(())
    }

    pub fn set_neg_threshold(&mut self, threshold: usize) {
        self.n_neg_threshold = threshold;
    }

    /// Distinct labels over the template and all examples, sorted.
    pub fn label_universe(&self) -> BTreeSet<Label> {
        std::iter::once(&self.template)
            .chain(self.examples.iter().map(|e| &e.graph))
            .flat_map(|g| g.labels().iter().cloned())
            .collect()
    }

    /// Whether every graph in the dataset was loaded as undirected.
    pub fn is_undirected(&self) -> bool {
        self.template.is_undirected_input()
            && self.examples.iter().all(|e| e.graph.is_undirected_input())
    }
}
