//! Per-primitive sense taxonomies grown from dictionary genus terms.
//!
//! Top beginners are the genus terms of a primitive that survive the
//! configured filters. Every labelled definition whose disambiguated genus
//! chain reaches a top (or the primitive root) becomes a node.

mod build;
mod filters;
mod gsd;

use std::collections::BTreeMap;

use crate::semtag::{SemanticTag, TaggedDefinition};

pub use build::{build_taxonomy, structure_tops, top_senses, CycleReport, ResolvedSense, SenseTaxonomy, TopStructure};
pub use filters::{filter_f1, filter_f2, filter_f3, select_top_beginners, Filter, FilterContext, FilterSpec};
pub use gsd::{disambiguate_genus, GenusHeuristic, GenusResolution, GsdContext, HeuristicChain};

/// Genus-term frequencies among the definitions of one primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTable {
    pub tag: SemanticTag,
    counts: BTreeMap<String, u64>,
}

impl GenusTable {
    pub fn new(tag: SemanticTag) -> Self {
        GenusTable {
            tag,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts<S: AsRef<str>>(tag: SemanticTag, counts: impl IntoIterator<Item = (S, u64)>) -> Self {
        GenusTable {
            tag,
            counts: counts
                .into_iter()
                .filter(|(_, n)| *n > 0)
                .map(|(g, n)| (g.as_ref().to_owned(), n))
                .collect(),
        }
    }

    pub fn count(&self, genus: &str) -> u64 {
        self.counts.get(genus).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(g, &n)| (g.as_str(), n))
    }

    pub fn genus_terms(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub(crate) fn retain(&self, mut keep: impl FnMut(&str, u64) -> bool) -> GenusTable {
        GenusTable {
            tag: self.tag.clone(),
            counts: self
                .counts
                .iter()
                .filter(|(g, &n)| keep(g, n))
                .map(|(g, &n)| (g.clone(), n))
                .collect(),
        }
    }
}

/// Genus counts under every primitive at once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenusIndex {
    counts: BTreeMap<String, BTreeMap<SemanticTag, u64>>,
}

impl GenusIndex {
    pub fn from_tagged(tagged: &[TaggedDefinition]) -> Self {
        let mut counts: BTreeMap<String, BTreeMap<SemanticTag, u64>> = BTreeMap::new();
        for t in tagged {
            if let Some(g) = &t.definition.genus {
                *counts.entry(g.clone()).or_default().entry(t.tag.clone()).or_default() += 1;
            }
        }
        GenusIndex { counts }
    }

    pub fn count(&self, genus: &str, tag: &SemanticTag) -> u64 {
        self.counts
            .get(genus)
            .and_then(|m| m.get(tag))
            .copied()
            .unwrap_or(0)
    }

    pub fn by_tag(&self, genus: &str) -> impl Iterator<Item = (&SemanticTag, u64)> {
        self.counts.get(genus).into_iter().flatten().map(|(t, &n)| (t, n))
    }
}

/// Counts the genus of every definition labelled `tag`. Definitions
/// without a genus are skipped.
pub fn collect_genus(tagged: &[TaggedDefinition], tag: &SemanticTag) -> GenusTable {
    let mut table = GenusTable::new(tag.clone());
    for t in tagged.iter().filter(|t| &t.tag == tag) {
        if let Some(g) = &t.definition.genus {
            *table.counts.entry(g.clone()).or_default() += 1;
        }
    }
    table
}
