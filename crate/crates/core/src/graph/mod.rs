//! The source-wordnet skeleton: synsets, hypernymy, the lemma index and
//! per-synset depth.
//!
//! The graph is immutable once built. Synsets are stored sorted by id so
//! that internal indices order the same way as the ids they stand for.

mod distance;
mod load;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semtag::SemanticTag;
use crate::text::normalize;

pub use distance::{ConceptualDistance, Cost, Distance};
pub use load::SynsetRecord;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SynsetId(String);

impl SynsetId {
    pub fn new(id: impl Into<String>) -> Self {
        SynsetId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SynsetId {
    fn from(s: &str) -> Self {
        SynsetId(s.to_owned())
    }
}

impl std::borrow::Borrow<str> for SynsetId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: SynsetId,
    pub pos: String,
    /// Normalised word forms, in file order, without duplicates.
    pub lemmas: Vec<String>,
    pub semfile: SemanticTag,
    pub hypernyms: BTreeSet<SynsetId>,
    pub hyponyms: BTreeSet<SynsetId>,
}

/// Relation between two word forms read off the skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StructuralRelation {
    SharedSynset,
    DirectHyponym,
    DirectHypernym,
    Sibling,
    None,
}

#[derive(Debug, Clone)]
pub struct WordNetGraph {
    synsets: Vec<Synset>,
    index: HashMap<SynsetId, usize>,
    hypernyms: Vec<Vec<usize>>,
    hyponyms: Vec<Vec<usize>>,
    lemma_index: BTreeMap<String, Vec<usize>>,
    depth: Vec<u32>,
}

impl WordNetGraph {
    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn hypernym_edge_count(&self) -> usize {
        self.hypernyms.iter().map(Vec::len).sum()
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.iter()
    }

    pub fn synset(&self, id: &str) -> Option<&Synset> {
        self.index.get(id).map(|&i| &self.synsets[i])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// Synsets listing `word` among their lemmas, in id order.
    pub fn synsets_of(&self, word: &str) -> impl Iterator<Item = &Synset> {
        self.word_indices(word).iter().map(move |&i| &self.synsets[i])
    }

    pub fn is_indexed(&self, word: &str) -> bool {
        !self.word_indices(word).is_empty()
    }

    /// Number of senses (synsets) of a word; zero when unindexed.
    pub fn polysemy(&self, word: &str) -> usize {
        self.word_indices(word).len()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.lemma_index.keys().map(String::as_str)
    }

    /// Roots have depth 1; any other synset sits one below its shallowest
    /// hypernym.
    pub fn depth(&self, id: &str) -> Result<u32> {
        self.index
            .get(id)
            .map(|&i| self.depth[i])
            .ok_or_else(|| Error::NotFound(id.to_owned()))
    }

    pub fn structural_relation(&self, a: &str, b: &str) -> BTreeSet<StructuralRelation> {
        let sa = self.word_indices(a);
        let sb = self.word_indices(b);
        let mut out = BTreeSet::new();
        for &x in sa {
            for &y in sb {
                if x == y {
                    out.insert(StructuralRelation::SharedSynset);
                    continue;
                }
                if self.hypernyms[x].contains(&y) {
                    out.insert(StructuralRelation::DirectHyponym);
                }
                if self.hypernyms[y].contains(&x) {
                    out.insert(StructuralRelation::DirectHypernym);
                }
                if self.hypernyms[x].iter().any(|p| self.hypernyms[y].contains(p)) {
                    out.insert(StructuralRelation::Sibling);
                }
            }
        }
        if out.is_empty() {
            out.insert(StructuralRelation::None);
        }
        out
    }

    /// Every upward path of 1..=`max_len` hypernym edges starting at `id`.
    /// Each path lists the synsets from `id` (first) to the ancestor (last).
    pub fn hypernym_paths(&self, id: &str, max_len: usize) -> Vec<Vec<SynsetId>> {
        self.paths(id, max_len, &self.hypernyms)
    }

    /// Every downward path of 1..=`max_len` hyponym edges starting at `id`,
    /// listed from `id` (first) to the descendant (last).
    pub fn hyponym_paths(&self, id: &str, max_len: usize) -> Vec<Vec<SynsetId>> {
        self.paths(id, max_len, &self.hyponyms)
    }

    fn paths(&self, id: &str, max_len: usize, adj: &[Vec<usize>]) -> Vec<Vec<SynsetId>> {
        let Some(&start) = self.index.get(id) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut stack = vec![vec![start]];
        while let Some(path) = stack.pop() {
            if path.len() > 1 {
                out.push(path.iter().map(|&i| self.synsets[i].id.clone()).collect());
            }
            if path.len() <= max_len {
                let last = *path.last().expect("non-empty path");
                for &next in adj[last].iter().rev() {
                    let mut p = path.clone();
                    p.push(next);
                    stack.push(p);
                }
            }
        }
        out.sort();
        out
    }

    pub(crate) fn word_indices(&self, word: &str) -> &[usize] {
        self.lemma_index
            .get(&normalize(word))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub(crate) fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub(crate) fn synset_at(&self, i: usize) -> &Synset {
        &self.synsets[i]
    }

    pub(crate) fn depth_at(&self, i: usize) -> u32 {
        self.depth[i]
    }

    /// Undirected hyper/hyponym neighbours, ascending.
    pub(crate) fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let mut n: Vec<usize> = self.hypernyms[i].iter().chain(&self.hyponyms[i]).copied().collect();
        n.sort_unstable();
        n.dedup();
        n.into_iter()
    }
}

#[cfg(test)]
mod tests;
