//! Matching taxonomy edges against skeleton hypernym paths, inferring new
//! links from the resulting configurations and bootstrapping to a fixpoint.

mod confidence;
mod infer;

pub use confidence::{semfile_key, ConfidenceTable};
pub use infer::{
    bootstrap, combine_patterns, infer_links, promotions, Boost, BootstrapInput, BootstrapRun, Inference,
    InferredLink, Ledger, Promotion, RoundLedger, Source,
};

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bilingual::HomogeneousBilingual;
use crate::graph::{SynsetId, WordNetGraph};
use crate::semtag::{SemanticTag, SenseKey};
use crate::taxonomy::SenseTaxonomy;

/// Accepted (word, synset) links.
pub type LinkSet = BTreeSet<(String, SynsetId)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinkKind {
    A,
    B,
    None,
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkKind::A => "A",
            LinkKind::B => "B",
            LinkKind::None => "NONE",
        })
    }
}

/// A taxonomy edge lined up with a skeleton hypernym path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternInstance {
    pub tag: SemanticTag,
    pub sp_hypo: SenseKey,
    pub sp_hyper: SenseKey,
    pub en_hypo: SynsetId,
    pub en_hyper: SynsetId,
    /// en_hypo first, en_hyper last.
    pub path: Vec<SynsetId>,
    pub above_kind: LinkKind,
    pub below_kind: LinkKind,
    pub configuration: u8,
}

/// 1=(A,A) 2=(A,B) 3=(A,NONE) 4=(B,A) 5=(B,B) 6=(B,NONE) 7=(NONE,A)
/// 8=(NONE,B), read as (above, below). `None` for (NONE,NONE).
pub fn classify_pattern(above: LinkKind, below: LinkKind) -> Option<u8> {
    use LinkKind::*;
    Some(match (above, below) {
        (A, A) => 1,
        (A, B) => 2,
        (A, None) => 3,
        (B, A) => 4,
        (B, B) => 5,
        (B, None) => 6,
        (None, A) => 7,
        (None, B) => 8,
        (None, None) => return Option::None,
    })
}

/// Inverse of [`classify_pattern`].
pub fn configuration_kinds(configuration: u8) -> Option<(LinkKind, LinkKind)> {
    use LinkKind::*;
    const GRID: [(LinkKind, LinkKind); 8] = [(A, A), (A, B), (A, None), (B, A), (B, B), (B, None), (None, A), (None, B)];
    GRID.get(usize::from(configuration).checked_sub(1)?).copied()
}

/// How `word` reaches `synset`: an accepted link beats a raw translation.
pub fn link_kind(word: &str, synset: &SynsetId, g: &WordNetGraph, a: &LinkSet, b: &HomogeneousBilingual) -> LinkKind {
    if a.contains(&(word.to_owned(), synset.clone())) {
        return LinkKind::A;
    }
    let translated = g.synset(synset.as_str()).is_some_and(|s| {
        b.translations(word)
            .is_some_and(|ts| s.lemmas.iter().any(|l| ts.contains(l)))
    });
    if translated {
        LinkKind::B
    } else {
        LinkKind::None
    }
}

/// Synsets `word` reaches through A or B.
fn connected(word: &str, g: &WordNetGraph, a: &LinkSet, b: &HomogeneousBilingual) -> BTreeSet<SynsetId> {
    let mut out: BTreeSet<SynsetId> = a
        .range((word.to_owned(), SynsetId::new(""))..)
        .take_while(|(w, _)| w == word)
        .map(|(_, s)| s.clone())
        .collect();
    if let Some(ts) = b.translations(word) {
        for t in ts {
            out.extend(g.synsets_of(t).map(|s| s.id.clone()));
        }
    }
    out
}

fn edge_patterns(
    tag: &SemanticTag,
    hypo: &SenseKey,
    hyper: &SenseKey,
    g: &WordNetGraph,
    a: &LinkSet,
    b: &HomogeneousBilingual,
    max_path: usize,
) -> Vec<PatternInstance> {
    let mut paths: BTreeSet<Vec<SynsetId>> = BTreeSet::new();
    for s in connected(&hypo.0, g, a, b) {
        paths.extend(g.hypernym_paths(s.as_str(), max_path));
    }
    for s in connected(&hyper.0, g, a, b) {
        for mut p in g.hyponym_paths(s.as_str(), max_path) {
            p.reverse();
            paths.insert(p);
        }
    }
    paths
        .into_iter()
        .filter_map(|path| {
            let en_hypo = path.first()?.clone();
            let en_hyper = path.last()?.clone();
            let below = link_kind(&hypo.0, &en_hypo, g, a, b);
            let above = link_kind(&hyper.0, &en_hyper, g, a, b);
            let configuration = classify_pattern(above, below)?;
            Some(PatternInstance {
                tag: tag.clone(),
                sp_hypo: hypo.clone(),
                sp_hyper: hyper.clone(),
                en_hypo,
                en_hyper,
                path,
                above_kind: above,
                below_kind: below,
                configuration,
            })
        })
        .collect()
}

/// Every (taxonomy edge, hypernym path of at most `max_path` edges) pair
/// where at least one side is connected. Sorted.
pub fn enumerate_patterns<'t>(
    taxonomies: impl IntoIterator<Item = &'t SenseTaxonomy>,
    g: &WordNetGraph,
    a: &LinkSet,
    b: &HomogeneousBilingual,
    max_path: usize,
) -> Vec<PatternInstance> {
    let edges: Vec<(&SemanticTag, &SenseKey, &SenseKey)> = taxonomies
        .into_iter()
        .flat_map(|t| t.edges().map(move |(c, p)| (&t.primitive, c, p)))
        .collect();
    let mut out: Vec<PatternInstance> = edges
        .par_iter()
        .flat_map_iter(|(tag, c, p)| edge_patterns(tag, c, p, g, a, b, max_path.max(1)))
        .collect();
    out.sort();
    out.dedup();
    out
}
