//! Genus sense disambiguation: an ordered chain of named heuristics, the
//! first decisive one wins.

use std::collections::BTreeMap;

use crate::bilingual::HomogeneousBilingual;
use crate::error::{Error, Result};
use crate::graph::{Distance, SynsetId, WordNetGraph};
use crate::semtag::{Definition, Dictionary, SemanticTag, SenseKey};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenusResolution {
    Resolved { sense: SenseKey, heuristic: String },
    /// The genus word has no sense in the dictionary (or there is no
    /// genus at all); the definition hangs from the primitive root.
    Unresolved,
}

impl GenusResolution {
    pub fn sense(&self) -> Option<&SenseKey> {
        match self {
            GenusResolution::Resolved { sense, .. } => Some(sense),
            GenusResolution::Unresolved => None,
        }
    }
}

pub struct GsdContext<'a> {
    pub graph: &'a WordNetGraph,
    pub bi: &'a HomogeneousBilingual,
    /// Primitive labels of dictionary senses, when available.
    pub labels: Option<&'a BTreeMap<SenseKey, SemanticTag>>,
}

pub trait GenusHeuristic: Send + Sync {
    fn name(&self) -> &'static str;

    /// Picks a sense number among `senses` (all senses of the genus word,
    /// never empty), or `None` when not decisive.
    fn choose(&self, ctx: &GsdContext<'_>, d: &Definition, senses: &[&Definition]) -> Option<u32>;
}

/// The genus word has a single candidate sense.
pub struct Monosemous;

impl GenusHeuristic for Monosemous {
    fn name(&self) -> &'static str {
        "MONOSEMOUS"
    }

    fn choose(&self, _: &GsdContext<'_>, _: &Definition, senses: &[&Definition]) -> Option<u32> {
        match senses {
            [only] => Some(only.sense_no),
            _ => None,
        }
    }
}

/// The sense whose own genus translates closest to the headword's
/// translations. Decisive only for a unique finite minimum.
pub struct ConceptualDistance;

impl GenusHeuristic for ConceptualDistance {
    fn name(&self) -> &'static str {
        "DISTANCE"
    }

    fn choose(&self, ctx: &GsdContext<'_>, d: &Definition, senses: &[&Definition]) -> Option<u32> {
        let synsets_of = |word: &str| -> Vec<SynsetId> {
            ctx.bi
                .translations(word)
                .into_iter()
                .flatten()
                .flat_map(|t| ctx.graph.synsets_of(t).map(|s| s.id.clone()))
                .collect()
        };
        let head = synsets_of(&d.headword);
        if head.is_empty() {
            return None;
        }
        let mut scored: Vec<(Distance, u32)> = senses
            .iter()
            .filter_map(|s| {
                let other = synsets_of(s.genus.as_deref()?);
                let found = ctx.graph.synset_distance(&head, &other);
                found.distance.is_finite().then_some((found.distance, s.sense_no))
            })
            .collect();
        scored.sort();
        match scored.as_slice() {
            [] => None,
            [(_, n)] => Some(*n),
            [(a, n), (b, _), ..] => (a < b).then_some(*n),
        }
    }
}

/// The lowest-numbered sense. Always decisive.
pub struct FirstSense;

impl GenusHeuristic for FirstSense {
    fn name(&self) -> &'static str {
        "FIRST_SENSE"
    }

    fn choose(&self, _: &GsdContext<'_>, _: &Definition, senses: &[&Definition]) -> Option<u32> {
        senses.iter().map(|s| s.sense_no).min()
    }
}

/// The only sense labelled with the definition's own primitive.
pub struct SameTag;

impl GenusHeuristic for SameTag {
    fn name(&self) -> &'static str {
        "SAME_TAG"
    }

    fn choose(&self, ctx: &GsdContext<'_>, d: &Definition, senses: &[&Definition]) -> Option<u32> {
        let labels = ctx.labels?;
        let own = labels.get(&d.key())?;
        let mut hits = senses.iter().filter(|s| labels.get(&s.key()) == Some(own));
        match (hits.next(), hits.next()) {
            (Some(s), None) => Some(s.sense_no),
            _ => None,
        }
    }
}

pub struct HeuristicChain(Vec<Box<dyn GenusHeuristic>>);

impl Default for HeuristicChain {
    /// MONOSEMOUS, DISTANCE, FIRST_SENSE.
    fn default() -> Self {
        HeuristicChain(vec![Box::new(Monosemous), Box::new(ConceptualDistance), Box::new(FirstSense)])
    }
}

impl HeuristicChain {
    pub fn new(heuristics: Vec<Box<dyn GenusHeuristic>>) -> Self {
        HeuristicChain(heuristics)
    }

    pub fn builtin(name: &str) -> Option<Box<dyn GenusHeuristic>> {
        Some(match name {
            "MONOSEMOUS" => Box::new(Monosemous),
            "DISTANCE" => Box::new(ConceptualDistance),
            "FIRST_SENSE" => Box::new(FirstSense),
            "SAME_TAG" => Box::new(SameTag),
            _ => return None,
        })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref().trim();
                Self::builtin(n).ok_or_else(|| Error::Config(format!("unknown genus heuristic `{n}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(HeuristicChain)
    }

    pub fn push(&mut self, h: Box<dyn GenusHeuristic>) {
        self.0.push(h);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|h| h.name()).collect()
    }
}

/// Resolves the genus of `d` to one dictionary sense. The definition
/// itself is never a candidate for its own genus.
pub fn disambiguate_genus(d: &Definition, dict: &Dictionary, ctx: &GsdContext<'_>, chain: &HeuristicChain) -> GenusResolution {
    let Some(genus) = &d.genus else {
        return GenusResolution::Unresolved;
    };
    let senses: Vec<&Definition> = dict
        .senses(genus)
        .iter()
        .filter(|s| s.key() != d.key())
        .collect();
    if senses.is_empty() {
        return GenusResolution::Unresolved;
    }
    for h in &chain.0 {
        if let Some(n) = h.choose(ctx, d, &senses) {
            return GenusResolution::Resolved {
                sense: (genus.clone(), n),
                heuristic: h.name().to_owned(),
            };
        }
    }
    GenusResolution::Unresolved
}
