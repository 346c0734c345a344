use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LinkCandidate;
use crate::bilingual::HomogeneousBilingual;
use crate::error::{Error, Result};
use crate::graph::{Distance, StructuralRelation, SynsetId, WordNetGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Dimension {
    Polysemy,
    Structural,
    Conceptual,
}

impl Dimension {
    pub fn name(self) -> &'static str {
        match self {
            Dimension::Polysemy => "POLYSEMY",
            Dimension::Structural => "STRUCTURAL",
            Dimension::Conceptual => "CONCEPTUAL",
        }
    }
}

impl FromStr for Dimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "POLYSEMY" => Ok(Dimension::Polysemy),
            "STRUCTURAL" => Ok(Dimension::Structural),
            "CONCEPTUAL" => Ok(Dimension::Conceptual),
            other => Err(format!("unknown class dimension `{other}`")),
        }
    }
}

/// The registered link classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassId {
    /// One translation, in one synset.
    MonoMono,
    /// One translation, in several synsets.
    MonoPoly,
    /// Several translations, each in one synset.
    MultiMono,
    /// Anything else with translations.
    MultiPoly,
    /// Two translations are lemmas of a common synset.
    SharedSynset,
    /// One translation is a direct hyponym of another.
    HyponymyPair,
    /// Two translations have sibling synsets.
    SiblingPair,
    /// Two translations are conceptually close.
    LowDistance,
}

impl ClassId {
    pub const ALL: [ClassId; 8] = [
        ClassId::MonoMono,
        ClassId::MonoPoly,
        ClassId::MultiMono,
        ClassId::MultiPoly,
        ClassId::SharedSynset,
        ClassId::HyponymyPair,
        ClassId::SiblingPair,
        ClassId::LowDistance,
    ];

    pub fn dimension(self) -> Dimension {
        match self {
            ClassId::MonoMono | ClassId::MonoPoly | ClassId::MultiMono | ClassId::MultiPoly => Dimension::Polysemy,
            ClassId::SharedSynset | ClassId::HyponymyPair | ClassId::SiblingPair => Dimension::Structural,
            ClassId::LowDistance => Dimension::Conceptual,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassId::MonoMono => "MONO_MONO",
            ClassId::MonoPoly => "MONO_POLY",
            ClassId::MultiMono => "MULTI_MONO",
            ClassId::MultiPoly => "MULTI_POLY",
            ClassId::SharedSynset => "SHARED_SYNSET",
            ClassId::HyponymyPair => "HYPONYMY_PAIR",
            ClassId::SiblingPair => "SIBLING_PAIR",
            ClassId::LowDistance => "LOW_DISTANCE",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown link class `{s}`"))
    }
}

fn translations<'a>(word: &str, bi: &'a HomogeneousBilingual) -> Result<&'a BTreeSet<String>> {
    bi.translations(word)
        .filter(|t| !t.is_empty())
        .ok_or_else(|| Error::NoTranslation(word.to_owned()))
}

fn indexed<'a>(word: &str, bi: &'a HomogeneousBilingual, g: &WordNetGraph) -> Vec<&'a str> {
    bi.translations(word)
        .into_iter()
        .flatten()
        .map(String::as_str)
        .filter(|t| g.is_indexed(t))
        .collect()
}

/// Unindexed translations count towards the number of translations but
/// not towards the mono/poly test.
pub fn classify_polysemy(word: &str, bi: &HomogeneousBilingual, g: &WordNetGraph) -> Result<ClassId> {
    let tr = translations(word, bi)?;
    let senses: Vec<usize> = tr.iter().map(|t| g.polysemy(t)).filter(|&n| n > 0).collect();
    Ok(match (tr.len(), senses.as_slice()) {
        (1, [1]) => ClassId::MonoMono,
        (1, [n]) if *n > 1 => ClassId::MonoPoly,
        (n, s) if n > 1 && !s.is_empty() && s.iter().all(|&k| k == 1) => ClassId::MultiMono,
        _ => ClassId::MultiPoly,
    })
}

/// Structural classes found among pairs of indexed translations.
pub fn classify_structural(word: &str, bi: &HomogeneousBilingual, g: &WordNetGraph) -> BTreeSet<ClassId> {
    let tr = indexed(word, bi, g);
    let mut out = BTreeSet::new();
    for (i, a) in tr.iter().enumerate() {
        for b in &tr[i + 1..] {
            for rel in g.structural_relation(a, b) {
                match rel {
                    StructuralRelation::SharedSynset => out.insert(ClassId::SharedSynset),
                    StructuralRelation::DirectHyponym | StructuralRelation::DirectHypernym => {
                        out.insert(ClassId::HyponymyPair)
                    }
                    StructuralRelation::Sibling => out.insert(ClassId::SiblingPair),
                    StructuralRelation::None => false,
                };
            }
        }
    }
    out
}

/// Closest pair of distinct indexed translations, ties going to the
/// smaller word pair.
fn closest_translations(word: &str, bi: &HomogeneousBilingual, g: &WordNetGraph) -> Option<(Distance, SynsetId, SynsetId)> {
    let tr = indexed(word, bi, g);
    let mut best: Option<(Distance, SynsetId, SynsetId)> = None;
    for (i, a) in tr.iter().enumerate() {
        for b in &tr[i + 1..] {
            let d = g.conceptual_distance(a, b);
            if let (Distance::Finite(_), Some((x, y))) = (&d.distance, d.pair) {
                if best.as_ref().is_none_or(|(bd, _, _)| d.distance < *bd) {
                    best = Some((d.distance, x, y));
                }
            }
        }
    }
    best
}

/// `LOW_DISTANCE` when some pair of translations is closer than
/// `threshold`.
pub fn classify_conceptual(word: &str, bi: &HomogeneousBilingual, g: &WordNetGraph, threshold: f64) -> Option<ClassId> {
    let (d, _, _) = closest_translations(word, bi, g)?;
    (d.to_f64() < threshold).then_some(ClassId::LowDistance)
}

/// Candidates proposed by one class for `word`, sorted by synset.
pub fn generate_candidates(word: &str, class: ClassId, bi: &HomogeneousBilingual, g: &WordNetGraph) -> Vec<LinkCandidate> {
    let tr = indexed(word, bi, g);
    let all_of = |ws: &[&str]| -> BTreeSet<SynsetId> { ws.iter().flat_map(|w| g.synsets_of(w).map(|s| s.id.clone())).collect() };
    let synsets: BTreeSet<SynsetId> = match class {
        ClassId::MonoMono | ClassId::MonoPoly | ClassId::MultiMono | ClassId::MultiPoly => all_of(&tr),
        ClassId::SharedSynset => {
            let mut out = BTreeSet::new();
            for (i, a) in tr.iter().enumerate() {
                for b in &tr[i + 1..] {
                    out.extend(
                        g.synsets_of(a)
                            .filter(|s| s.lemmas.iter().any(|l| l == b))
                            .map(|s| s.id.clone()),
                    );
                }
            }
            out
        }
        ClassId::HyponymyPair | ClassId::SiblingPair => {
            let mut out = BTreeSet::new();
            for (i, a) in tr.iter().enumerate() {
                for b in &tr[i + 1..] {
                    for x in g.synsets_of(a) {
                        for y in g.synsets_of(b) {
                            if x.id == y.id {
                                continue;
                            }
                            let hit = if class == ClassId::HyponymyPair {
                                x.hypernyms.contains(&y.id) || y.hypernyms.contains(&x.id)
                            } else {
                                x.hypernyms.iter().any(|h| y.hypernyms.contains(h))
                            };
                            if hit {
                                out.insert(x.id.clone());
                                out.insert(y.id.clone());
                            }
                        }
                    }
                }
            }
            out
        }
        ClassId::LowDistance => closest_translations(word, bi, g)
            .map(|(_, a, b)| BTreeSet::from([a, b]))
            .unwrap_or_default(),
    };
    synsets
        .into_iter()
        .map(|s| LinkCandidate::new(word, s, class))
        .collect()
}

/// Every class `word` falls in.
pub(crate) fn classes_of(word: &str, bi: &HomogeneousBilingual, g: &WordNetGraph, distance_threshold: f64) -> Result<BTreeSet<ClassId>> {
    let mut out = BTreeSet::from([classify_polysemy(word, bi, g)?]);
    out.extend(classify_structural(word, bi, g));
    out.extend(classify_conceptual(word, bi, g, distance_threshold));
    Ok(out)
}

/// Candidate sets of every class for `word`.
pub(crate) fn candidates_by_class(
    word: &str,
    bi: &HomogeneousBilingual,
    g: &WordNetGraph,
    distance_threshold: f64,
) -> Result<BTreeMap<ClassId, Vec<LinkCandidate>>> {
    Ok(classes_of(word, bi, g, distance_threshold)?
        .into_iter()
        .map(|c| (c, generate_candidates(word, c, bi, g)))
        .collect())
}
