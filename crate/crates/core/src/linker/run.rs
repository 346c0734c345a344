use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classes::candidates_by_class;
use super::precision::merge_candidates;
use super::{score_candidate, ClassId, Combiner, LinkCandidate, PrecisionTable, SCORE_EPSILON};
use crate::bilingual::HomogeneousBilingual;
use crate::error::Result;
use crate::graph::{SynsetId, WordNetGraph};

/// Candidates present in both sets, with their class support unioned.
/// The result is unscored.
pub fn intersect_classes(a: &[LinkCandidate], b: &[LinkCandidate]) -> Vec<LinkCandidate> {
    let in_b: BTreeMap<(&str, &SynsetId), &LinkCandidate> = b.iter().map(|c| (c.key(), c)).collect();
    let mut out: BTreeMap<(String, SynsetId), LinkCandidate> = BTreeMap::new();
    for c in a {
        if let Some(other) = in_b.get(&c.key()) {
            let entry = out
                .entry((c.word.clone(), c.synset.clone()))
                .or_insert_with(|| LinkCandidate {
                    confidence: 0.0,
                    accepted: false,
                    ..c.clone()
                });
            entry.supporting_classes.extend(c.supporting_classes.iter().copied());
            entry.supporting_classes.extend(other.supporting_classes.iter().copied());
        }
    }
    out.into_values().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkParams {
    /// Conceptual distance below which a word is `LOW_DISTANCE`.
    pub distance_threshold: f64,
    pub accept_threshold: f64,
    pub combiner: Combiner,
    /// Leave candidates already accepted by a single class out of the
    /// pairwise intersection statistics.
    pub exclude_accepted: bool,
}

impl Default for LinkParams {
    fn default() -> Self {
        LinkParams {
            distance_threshold: 1.0,
            accept_threshold: 0.85,
            combiner: Combiner::NoisyOr,
            exclude_accepted: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVolume {
    pub words: usize,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairStat {
    pub a: ClassId,
    pub b: ClassId,
    pub intersection: usize,
    pub accepted: usize,
}

#[derive(Debug, Clone, Default)]
pub struct LinkRun {
    pub words: usize,
    pub class_volumes: BTreeMap<ClassId, ClassVolume>,
    /// Every candidate, merged on (word, synset) and scored.
    pub candidates: Vec<LinkCandidate>,
    /// Keys accepted on the strength of one class alone.
    pub single_accepted: BTreeSet<(String, SynsetId)>,
    pub pair_stats: Vec<PairStat>,
    /// Keys accepted only through a pairwise intersection.
    pub intersection_accepted: BTreeSet<(String, SynsetId)>,
    /// The accepted set: candidates whose combined confidence reaches the
    /// threshold.
    pub accepted: Vec<LinkCandidate>,
}

impl LinkRun {
    /// Intersection-only acceptances relative to single-class ones.
    pub fn intersection_yield(&self) -> f64 {
        if self.single_accepted.is_empty() {
            0.0
        } else {
            self.intersection_accepted.len() as f64 / self.single_accepted.len() as f64
        }
    }
}

/// Classifies every word of the bilingual and gates the candidates.
pub fn link_all(bi: &HomogeneousBilingual, g: &WordNetGraph, table: &PrecisionTable, params: LinkParams) -> Result<LinkRun> {
    let words: Vec<&str> = bi.words().collect();
    let per_word: Vec<BTreeMap<ClassId, Vec<LinkCandidate>>> = words
        .par_iter()
        .map(|w| candidates_by_class(w, bi, g, params.distance_threshold))
        .collect::<Result<_>>()?;

    let mut run = LinkRun {
        words: words.len(),
        ..LinkRun::default()
    };
    let passes = |c: ClassId| -> Result<bool> {
        let single = LinkCandidate::new("", SynsetId::new(""), c);
        Ok(score_candidate(&single, table, params.combiner)? + SCORE_EPSILON >= params.accept_threshold)
    };

    let mut pair_counts: BTreeMap<(ClassId, ClassId), (usize, usize)> = BTreeMap::new();
    for by_class in &per_word {
        for (class, cands) in by_class {
            let v = run.class_volumes.entry(*class).or_default();
            v.words += 1;
            v.candidates += cands.len();
            if passes(*class)? {
                run.single_accepted
                    .extend(cands.iter().map(|c| (c.word.clone(), c.synset.clone())));
            }
        }
    }
    for by_class in &per_word {
        let classes: Vec<&ClassId> = by_class.keys().collect();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                let both = intersect_classes(&by_class[*a], &by_class[*b]);
                let counts = pair_counts.entry((**a, **b)).or_default();
                for mut c in both {
                    let key = (c.word.clone(), c.synset.clone());
                    if params.exclude_accepted && run.single_accepted.contains(&key) {
                        continue;
                    }
                    counts.0 += 1;
                    c.confidence = score_candidate(&c, table, params.combiner)?;
                    if c.confidence + SCORE_EPSILON >= params.accept_threshold {
                        counts.1 += 1;
                        if !run.single_accepted.contains(&key) {
                            run.intersection_accepted.insert(key);
                        }
                    }
                }
            }
        }
    }
    run.pair_stats = pair_counts
        .into_iter()
        .map(|((a, b), (intersection, accepted))| PairStat { a, b, intersection, accepted })
        .collect();

    let mut all = merge_candidates(per_word.into_iter().flat_map(|m| m.into_values().flatten()));
    for c in &mut all {
        c.confidence = score_candidate(c, table, params.combiner)?;
        c.accepted = c.confidence + SCORE_EPSILON >= params.accept_threshold;
    }
    run.accepted = all.iter().filter(|c| c.accepted).cloned().collect();
    run.candidates = all;
    Ok(run)
}
