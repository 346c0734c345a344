//! Association-ratio training and evidence-sum relabelling.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::{Definition, Method, SemanticTag, TaggedDefinition};
use crate::error::{Error, Result};
use crate::text::{records, Stoplist};

/// Salient words per semantic class, with the token counts they were
/// computed from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SalientLexicon {
    scores: BTreeMap<String, BTreeMap<SemanticTag, f64>>,
    class_counts: BTreeMap<SemanticTag, BTreeMap<String, u64>>,
    class_tokens: BTreeMap<SemanticTag, u64>,
    word_counts: BTreeMap<String, u64>,
    total_tokens: u64,
}

/// Content-token counts per class over a tagged corpus.
///
/// AR(w, SC) = Pr(w|SC) · log2(Pr(w|SC) / Pr(w)), with both probabilities
/// taken as raw relative frequencies of content tokens. Only strictly
/// positive scores are kept.
pub fn train_salient(corpus: &[TaggedDefinition], stoplist: &Stoplist) -> SalientLexicon {
    let class_counts = corpus
        .par_iter()
        .map(|t| {
            let mut m: BTreeMap<SemanticTag, BTreeMap<String, u64>> = BTreeMap::new();
            let counts = m.entry(t.tag.clone()).or_default();
            for tok in t.definition.content_tokens(stoplist) {
                *counts.entry(tok.to_owned()).or_default() += 1;
            }
            m
        })
        .reduce(BTreeMap::new, merge_counts);

    let mut lex = SalientLexicon::default();
    for (tag, words) in &class_counts {
        let n: u64 = words.values().sum();
        lex.class_tokens.insert(tag.clone(), n);
        lex.total_tokens += n;
        for (w, &c) in words {
            *lex.word_counts.entry(w.clone()).or_default() += c;
        }
    }
    for (tag, words) in &class_counts {
        let n_class = lex.class_tokens[tag] as f64;
        for (w, &c) in words {
            let p_wc = c as f64 / n_class;
            let p_w = lex.word_counts[w] as f64 / lex.total_tokens as f64;
            let ar = p_wc * (p_wc / p_w).log2();
            if ar > 0.0 {
                lex.scores.entry(w.clone()).or_default().insert(tag.clone(), ar);
            }
        }
    }
    lex.class_counts = class_counts;
    lex
}

fn merge_counts(
    mut a: BTreeMap<SemanticTag, BTreeMap<String, u64>>,
    b: BTreeMap<SemanticTag, BTreeMap<String, u64>>,
) -> BTreeMap<SemanticTag, BTreeMap<String, u64>> {
    for (tag, words) in b {
        let dst = a.entry(tag).or_default();
        for (w, c) in words {
            *dst.entry(w).or_default() += c;
        }
    }
    a
}

impl SalientLexicon {
    pub fn ar(&self, word: &str, tag: &SemanticTag) -> Option<f64> {
        self.scores.get(word).and_then(|m| m.get(tag)).copied()
    }

    /// Classes for which `word` is salient.
    pub fn classes_of(&self, word: &str) -> impl Iterator<Item = (&SemanticTag, f64)> {
        self.scores.get(word).into_iter().flatten().map(|(t, &v)| (t, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &SemanticTag, f64)> {
        self.scores
            .iter()
            .flat_map(|(w, m)| m.iter().map(move |(t, &v)| (w.as_str(), t, v)))
    }

    pub fn len(&self) -> usize {
        self.scores.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn tags(&self) -> impl Iterator<Item = &SemanticTag> {
        self.class_tokens.keys()
    }

    pub fn class_tokens(&self, tag: &SemanticTag) -> u64 {
        self.class_tokens.get(tag).copied().unwrap_or(0)
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn count(&self, word: &str, tag: &SemanticTag) -> u64 {
        self.class_counts
            .get(tag)
            .and_then(|m| m.get(word))
            .copied()
            .unwrap_or(0)
    }

    pub fn word_count(&self, word: &str) -> u64 {
        self.word_counts.get(word).copied().unwrap_or(0)
    }

    /// Salience times local frequency.
    pub fn relevance(&self, word: &str, tag: &SemanticTag) -> Option<f64> {
        self.ar(word, tag).map(|ar| ar * self.count(word, tag) as f64)
    }

    /// Salient words of one class by decreasing relevance, then word.
    pub fn ranked(&self, tag: &SemanticTag) -> Vec<(&str, f64, f64)> {
        let mut v: Vec<(&str, f64, f64)> = self
            .entries()
            .filter(|(_, t, _)| *t == tag)
            .map(|(w, t, ar)| (w, ar, ar * self.count(w, t) as f64))
            .collect();
        v.sort_by(|a, b| b.2.total_cmp(&a.2).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// Removes every entry not accepted by `keep`. Counts are untouched.
    pub fn retain(&mut self, mut keep: impl FnMut(&str, &SemanticTag) -> bool) {
        for (w, m) in self.scores.iter_mut() {
            m.retain(|t, _| keep(w, t));
        }
        self.scores.retain(|_, m| !m.is_empty());
    }

    /// Salient entries as `word \t tag \t ar \t count \t relevance`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# word\ttag\tar\tlocal_count\trelevance\n");
        for (w, t, ar) in self.entries() {
            let c = self.count(w, t);
            let _ = writeln!(out, "{w}\t{t}\t{ar}\t{c}\t{}", ar * c as f64);
        }
        out
    }

    /// Per-class content-token totals as `tag \t tokens`.
    pub fn class_totals_tsv(&self) -> String {
        let mut out = String::from("# tag\ttokens\n");
        for (t, n) in &self.class_tokens {
            let _ = writeln!(out, "{t}\t{n}");
        }
        out
    }

    /// Rebuilds a lexicon from [`to_tsv`](Self::to_tsv) and
    /// [`class_totals_tsv`](Self::class_totals_tsv) output. Counts of
    /// non-salient words are not part of that output.
    pub fn from_tsv(entries: &str, class_totals: &str, source_name: &str) -> Result<Self> {
        let mut lex = SalientLexicon::default();
        for rec in records(class_totals) {
            rec.expect_columns(source_name, 2, 2)?;
            let n: u64 = rec
                .field(1)
                .parse()
                .map_err(|_| Error::parse(source_name, rec.line, "bad token count"))?;
            lex.class_tokens.insert(SemanticTag::new(rec.field(0)), n);
            lex.total_tokens += n;
        }
        for rec in records(entries) {
            rec.expect_columns(source_name, 4, 5)?;
            let ar: f64 = rec
                .field(2)
                .parse()
                .map_err(|_| Error::parse(source_name, rec.line, "bad association ratio"))?;
            if !(ar > 0.0 && ar.is_finite()) {
                return Err(Error::parse(source_name, rec.line, "association ratio must be positive"));
            }
            let c: u64 = rec
                .field(3)
                .parse()
                .map_err(|_| Error::parse(source_name, rec.line, "bad count"))?;
            let tag = SemanticTag::new(rec.field(1));
            let w = rec.field(0).to_owned();
            lex.scores.entry(w.clone()).or_default().insert(tag.clone(), ar);
            lex.class_counts.entry(tag).or_default().insert(w.clone(), c);
            *lex.word_counts.entry(w).or_default() += c;
        }
        Ok(lex)
    }
}

/// Labels each definition with the class whose summed association ratio
/// over the definition's content tokens is largest. Definitions without any
/// salient token are left out. Ties are flagged and go to the class with
/// more training tokens, then the smaller tag.
pub fn label_definitions(defs: &[Definition], lex: &SalientLexicon, stoplist: &Stoplist) -> Vec<TaggedDefinition> {
    defs.par_iter()
        .filter_map(|d| label_one(d, lex, stoplist))
        .collect()
}

fn label_one(d: &Definition, lex: &SalientLexicon, stoplist: &Stoplist) -> Option<TaggedDefinition> {
    let mut weights: BTreeMap<&SemanticTag, f64> = BTreeMap::new();
    for tok in d.content_tokens(stoplist) {
        for (tag, ar) in lex.classes_of(tok) {
            *weights.entry(tag).or_default() += ar;
        }
    }
    let best = weights.values().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(best > 0.0) {
        return None;
    }
    let winners: Vec<&SemanticTag> = weights
        .iter()
        .filter(|(_, &w)| w == best)
        .map(|(t, _)| *t)
        .collect();
    let tag = winners
        .iter()
        .copied()
        .min_by(|a, b| {
            lex.class_tokens(b)
                .cmp(&lex.class_tokens(a))
                .then_with(|| a.cmp(b))
        })
        .expect("at least one winner");
    Some(TaggedDefinition {
        definition: d.clone(),
        tag: tag.clone(),
        score: best,
        method: Method::Salient,
        ambiguous: winners.len() > 1,
    })
}
