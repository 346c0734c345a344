use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ClassId, Dimension, LinkCandidate};
use crate::error::{Error, Result};
use crate::graph::SynsetId;
use crate::text::records;

/// Slack used when comparing floating confidences against a threshold, so
/// that a class measured at exactly the threshold is accepted.
pub const SCORE_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassPrecision {
    pub precision: f64,
    pub sample_size: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Combiner {
    /// Supporting classes over registered classes.
    VoteCount,
    /// 1 - Π(1 - p) over supporting classes.
    #[default]
    NoisyOr,
}

impl FromStr for Combiner {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "VOTE_COUNT" => Ok(Combiner::VoteCount),
            "NOISY_OR" => Ok(Combiner::NoisyOr),
            _ => Err(format!("unknown combiner `{s}` (expected NOISY_OR or VOTE_COUNT)")),
        }
    }
}

/// Measured precision per class, and optionally per unordered class pair.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PrecisionTable {
    classes: BTreeMap<ClassId, ClassPrecision>,
    pairs: BTreeMap<(ClassId, ClassId), ClassPrecision>,
}

fn pair_key(a: ClassId, b: ClassId) -> (ClassId, ClassId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl PrecisionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// SYNTHETIC values for demos and the bundled fixture. They were not
    /// measured on any real resource.
    pub fn synthetic_default() -> Self {
        let mut t = Self::new();
        for (c, p) in [
            (ClassId::MonoMono, 0.92),
            (ClassId::MonoPoly, 0.60),
            (ClassId::MultiMono, 0.88),
            (ClassId::MultiPoly, 0.45),
            (ClassId::SharedSynset, 0.86),
            (ClassId::HyponymyPair, 0.70),
            (ClassId::SiblingPair, 0.55),
            (ClassId::LowDistance, 0.75),
        ] {
            t.set(c, p, 0);
        }
        t
    }

    pub fn set(&mut self, class: ClassId, precision: f64, sample_size: u64) -> &mut Self {
        self.classes.insert(class, ClassPrecision { precision, sample_size });
        self
    }

    pub fn set_pair(&mut self, a: ClassId, b: ClassId, precision: f64, sample_size: u64) -> &mut Self {
        self.pairs.insert(pair_key(a, b), ClassPrecision { precision, sample_size });
        self
    }

    pub fn get(&self, class: ClassId) -> Option<&ClassPrecision> {
        self.classes.get(&class)
    }

    pub fn get_pair(&self, a: ClassId, b: ClassId) -> Option<&ClassPrecision> {
        self.pairs.get(&pair_key(a, b))
    }

    pub fn registered(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> impl Iterator<Item = (ClassId, &ClassPrecision)> {
        self.classes.iter().map(|(c, p)| (*c, p))
    }

    /// `dimension \t class \t precision \t sample_size`; pair rows use the
    /// dimension `PAIR` and a `CLASS+CLASS` name.
    pub fn from_tsv(text: &str, source_name: &str) -> Result<Self> {
        let mut t = Self::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 4, 4)?;
            let err = |m: String| Error::parse(source_name, rec.line, m);
            let precision: f64 = rec
                .field(2)
                .parse()
                .map_err(|_| err(format!("bad precision `{}`", rec.field(2))))?;
            if !(0.0..=1.0).contains(&precision) {
                return Err(err(format!("precision {precision} outside [0, 1]")));
            }
            let sample_size: u64 = rec
                .field(3)
                .parse()
                .map_err(|_| err(format!("bad sample size `{}`", rec.field(3))))?;
            if rec.field(0) == "PAIR" {
                let (a, b) = rec
                    .field(1)
                    .split_once('+')
                    .ok_or_else(|| err("pair rows need a CLASS+CLASS name".into()))?;
                let a: ClassId = a.trim().parse().map_err(err)?;
                let b: ClassId = b.trim().parse().map_err(err)?;
                t.set_pair(a, b, precision, sample_size);
            } else {
                let dim: Dimension = rec.field(0).parse().map_err(err)?;
                let class: ClassId = rec.field(1).parse().map_err(err)?;
                if class.dimension() != dim {
                    return Err(err(format!("class {class} belongs to {}, not {}", class.dimension().name(), dim.name())));
                }
                t.set(class, precision, sample_size);
            }
        }
        Ok(t)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text, &path.display().to_string())
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# dimension\tclass\tprecision\tsample_size\n");
        for (c, p) in &self.classes {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", c.dimension().name(), c, p.precision, p.sample_size);
        }
        for ((a, b), p) in &self.pairs {
            let _ = writeln!(out, "PAIR\t{a}+{b}\t{}\t{}", p.precision, p.sample_size);
        }
        out
    }
}

/// Confidence of a candidate from its supporting classes. A measured pair
/// precision, when both members of the pair support the candidate, acts
/// as a floor.
pub fn score_candidate(c: &LinkCandidate, table: &PrecisionTable, combiner: Combiner) -> Result<f64> {
    let mut precisions = Vec::with_capacity(c.supporting_classes.len());
    for &class in &c.supporting_classes {
        let p = table
            .get(class)
            .ok_or_else(|| Error::Config(format!("no precision registered for class {class}")))?;
        precisions.push(p.precision);
    }
    let combined = match combiner {
        Combiner::NoisyOr => 1.0 - precisions.iter().map(|p| 1.0 - p).product::<f64>(),
        Combiner::VoteCount => precisions.len() as f64 / table.registered() as f64,
    };
    let classes: Vec<ClassId> = c.supporting_classes.iter().copied().collect();
    let mut best = combined;
    for (i, &a) in classes.iter().enumerate() {
        for &b in &classes[i + 1..] {
            if let Some(p) = table.get_pair(a, b) {
                best = best.max(p.precision);
            }
        }
    }
    Ok(best.clamp(0.0, 1.0))
}

/// Merges candidates on (word, synset), scores them, and returns the ones
/// reaching `threshold`, sorted by key.
pub fn accept_links<I>(candidates: I, table: &PrecisionTable, combiner: Combiner, threshold: f64) -> Result<Vec<LinkCandidate>>
where
    I: IntoIterator<Item = LinkCandidate>,
{
    let merged = merge_candidates(candidates);
    let mut out = Vec::new();
    for mut c in merged {
        c.confidence = score_candidate(&c, table, combiner)?;
        c.accepted = c.confidence + SCORE_EPSILON >= threshold;
        if c.accepted {
            out.push(c);
        }
    }
    Ok(out)
}

pub(crate) fn merge_candidates<I>(candidates: I) -> Vec<LinkCandidate>
where
    I: IntoIterator<Item = LinkCandidate>,
{
    let mut merged: BTreeMap<(String, SynsetId), BTreeSet<ClassId>> = BTreeMap::new();
    for c in candidates {
        merged
            .entry((c.word, c.synset))
            .or_default()
            .extend(c.supporting_classes);
    }
    merged
        .into_iter()
        .map(|((word, synset), supporting_classes)| LinkCandidate {
            word,
            synset,
            supporting_classes,
            confidence: 0.0,
            accepted: false,
        })
        .collect()
}
