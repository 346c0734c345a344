use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{enumerate_patterns, semfile_key, ConfidenceTable, LinkSet, PatternInstance};
use crate::bilingual::HomogeneousBilingual;
use crate::error::{Error, Result};
use crate::graph::{SynsetId, WordNetGraph};
use crate::linker::SCORE_EPSILON;
use crate::taxonomy::SenseTaxonomy;
use crate::text::{normalize, records};

/// Where a promotion's confidence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Config(u8),
    /// Two configurations agreeing on the same link, noisy-OR'd.
    Combined(u8, u8),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Config(c) => write!(f, "{c}"),
            Source::Combined(a, b) => write!(f, "{a}+{b}"),
        }
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |x: &str| {
            x.trim()
                .parse::<u8>()
                .ok()
                .filter(|c| (1..=8).contains(c))
                .ok_or_else(|| format!("bad configuration `{s}`"))
        };
        match s.split_once('+') {
            Some((a, b)) => Ok(Source::Combined(num(a)?, num(b)?)),
            None => Ok(Source::Config(num(s)?)),
        }
    }
}

impl Serialize for Source {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Source {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A B translation pair some instance would promote to a link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Promotion {
    pub word: String,
    pub synset: SynsetId,
    pub source: Source,
    pub confidence: f64,
    pub semfile: String,
}

/// Evidence from a configuration-1 instance over two existing A links.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Boost {
    pub hypo: (String, SynsetId),
    pub hyper: (String, SynsetId),
    pub confidence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InferredLink {
    pub word: String,
    pub synset: SynsetId,
    pub source: Source,
    pub confidence: f64,
    pub iteration: u32,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Inference {
    pub new: Vec<InferredLink>,
    pub boosts: Vec<Boost>,
}

fn semfile_of(g: &WordNetGraph, id: &SynsetId) -> String {
    g.synset(id.as_str()).map(|s| semfile_key(s.semfile.as_str())).unwrap_or_default()
}

/// Configuration 2 promotes the lower pair, 4 the upper one, 5 both.
/// Duplicates collapse to the highest confidence. Fails if any instance's
/// configuration has no confidence.
pub fn promotions(instances: &[PatternInstance], g: &WordNetGraph, table: &ConfidenceTable) -> Result<Vec<Promotion>> {
    let mut best: BTreeMap<(String, SynsetId, Source), Promotion> = BTreeMap::new();
    for inst in instances {
        table.get(inst.configuration, &semfile_of(g, &inst.en_hypo))?;
        let below = (&inst.sp_hypo.0, &inst.en_hypo);
        let above = (&inst.sp_hyper.0, &inst.en_hyper);
        let targets = match inst.configuration {
            2 => vec![below],
            4 => vec![above],
            5 => vec![below, above],
            _ => continue,
        };
        for (word, synset) in targets {
            let semfile = semfile_of(g, synset);
            let confidence = table.get(inst.configuration, &semfile)?;
            let source = Source::Config(inst.configuration);
            let slot = best.entry((word.clone(), synset.clone(), source)).or_insert_with(|| Promotion {
                word: word.clone(),
                synset: synset.clone(),
                source,
                confidence,
                semfile,
            });
            slot.confidence = slot.confidence.max(confidence);
        }
    }
    Ok(best.into_values().collect())
}

/// Links promoted by both a configuration-2 and a configuration-4 instance
/// get an extra combined promotion.
pub fn combine_patterns(promotions: &[Promotion]) -> Vec<Promotion> {
    let mut by_link: BTreeMap<(&str, &SynsetId), [Option<&Promotion>; 2]> = BTreeMap::new();
    for p in promotions {
        let slot = match p.source {
            Source::Config(2) => 0,
            Source::Config(4) => 1,
            _ => continue,
        };
        let e = by_link.entry((&p.word, &p.synset)).or_default();
        if e[slot].is_none_or(|q| q.confidence < p.confidence) {
            e[slot] = Some(p);
        }
    }
    by_link
        .into_values()
        .filter_map(|pair| match pair {
            [Some(two), Some(four)] => Some(Promotion {
                source: Source::Combined(2, 4),
                confidence: 1.0 - (1.0 - two.confidence) * (1.0 - four.confidence),
                ..two.clone()
            }),
            _ => None,
        })
        .collect()
}

/// New links at or above `threshold` that are not already in `a`, one per
/// (word, synset), plus configuration-1 boosts.
pub fn infer_links(
    instances: &[PatternInstance],
    g: &WordNetGraph,
    table: &ConfidenceTable,
    threshold: f64,
    a: &LinkSet,
    iteration: u32,
) -> Result<Inference> {
    let mut proms = promotions(instances, g, table)?;
    proms.extend(combine_patterns(&proms));

    let mut best: BTreeMap<(String, SynsetId), InferredLink> = BTreeMap::new();
    for p in proms {
        if p.confidence + SCORE_EPSILON < threshold {
            continue;
        }
        let key = (p.word, p.synset);
        if a.contains(&key) {
            continue;
        }
        let cand = InferredLink {
            word: key.0.clone(),
            synset: key.1.clone(),
            source: p.source,
            confidence: p.confidence,
            iteration,
        };
        match best.get(&key) {
            Some(cur) if (cur.confidence, std::cmp::Reverse(cur.source)) >= (cand.confidence, std::cmp::Reverse(cand.source)) => {}
            _ => {
                best.insert(key, cand);
            }
        }
    }

    let mut boosts = Vec::new();
    for inst in instances.iter().filter(|i| i.configuration == 1) {
        let confidence = table.get(1, &semfile_of(g, &inst.en_hypo))?;
        boosts.push(Boost {
            hypo: (inst.sp_hypo.0.clone(), inst.en_hypo.clone()),
            hyper: (inst.sp_hyper.0.clone(), inst.en_hyper.clone()),
            confidence,
        });
    }
    boosts.sort_by(|x, y| (&x.hypo, &x.hyper).cmp(&(&y.hypo, &y.hyper)));
    boosts.dedup_by(|x, y| x.hypo == y.hypo && x.hyper == y.hyper);

    Ok(Inference { new: best.into_values().collect(), boosts })
}

impl InferredLink {
    /// `word \t synset_id \t confidence \t configuration \t iteration`.
    pub fn write_tsv<'a>(rows: impl IntoIterator<Item = &'a InferredLink>) -> String {
        let mut out = String::from("# word\tsynset_id\tconfidence\tconfiguration\titeration\n");
        for l in rows {
            let _ = writeln!(out, "{}\t{}\t{:.6}\t{}\t{}", l.word, l.synset, l.confidence, l.source, l.iteration);
        }
        out
    }

    pub fn parse_tsv(text: &str, source_name: &str) -> Result<Vec<InferredLink>> {
        let mut out = Vec::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 5, 5)?;
            let bad = |what: &str| Error::parse(source_name, rec.line, format!("bad {what}"));
            out.push(InferredLink {
                word: normalize(rec.field(0)),
                synset: SynsetId::new(rec.field(1)),
                confidence: rec.field(2).parse().map_err(|_| bad("confidence"))?,
                source: rec.field(3).parse().map_err(|_| bad("configuration"))?,
                iteration: rec.field(4).parse().map_err(|_| bad("iteration"))?,
            });
        }
        Ok(out)
    }
}

pub struct BootstrapInput<'a> {
    pub taxonomies: &'a [SenseTaxonomy],
    pub graph: &'a WordNetGraph,
    pub bilingual: &'a HomogeneousBilingual,
    pub table: &'a ConfidenceTable,
    pub threshold: f64,
    pub max_path: usize,
    pub max_iters: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLedger {
    pub round: u32,
    pub instances: usize,
    /// semfile -> configuration -> instance count
    pub volumes: BTreeMap<String, BTreeMap<u8, usize>>,
    pub boosts: usize,
    pub added: usize,
    pub added_by_configuration: BTreeMap<String, usize>,
    pub added_by_semfile: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub rounds: Vec<RoundLedger>,
    /// The last round added nothing.
    pub fixpoint: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapRun {
    pub accepted: LinkSet,
    pub inferred: Vec<InferredLink>,
    pub ledger: Ledger,
}

/// Rounds of enumerate, infer, add until nothing new is accepted or
/// `max_iters` rounds have run. Each round sees the links of the last.
pub fn bootstrap(input: &BootstrapInput<'_>, initial: &LinkSet) -> Result<BootstrapRun> {
    if input.max_iters == 0 {
        return Err(Error::Config("max_iters must be at least 1".into()));
    }
    let g = input.graph;
    let mut accepted = initial.clone();
    let mut inferred = Vec::new();
    let mut ledger = Ledger::default();
    for round in 1..=input.max_iters {
        let instances = enumerate_patterns(input.taxonomies, g, &accepted, input.bilingual, input.max_path);
        let inf = infer_links(&instances, g, input.table, input.threshold, &accepted, round)?;

        let mut entry = RoundLedger {
            round,
            instances: instances.len(),
            boosts: inf.boosts.len(),
            added: inf.new.len(),
            ..Default::default()
        };
        for inst in &instances {
            *entry
                .volumes
                .entry(semfile_of(g, &inst.en_hypo))
                .or_default()
                .entry(inst.configuration)
                .or_default() += 1;
        }
        for l in &inf.new {
            *entry.added_by_configuration.entry(l.source.to_string()).or_default() += 1;
            *entry.added_by_semfile.entry(semfile_of(g, &l.synset)).or_default() += 1;
        }
        log::info!("merge round {round}: {} instances, {} new links", instances.len(), inf.new.len());
        ledger.rounds.push(entry);

        if inf.new.is_empty() {
            ledger.fixpoint = true;
            break;
        }
        accepted.extend(inf.new.iter().map(|l| (l.word.clone(), l.synset.clone())));
        inferred.extend(inf.new);
    }
    Ok(BootstrapRun { accepted, inferred, ledger })
}
