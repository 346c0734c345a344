use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::artifacts::*;
use super::{evaluate, load_gold_links, load_gold_tags, Evaluation, Inputs};
use crate::bilingual::HomogeneousBilingual;
use crate::error::{Error, Result};
use crate::graph::SynsetId;
use crate::linker::{ClassVolume, LinkCandidate, LinkRun};
use crate::merger::{InferredLink, Ledger};
use crate::semtag::TaggedDefinition;
use crate::taxonomy::SenseTaxonomy;
use crate::text::records;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRow {
    pub a: String,
    pub b: String,
    pub intersection: usize,
    pub accepted: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkReport {
    pub words: usize,
    pub candidates: usize,
    pub class_volumes: BTreeMap<String, ClassVolume>,
    pub single_accepted: usize,
    pub pairs: Vec<PairRow>,
    pub intersection_accepted: usize,
    pub intersection_yield: f64,
    pub accepted: usize,
}

impl LinkReport {
    pub fn from_run(run: &LinkRun) -> Self {
        LinkReport {
            words: run.words,
            candidates: run.candidates.len(),
            class_volumes: run.class_volumes.iter().map(|(c, v)| (c.name().to_owned(), v.clone())).collect(),
            single_accepted: run.single_accepted.len(),
            pairs: run
                .pair_stats
                .iter()
                .map(|p| PairRow { a: p.a.name().into(), b: p.b.name().into(), intersection: p.intersection, accepted: p.accepted })
                .collect(),
            intersection_accepted: run.intersection_accepted.len(),
            intersection_yield: run.intersection_yield(),
            accepted: run.accepted.len(),
        }
    }
}

/// Words, synsets and word-synset connections.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Volumes {
    pub words: usize,
    pub synsets: usize,
    pub connections: usize,
}

impl Volumes {
    pub fn of(links: &BTreeSet<(String, SynsetId)>) -> Self {
        Volumes {
            words: links.iter().map(|(w, _)| w).collect::<BTreeSet<_>>().len(),
            synsets: links.iter().map(|(_, s)| s).collect::<BTreeSet<_>>().len(),
            connections: links.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyCounts {
    pub tag: String,
    pub nodes: usize,
    pub edges: usize,
    pub roots: usize,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scored {
    #[serde(flatten)]
    pub counts: Evaluation,
    pub precision: String,
    pub coverage: String,
}

impl From<Evaluation> for Scored {
    fn from(e: Evaluation) -> Self {
        Scored { precision: e.precision_str(), coverage: e.coverage_str(), counts: e }
    }
}

/// Counts recomputed from the artifacts on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuildReport {
    pub bilingual_words: Option<usize>,
    pub bilingual_pairs: Option<usize>,
    pub linked: Volumes,
    pub class_volumes: BTreeMap<String, ClassVolume>,
    pub seeds: Option<usize>,
    pub labels: Option<usize>,
    pub tops: Option<usize>,
    pub taxonomies: Vec<TaxonomyCounts>,
    pub inferred: Option<usize>,
    pub merge_rounds: Option<usize>,
    /// Linked plus inferred.
    pub merged: Volumes,
    pub link_accuracy: Option<Scored>,
    pub tag_accuracy: Option<Scored>,
}

fn read_opt(dir: &Path, name: &str) -> Result<Option<(String, String)>> {
    let path = dir.join(name);
    if !path.is_file() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok(Some((text, path.display().to_string())))
}

impl BuildReport {
    /// Needs at least `links.tsv`; everything else is counted if present.
    pub fn recount(dir: &Path, inputs: &Inputs) -> Result<Self> {
        let Some((links_text, links_src)) = read_opt(dir, LINKS)? else {
            return Err(Error::Dependency {
                stage: "report".into(),
                artifact: dir.join(LINKS),
                producer: "link".into(),
            });
        };
        let linked: BTreeSet<(String, SynsetId)> = LinkCandidate::parse_tsv(&links_text, &links_src)?
            .into_iter()
            .map(|c| (c.word, c.synset))
            .collect();

        let bi = read_opt(dir, HOMOGENEOUS)?
            .map(|(t, s)| HomogeneousBilingual::from_tsv(&t, &s))
            .transpose()?;
        let class_volumes = match read_opt(dir, LINK_REPORT)? {
            Some((t, _)) => serde_json::from_str::<LinkReport>(&t)?.class_volumes,
            None => BTreeMap::new(),
        };
        let tagged = |name| -> Result<Option<Vec<TaggedDefinition>>> {
            read_opt(dir, name)?.map(|(t, s)| TaggedDefinition::parse_tsv(&t, &s)).transpose()
        };
        let seeds = tagged(SEEDS)?;
        let labels = tagged(LABELS)?;
        let tops = read_opt(dir, TOPS)?.map(|(t, _)| records(&t).count());
        let taxonomies = match read_opt(dir, TAXONOMY)? {
            Some((t, s)) => SenseTaxonomy::parse_tsv(&t, &s)?
                .iter()
                .map(|t| TaxonomyCounts {
                    tag: t.primitive.to_string(),
                    nodes: t.len(),
                    edges: t.parents.len(),
                    roots: t.roots().count(),
                    height: t.height(),
                })
                .collect(),
            None => Vec::new(),
        };
        let inferred = read_opt(dir, INFERRED)?
            .map(|(t, s)| InferredLink::parse_tsv(&t, &s))
            .transpose()?;
        let merge_rounds = match read_opt(dir, LEDGER)? {
            Some((t, _)) => Some(serde_json::from_str::<Ledger>(&t)?.rounds.len()),
            None => None,
        };

        let mut merged = linked.clone();
        merged.extend(inferred.iter().flatten().map(|l| (l.word.clone(), l.synset.clone())));

        let link_accuracy = match &inputs.gold_links {
            Some(p) => Some(evaluate(&merged, &load_gold_links(p)?)?.into()),
            None => None,
        };
        let tag_accuracy = match (&inputs.gold_tags, &labels) {
            (Some(p), Some(labels)) => {
                let emitted = labels.iter().map(|l| (l.key(), l.tag.clone())).collect();
                Some(evaluate(&emitted, &load_gold_tags(p)?)?.into())
            }
            _ => None,
        };

        Ok(BuildReport {
            bilingual_words: bi.as_ref().map(HomogeneousBilingual::len),
            bilingual_pairs: bi.as_ref().map(HomogeneousBilingual::pair_count),
            linked: Volumes::of(&linked),
            class_volumes,
            seeds: seeds.map(|s| s.len()),
            labels: labels.as_ref().map(Vec::len),
            tops,
            taxonomies,
            inferred: inferred.map(|i| i.len()),
            merge_rounds,
            merged: Volumes::of(&merged),
            link_accuracy,
            tag_accuracy,
        })
    }

    pub fn to_text(&self) -> String {
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_owned(), |n| n.to_string());
        let mut out = String::new();
        let _ = writeln!(out, "bilingual         words {}  pairs {}", opt(self.bilingual_words), opt(self.bilingual_pairs));
        let v = |v: &Volumes| format!("words {}  synsets {}  connections {}", v.words, v.synsets, v.connections);
        let _ = writeln!(out, "linked            {}", v(&self.linked));
        for (class, vol) in &self.class_volumes {
            let _ = writeln!(out, "  {class:<15} words {}  candidates {}", vol.words, vol.candidates);
        }
        let _ = writeln!(out, "seed tags         {}", opt(self.seeds));
        let _ = writeln!(out, "labels            {}", opt(self.labels));
        let _ = writeln!(out, "top beginners     {}", opt(self.tops));
        for t in &self.taxonomies {
            let _ = writeln!(out, "  taxonomy {:<8} nodes {}  edges {}  roots {}  height {}", t.tag, t.nodes, t.edges, t.roots, t.height);
        }
        let _ = writeln!(out, "inferred          {}  rounds {}", opt(self.inferred), opt(self.merge_rounds));
        let _ = writeln!(out, "merged            {}", v(&self.merged));
        if let Some(a) = &self.link_accuracy {
            let _ = writeln!(out, "links vs gold     {}", a.counts);
        }
        if let Some(a) = &self.tag_accuracy {
            let _ = writeln!(out, "tags vs gold      {}", a.counts);
        }
        out
    }
}
