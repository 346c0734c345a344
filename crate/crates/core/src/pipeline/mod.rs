//! Stage-by-stage driver over plain TSV/JSON artifacts in one output
//! directory. Each stage reads its inputs from the run configuration or
//! from files an earlier stage wrote.

mod config;
mod evaluate;
mod report;

pub use config::{Inputs, MergeParams, RunConfig, TaxonomyParams};
pub use evaluate::{evaluate, load_gold_links, load_gold_tags, Evaluation};
pub use report::{BuildReport, LinkReport, TaxonomyCounts, Volumes};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bilingual::{load_directed, HomogeneousBilingual};
use crate::error::{Error, Result};
use crate::graph::WordNetGraph;
use crate::linker::{link_all, LinkCandidate, PrecisionTable};
use crate::merger::{bootstrap, BootstrapInput, ConfidenceTable, InferredLink, LinkSet};
use crate::semtag::{
    label_definitions, tag_seed_by_distance, train_salient, Dictionary, Primitives, SalientLexicon, SemanticTag, SenseKey,
    TaggedDefinition,
};
use crate::taxonomy::{
    build_taxonomy, collect_genus, disambiguate_genus, select_top_beginners, structure_tops, top_senses, FilterContext,
    GenusIndex, GenusResolution, GsdContext, ResolvedSense, SenseTaxonomy,
};
use crate::text::{records, Stoplist};

/// File names inside the output directory.
pub mod artifacts {
    pub const HOMOGENEOUS: &str = "homogeneous.tsv";
    pub const LINKS: &str = "links.tsv";
    pub const LINK_REPORT: &str = "link_report.json";
    pub const SEEDS: &str = "seed_tags.tsv";
    pub const SALIENT: &str = "salient.tsv";
    pub const CLASS_TOTALS: &str = "class_totals.tsv";
    pub const LABELS: &str = "labels.tsv";
    pub const TOPS: &str = "tops.tsv";
    pub const TAXONOMY: &str = "taxonomy.tsv";
    pub const GENUS: &str = "genus_resolution.tsv";
    pub const INFERRED: &str = "inferred.tsv";
    pub const LEDGER: &str = "ledger.json";
    pub const REPORT_TXT: &str = "report.txt";
    pub const REPORT_JSON: &str = "report.json";
}

use artifacts::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    MergeBilinguals,
    Link,
    SeedTag,
    TrainSalient,
    Label,
    TopBeginners,
    BuildTaxonomy,
    Merge,
    Report,
}

impl Stage {
    pub const ALL: [Stage; 9] = [
        Stage::MergeBilinguals,
        Stage::Link,
        Stage::SeedTag,
        Stage::TrainSalient,
        Stage::Label,
        Stage::TopBeginners,
        Stage::BuildTaxonomy,
        Stage::Merge,
        Stage::Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::MergeBilinguals => "merge-bilinguals",
            Stage::Link => "link",
            Stage::SeedTag => "seed-tag",
            Stage::TrainSalient => "train-salient",
            Stage::Label => "label",
            Stage::TopBeginners => "top-beginners",
            Stage::BuildTaxonomy => "build-taxonomy",
            Stage::Merge => "merge",
            Stage::Report => "report",
        }
    }

    /// Stage that writes `artifact`.
    pub fn producer_of(artifact: &str) -> Option<Stage> {
        Some(match artifact {
            HOMOGENEOUS => Stage::MergeBilinguals,
            LINKS | LINK_REPORT => Stage::Link,
            SEEDS => Stage::SeedTag,
            SALIENT | CLASS_TOTALS => Stage::TrainSalient,
            LABELS => Stage::Label,
            TOPS => Stage::TopBeginners,
            TAXONOMY | GENUS => Stage::BuildTaxonomy,
            INFERRED | LEDGER => Stage::Merge,
            REPORT_TXT | REPORT_JSON => Stage::Report,
            _ => return None,
        })
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown stage `{s}`")))
    }
}

/// What one stage wrote.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub stage: String,
    pub artifacts: Vec<String>,
    pub counts: BTreeMap<String, usize>,
}

impl fmt::Display for StageSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.stage)?;
        for (k, v) in &self.counts {
            write!(f, " {k}={v}")?;
        }
        write!(f, " -> {}", self.artifacts.join(", "))
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    stage: Stage,
    written: Vec<String>,
    counts: BTreeMap<String, usize>,
}

impl<'a> Ctx<'a> {
    fn input(&self, path: &'a Option<PathBuf>, key: &str) -> Result<&'a Path> {
        path.as_deref()
            .ok_or_else(|| Error::Config(format!("stage `{}` needs inputs.{key}", self.stage)))
    }

    /// An artifact an earlier stage must have written.
    fn artifact(&self, name: &str) -> Result<PathBuf> {
        let path = self.cfg.out.join(name);
        if path.is_file() {
            Ok(path)
        } else {
            Err(Error::Dependency {
                stage: self.stage.name().to_owned(),
                artifact: path,
                producer: Stage::producer_of(name).map_or("?", Stage::name).to_owned(),
            })
        }
    }

    fn read_artifact(&self, name: &str) -> Result<(String, String)> {
        let path = self.artifact(name)?;
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok((text, path.display().to_string()))
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        std::fs::create_dir_all(&self.cfg.out).map_err(|e| Error::io(&self.cfg.out, e))?;
        let path = self.cfg.out.join(name);
        std::fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        self.written.push(name.to_owned());
        Ok(())
    }

    fn count(&mut self, key: &str, n: usize) {
        self.counts.insert(key.to_owned(), n);
    }

    fn graph(&self) -> Result<WordNetGraph> {
        WordNetGraph::load(self.input(&self.cfg.inputs.wordnet, "wordnet")?)
    }

    fn bilingual(&self) -> Result<HomogeneousBilingual> {
        let (text, name) = self.read_artifact(HOMOGENEOUS)?;
        HomogeneousBilingual::from_tsv(&text, &name)
    }

    fn stoplist(&self) -> Result<Stoplist> {
        match &self.cfg.inputs.stoplist {
            Some(p) => Ok(Stoplist::parse(&std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?)),
            None => Ok(Stoplist::default()),
        }
    }

    fn dictionary(&self, stoplist: &Stoplist) -> Result<Dictionary> {
        Ok(Dictionary::load(self.input(&self.cfg.inputs.monolingual, "monolingual")?)?.with_extracted_genus(stoplist))
    }

    fn primitives(&self) -> Result<Primitives> {
        let p = Primitives::from_semfiles();
        match &self.cfg.inputs.primitives {
            Some(path) => p.load_overrides(path),
            None => Ok(p),
        }
    }

    fn tagged(&self, name: &str) -> Result<Vec<TaggedDefinition>> {
        let (text, src) = self.read_artifact(name)?;
        TaggedDefinition::parse_tsv(&text, &src)
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Runs one stage. Outputs are fully written before this returns.
pub fn run_stage(stage: Stage, cfg: &RunConfig) -> Result<StageSummary> {
    cfg.validate()?;
    let mut ctx = Ctx { cfg, stage, written: Vec::new(), counts: BTreeMap::new() };
    match stage {
        Stage::MergeBilinguals => merge_bilinguals(&mut ctx)?,
        Stage::Link => link(&mut ctx)?,
        Stage::SeedTag => seed_tag(&mut ctx)?,
        Stage::TrainSalient => train(&mut ctx)?,
        Stage::Label => label(&mut ctx)?,
        Stage::TopBeginners => tops(&mut ctx)?,
        Stage::BuildTaxonomy => taxonomy(&mut ctx)?,
        Stage::Merge => merge(&mut ctx)?,
        Stage::Report => report(&mut ctx)?,
    }
    let summary = StageSummary { stage: stage.name().to_owned(), artifacts: ctx.written, counts: ctx.counts };
    log::info!("{summary}");
    Ok(summary)
}

/// Every stage in order.
pub fn run_all(cfg: &RunConfig) -> Result<Vec<StageSummary>> {
    Stage::ALL.into_iter().map(|s| run_stage(s, cfg)).collect()
}

fn merge_bilinguals(ctx: &mut Ctx<'_>) -> Result<()> {
    let paths = &ctx.cfg.inputs.bilinguals;
    if paths.is_empty() {
        return Err(Error::Config("stage `merge-bilinguals` needs inputs.bilinguals".into()));
    }
    let maps = paths
        .iter()
        .map(|p| Ok(HomogeneousBilingual::merge_directions(load_directed(p)?)))
        .collect::<Result<Vec<_>>>()?;
    let bi = HomogeneousBilingual::merge_bilinguals(&maps);
    ctx.count("dictionaries", maps.len());
    ctx.count("words", bi.len());
    ctx.count("pairs", bi.pair_count());
    ctx.write(HOMOGENEOUS, &bi.to_tsv())
}

fn link(ctx: &mut Ctx<'_>) -> Result<()> {
    let bi = ctx.bilingual()?;
    let g = ctx.graph()?;
    let table = match &ctx.cfg.inputs.precision {
        Some(p) => PrecisionTable::load(p)?,
        None => {
            log::warn!("no precision table configured; using the synthetic default");
            PrecisionTable::synthetic_default()
        }
    };
    let run = link_all(&bi, &g, &table, ctx.cfg.link)?;
    let report = LinkReport::from_run(&run);
    ctx.count("candidates", run.candidates.len());
    ctx.count("accepted", run.accepted.len());
    ctx.write(LINKS, &LinkCandidate::write_tsv(&run.accepted))?;
    ctx.write(LINK_REPORT, &json(&report)?)
}

fn seed_tag(ctx: &mut Ctx<'_>) -> Result<()> {
    let bi = ctx.bilingual()?;
    let g = ctx.graph()?;
    let stop = ctx.stoplist()?;
    let dict = ctx.dictionary(&stop)?;
    let seeds = tag_seed_by_distance(dict.definitions(), &bi, &g, &ctx.primitives()?, &stop);
    ctx.count("definitions", dict.len());
    ctx.count("seeds", seeds.len());
    ctx.write(SEEDS, &TaggedDefinition::write_tsv(&seeds))
}

fn train(ctx: &mut Ctx<'_>) -> Result<()> {
    let seeds = ctx.tagged(SEEDS)?;
    let lex = train_salient(&seeds, &ctx.stoplist()?);
    ctx.count("salient", lex.len());
    ctx.write(SALIENT, &lex.to_tsv())?;
    ctx.write(CLASS_TOTALS, &lex.class_totals_tsv())
}

fn label(ctx: &mut Ctx<'_>) -> Result<()> {
    let (entries, src) = ctx.read_artifact(SALIENT)?;
    let (totals, _) = ctx.read_artifact(CLASS_TOTALS)?;
    let lex = SalientLexicon::from_tsv(&entries, &totals, &src)?;
    let stop = ctx.stoplist()?;
    let dict = ctx.dictionary(&stop)?;
    let labels = label_definitions(dict.definitions(), &lex, &stop);
    ctx.count("labels", labels.len());
    ctx.count("ambiguous", labels.iter().filter(|l| l.ambiguous).count());
    ctx.write(LABELS, &TaggedDefinition::write_tsv(&labels))
}

fn tags_of(labels: &[TaggedDefinition]) -> BTreeSet<SemanticTag> {
    labels.iter().map(|l| l.tag.clone()).collect()
}

fn tops(ctx: &mut Ctx<'_>) -> Result<()> {
    let labels = ctx.tagged(LABELS)?;
    let bi = ctx.bilingual()?;
    let g = ctx.graph()?;
    let primitives = ctx.primitives()?;
    let spec = ctx.cfg.filter_spec()?;
    let index = GenusIndex::from_tagged(&labels);
    let fctx = FilterContext { bi: &bi, graph: &g, primitives: &primitives, index: &index };
    let mut out = String::from("# tag\tgenus\tcount\n");
    let mut n = 0;
    for tag in tags_of(&labels) {
        let counts = collect_genus(&labels, &tag);
        for word in select_top_beginners(&labels, &tag, &spec, &fctx) {
            let _ = writeln!(out, "{tag}\t{word}\t{}", counts.count(&word));
            n += 1;
        }
    }
    ctx.count("tops", n);
    ctx.write(TOPS, &out)
}

fn read_tops(text: &str, src: &str) -> Result<BTreeMap<SemanticTag, BTreeSet<String>>> {
    let mut out: BTreeMap<SemanticTag, BTreeSet<String>> = BTreeMap::new();
    for rec in records(text) {
        rec.expect_columns(src, 3, 3)?;
        out.entry(SemanticTag::new(rec.field(0))).or_default().insert(rec.field(1).to_owned());
    }
    Ok(out)
}

fn taxonomy(ctx: &mut Ctx<'_>) -> Result<()> {
    let labels = ctx.tagged(LABELS)?;
    let (tops_text, tops_src) = ctx.read_artifact(TOPS)?;
    let top_words = read_tops(&tops_text, &tops_src)?;
    let bi = ctx.bilingual()?;
    let g = ctx.graph()?;
    let stop = ctx.stoplist()?;
    let dict = ctx.dictionary(&stop)?;
    let chain = ctx.cfg.heuristic_chain()?;

    let label_map: BTreeMap<SenseKey, SemanticTag> = labels.iter().map(|l| (l.key(), l.tag.clone())).collect();
    let gsd = GsdContext { graph: &g, bi: &bi, labels: Some(&label_map) };
    let senses: Vec<ResolvedSense> = labels
        .par_iter()
        .map(|l| ResolvedSense {
            key: l.key(),
            tag: l.tag.clone(),
            genus: disambiguate_genus(&l.definition, &dict, &gsd, &chain),
        })
        .collect();

    let empty = BTreeSet::new();
    let mut taxonomies = Vec::new();
    for tag in tags_of(&labels) {
        let weights = collect_genus(&labels, &tag);
        let tops = top_senses(top_words.get(&tag).unwrap_or(&empty), &senses, &tag);
        let structure = structure_tops(&tops, &senses, &weights);
        taxonomies.push(build_taxonomy(&tag, &structure, &senses, &weights));
    }

    let mut tax_out = String::from("# tag\theadword\tsense_no\tparent_headword\tparent_sense_no\n");
    for t in &taxonomies {
        t.write_tsv(&mut tax_out);
    }
    let placement = |s: &ResolvedSense| {
        let Some(t) = taxonomies.iter().find(|t| t.primitive == s.tag) else {
            return "EXCLUDED";
        };
        if t.tops.contains(&s.key) {
            "TOP"
        } else if t.root_attached.contains(&s.key) {
            "ROOT"
        } else if t.nodes.contains(&s.key) {
            "CHILD"
        } else {
            "EXCLUDED"
        }
    };
    let mut gsd_out = String::from("# headword\tsense_no\ttag\tgenus\tgenus_sense\theuristic\tplacement\n");
    let mut unresolved = 0;
    for s in &senses {
        let genus = labels
            .iter()
            .find(|l| l.key() == s.key)
            .and_then(|l| l.definition.genus.clone())
            .unwrap_or_default();
        let (gs, h) = match &s.genus {
            GenusResolution::Resolved { sense, heuristic } => (sense.1.to_string(), heuristic.as_str()),
            GenusResolution::Unresolved => {
                unresolved += 1;
                ("-".to_owned(), "UNRESOLVED")
            }
        };
        let _ = writeln!(gsd_out, "{}\t{}\t{}\t{genus}\t{gs}\t{h}\t{}", s.key.0, s.key.1, s.tag, placement(s));
    }
    ctx.count("taxonomies", taxonomies.len());
    ctx.count("nodes", taxonomies.iter().map(SenseTaxonomy::len).sum());
    ctx.count("edges", taxonomies.iter().map(|t| t.parents.len()).sum());
    ctx.count("unresolved_genus", unresolved);
    ctx.write(TAXONOMY, &tax_out)?;
    ctx.write(GENUS, &gsd_out)
}

fn accepted_links(ctx: &Ctx<'_>) -> Result<LinkSet> {
    let (text, src) = ctx.read_artifact(LINKS)?;
    Ok(LinkCandidate::parse_tsv(&text, &src)?
        .into_iter()
        .map(|c| (c.word, c.synset))
        .collect())
}

fn merge(ctx: &mut Ctx<'_>) -> Result<()> {
    let (text, src) = ctx.read_artifact(TAXONOMY)?;
    let taxonomies = SenseTaxonomy::parse_tsv(&text, &src)?;
    let a = accepted_links(ctx)?;
    let bi = ctx.bilingual()?;
    let g = ctx.graph()?;
    let mut table = ConfidenceTable::published_defaults();
    if let Some(p) = &ctx.cfg.inputs.confidence {
        table = table.with_overrides(&ConfidenceTable::load(p)?);
    }
    let m = ctx.cfg.merge;
    let input = BootstrapInput {
        taxonomies: &taxonomies,
        graph: &g,
        bilingual: &bi,
        table: &table,
        threshold: m.threshold,
        max_path: m.max_path,
        max_iters: m.max_iters,
    };
    let run = bootstrap(&input, &a)?;
    ctx.count("rounds", run.ledger.rounds.len());
    ctx.count("inferred", run.inferred.len());
    ctx.write(INFERRED, &InferredLink::write_tsv(&run.inferred))?;
    ctx.write(LEDGER, &json(&run.ledger)?)
}

fn report(ctx: &mut Ctx<'_>) -> Result<()> {
    let r = BuildReport::recount(&ctx.cfg.out, &ctx.cfg.inputs)?;
    ctx.count("connections", r.merged.connections);
    ctx.write(REPORT_JSON, &json(&r)?)?;
    ctx.write(REPORT_TXT, &r.to_text())
}

#[cfg(test)]
mod tests;
