//! Datasets bundled with the crate: the demo corpus the full pipeline runs
//! on, and the four-word chain the merge bootstrap is traced on.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::bilingual::{DirectedEntry, Direction, HomogeneousBilingual};
use crate::error::{Error, Result};
use crate::graph::{SynsetId, WordNetGraph};
use crate::merger::{ConfidenceTable, LinkSet};
use crate::semtag::SemanticTag;
use crate::taxonomy::SenseTaxonomy;

macro_rules! demo {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/demo/", $name)))),*]
    };
}

/// (file name, contents) of the demo dataset, `config.toml` included.
pub const DEMO: &[(&str, &str)] = demo![
    "config.toml",
    "wordnet.tsv",
    "en_es.tsv",
    "es_en.tsv",
    "monolingual.tsv",
    "stoplist.txt",
    "precision.tsv",
    "confidence.tsv",
    "gold_links.tsv",
    "gold_tags.tsv",
];

pub const TOY_WORDNET: &str = include_str!("../fixtures/toy_wordnet.tsv");

/// Writes the demo dataset into `dir` and returns the config path.
pub fn materialize(dir: impl AsRef<Path>) -> Result<PathBuf> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (name, text) in DEMO {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    }
    Ok(dir.join("config.toml"))
}

/// Taxonomy vino -> zumo -> bebida -> alimento over the toy skeleton
/// wine -> juice -> beverage -> food, with every word but vino linked.
pub struct ChainFixture {
    pub graph: WordNetGraph,
    pub taxonomy: SenseTaxonomy,
    pub accepted: LinkSet,
    pub bilingual: HomogeneousBilingual,
    /// Published defaults with configuration 2 at 0.85.
    pub table: ConfidenceTable,
    pub threshold: f64,
}

pub fn chain() -> ChainFixture {
    let graph = WordNetGraph::from_tsv(TOY_WORDNET, "toy_wordnet.tsv").expect("bundled toy wordnet parses");
    let k = |h: &str| (h.to_owned(), 1);
    let words = ["vino", "zumo", "bebida", "alimento"];
    let taxonomy = SenseTaxonomy {
        primitive: SemanticTag::new("food"),
        nodes: words.into_iter().map(k).collect(),
        parents: words.windows(2).map(|w| (k(w[0]), k(w[1]))).collect::<BTreeMap<_, _>>(),
        tops: BTreeSet::from([k("alimento")]),
        root_attached: BTreeSet::new(),
        cycles: Vec::new(),
    };
    let accepted = [("zumo", "n.juice"), ("bebida", "n.beverage"), ("alimento", "n.food")]
        .into_iter()
        .map(|(w, s)| (w.to_owned(), SynsetId::new(s)))
        .collect();
    let bilingual = HomogeneousBilingual::merge_directions(
        [("vino", "wine"), ("zumo", "juice"), ("bebida", "beverage"), ("bebida", "drink"), ("alimento", "food")]
            .into_iter()
            .filter_map(|(t, s)| DirectedEntry::new(t, Direction::TargetToSource, &[s], "chain")),
    );
    let mut over = ConfidenceTable::new();
    over.set(2, "*", 0.85);
    ChainFixture {
        graph,
        taxonomy,
        accepted,
        bilingual,
        table: ConfidenceTable::published_defaults().with_overrides(&over),
        threshold: 0.8,
    }
}
