use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linker::LinkParams;
use crate::taxonomy::{FilterSpec, HeuristicChain};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Inputs {
    pub wordnet: Option<PathBuf>,
    pub bilinguals: Vec<PathBuf>,
    pub monolingual: Option<PathBuf>,
    pub stoplist: Option<PathBuf>,
    /// Class precisions. The synthetic table is used when unset.
    pub precision: Option<PathBuf>,
    /// Merge confidences layered over the published defaults.
    pub confidence: Option<PathBuf>,
    /// `synset_id \t tag` primitive overrides.
    pub primitives: Option<PathBuf>,
    pub gold_links: Option<PathBuf>,
    pub gold_tags: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TaxonomyParams {
    pub filter: String,
    pub heuristics: Vec<String>,
}

impl Default for TaxonomyParams {
    fn default() -> Self {
        TaxonomyParams {
            filter: "F2+(F3>9)".into(),
            heuristics: HeuristicChain::default().names().into_iter().map(str::to_owned).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MergeParams {
    pub threshold: f64,
    pub max_path: usize,
    pub max_iters: u32,
}

impl Default for MergeParams {
    fn default() -> Self {
        MergeParams { threshold: 0.7, max_path: 1, max_iters: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub out: PathBuf,
    pub inputs: Inputs,
    pub link: LinkParams,
    pub taxonomy: TaxonomyParams,
    pub merge: MergeParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            out: PathBuf::from("out"),
            inputs: Inputs::default(),
            link: LinkParams::default(),
            taxonomy: TaxonomyParams::default(),
            merge: MergeParams::default(),
        }
    }
}

impl RunConfig {
    /// Relative paths are taken against `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let mut cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.rebase(base);
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::from_toml(&text, base).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.out);
        let i = &mut self.inputs;
        for p in [
            &mut i.wordnet,
            &mut i.monolingual,
            &mut i.stoplist,
            &mut i.precision,
            &mut i.confidence,
            &mut i.primitives,
            &mut i.gold_links,
            &mut i.gold_tags,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
        i.bilinguals.iter_mut().for_each(fix);
    }

    /// Thresholds in [0, 1], parseable filter and heuristic names, positive
    /// path and round limits, and every configured input present.
    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} = {v} is outside [0, 1]")))
            }
        };
        unit("link.accept_threshold", self.link.accept_threshold)?;
        unit("merge.threshold", self.merge.threshold)?;
        if !(self.link.distance_threshold >= 0.0) {
            return Err(Error::Config("link.distance_threshold must be non-negative".into()));
        }
        self.filter_spec()?;
        self.heuristic_chain()?;
        if self.merge.max_path == 0 {
            return Err(Error::Config("merge.max_path must be at least 1".into()));
        }
        if self.merge.max_iters == 0 {
            return Err(Error::Config("merge.max_iters must be at least 1".into()));
        }
        let i = &self.inputs;
        for p in [&i.wordnet, &i.monolingual, &i.stoplist, &i.precision, &i.confidence, &i.primitives, &i.gold_links, &i.gold_tags]
            .into_iter()
            .flatten()
            .chain(&i.bilinguals)
        {
            if !p.is_file() {
                return Err(Error::io(p, std::io::Error::new(std::io::ErrorKind::NotFound, "input file not found")));
            }
        }
        Ok(())
    }

    pub fn filter_spec(&self) -> Result<FilterSpec> {
        self.taxonomy.filter.parse()
    }

    pub fn heuristic_chain(&self) -> Result<HeuristicChain> {
        HeuristicChain::from_names(&self.taxonomy.heuristics)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
