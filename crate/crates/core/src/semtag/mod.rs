//! Semantic-primitive tagging of dictionary definitions.
//!
//! Seeds come from conceptual distance between headword and genus
//! translations; a salient-word lexicon trained on the seeds then labels
//! the whole dictionary.

mod core_concepts;
mod definition;
mod salient;
mod seed;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Synset, SynsetId};
use crate::text::records;

pub use core_concepts::{select_core_concepts, CoreThresholds, FrequencyTable};
pub use definition::{extract_genus, Definition, Dictionary, Method, SenseKey, TaggedDefinition};
pub use salient::{label_definitions, train_salient, SalientLexicon};
pub use seed::tag_seed_by_distance;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SemanticTag(String);

impl SemanticTag {
    pub fn new(tag: &str) -> Self {
        SemanticTag(tag.trim().to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SemanticTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SemanticTag {
    fn from(s: &str) -> Self {
        SemanticTag::new(s)
    }
}

/// Maps synsets to semantic primitives. By default a synset's primitive is
/// its lexicographer file; per-synset overrides allow finer primitive sets,
/// and an optional allow-list restricts the usable tags.
#[derive(Debug, Clone, Default)]
pub struct Primitives {
    overrides: BTreeMap<SynsetId, SemanticTag>,
    allowed: Option<BTreeSet<SemanticTag>>,
}

impl Primitives {
    pub fn from_semfiles() -> Self {
        Self::default()
    }

    pub fn with_override(mut self, synset: SynsetId, tag: SemanticTag) -> Self {
        self.overrides.insert(synset, tag);
        self
    }

    pub fn restricted_to(mut self, tags: impl IntoIterator<Item = SemanticTag>) -> Self {
        self.allowed = Some(tags.into_iter().collect());
        self
    }

    /// `synset_id \t tag` lines.
    pub fn parse_overrides(mut self, text: &str, source_name: &str) -> Result<Self> {
        for rec in records(text) {
            rec.expect_columns(source_name, 2, 2)?;
            if rec.field(1).is_empty() {
                return Err(Error::parse(source_name, rec.line, "empty tag"));
            }
            self.overrides
                .insert(SynsetId::new(rec.field(0)), SemanticTag::new(rec.field(1)));
        }
        Ok(self)
    }

    pub fn load_overrides(self, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.parse_overrides(&text, &path.display().to_string())
    }

    pub fn tag_of(&self, synset: &Synset) -> Option<SemanticTag> {
        let tag = self
            .overrides
            .get(&synset.id)
            .cloned()
            .unwrap_or_else(|| synset.semfile.clone());
        match &self.allowed {
            Some(allowed) if !allowed.contains(&tag) => None,
            _ => Some(tag),
        }
    }
}
