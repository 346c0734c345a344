use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::{normalize, records};

/// `word \t count` table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable(BTreeMap<String, u64>);

impl FrequencyTable {
    pub fn get(&self, word: &str) -> u64 {
        self.0.get(&normalize(word)).copied().unwrap_or(0)
    }

    pub fn from_tsv(text: &str, source_name: &str) -> Result<Self> {
        let mut m = BTreeMap::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 2, 2)?;
            let n: u64 = rec
                .field(1)
                .parse()
                .map_err(|_| Error::parse(source_name, rec.line, format!("bad count `{}`", rec.field(1))))?;
            *m.entry(normalize(rec.field(0))).or_default() += n;
        }
        Ok(FrequencyTable(m))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text, &path.display().to_string())
    }
}

impl<S: AsRef<str>> FromIterator<(S, u64)> for FrequencyTable {
    fn from_iter<I: IntoIterator<Item = (S, u64)>>(iter: I) -> Self {
        FrequencyTable(iter.into_iter().map(|(w, n)| (normalize(w.as_ref()), n)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoreThresholds {
    pub genus: u64,
    pub definitions: u64,
    pub corpus: u64,
}

impl Default for CoreThresholds {
    fn default() -> Self {
        CoreThresholds {
            genus: 5,
            definitions: 50,
            corpus: 100,
        }
    }
}

/// Keeps a word when it is frequent enough as a genus term, or frequent
/// enough in both the definition corpus and the external corpus.
pub fn select_core_concepts<'a, I>(
    words: I,
    genus_freq: &FrequencyTable,
    defcorpus_freq: &FrequencyTable,
    extcorpus_freq: &FrequencyTable,
    thresholds: CoreThresholds,
) -> BTreeSet<String>
where
    I: IntoIterator<Item = &'a str>,
{
    words
        .into_iter()
        .map(normalize)
        .filter(|w| {
            genus_freq.get(w) >= thresholds.genus
                || (defcorpus_freq.get(w) >= thresholds.definitions && extcorpus_freq.get(w) >= thresholds.corpus)
        })
        .collect()
}
