//! Directed bilingual dumps and the direction-merged ("homogeneous")
//! translation map keyed by target-language word.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text::{normalize, records, split_list};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Source-language headword, target-language translations.
    SourceToTarget,
    /// Target-language headword, source-language translations.
    TargetToSource,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "st" => Ok(Direction::SourceToTarget),
            "ts" => Ok(Direction::TargetToSource),
            other => Err(format!("unknown direction `{other}` (expected `st` or `ts`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedEntry {
    pub headword: String,
    pub direction: Direction,
    pub translations: Vec<String>,
    pub dictionary_id: String,
}

impl DirectedEntry {
    /// Normalises word forms and drops duplicate translations. Returns
    /// `None` when nothing usable is left.
    pub fn new<S: AsRef<str>>(
        headword: &str,
        direction: Direction,
        translations: &[S],
        dictionary_id: &str,
    ) -> Option<Self> {
        let headword = normalize(headword);
        let mut out: Vec<String> = Vec::new();
        for t in translations {
            let t = normalize(t.as_ref());
            if !t.is_empty() && !out.contains(&t) {
                out.push(t);
            }
        }
        if headword.is_empty() || out.is_empty() {
            return None;
        }
        Some(DirectedEntry {
            headword,
            direction,
            translations: out,
            dictionary_id: dictionary_id.to_owned(),
        })
    }
}

/// Parses `direction \t headword \t t1|t2|...` lines.
pub fn parse_directed(text: &str, dictionary_id: &str, source_name: &str) -> Result<Vec<DirectedEntry>> {
    let mut out = Vec::new();
    for rec in records(text) {
        rec.expect_columns(source_name, 3, 3)?;
        let direction: Direction = rec
            .field(0)
            .parse()
            .map_err(|m: String| Error::parse(source_name, rec.line, m))?;
        let translations: Vec<&str> = split_list(rec.field(2), '|').collect();
        let entry = DirectedEntry::new(rec.field(1), direction, &translations, dictionary_id)
            .ok_or_else(|| Error::parse(source_name, rec.line, "entry needs a headword and at least one translation"))?;
        out.push(entry);
    }
    Ok(out)
}

/// Reads a directed dump; the dictionary id is the file stem.
pub fn load_directed(path: impl AsRef<Path>) -> Result<Vec<DirectedEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "bilingual".to_owned());
    parse_directed(&text, &id, &path.display().to_string())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomogeneousBilingual {
    translations: BTreeMap<String, BTreeSet<String>>,
    provenance: BTreeMap<(String, String), BTreeSet<String>>,
}

impl HomogeneousBilingual {
    pub fn new() -> Self {
        Self::default()
    }

    /// Folds both directions into target-word → source-words pairs.
    /// Translation order is not kept.
    pub fn merge_directions<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = DirectedEntry>,
    {
        let mut out = Self::new();
        for e in entries {
            for t in &e.translations {
                match e.direction {
                    Direction::TargetToSource => out.insert(&e.headword, t, &e.dictionary_id),
                    Direction::SourceToTarget => out.insert(t, &e.headword, &e.dictionary_id),
                }
            }
        }
        out
    }

    /// Pairwise union of any number of maps.
    pub fn merge_bilinguals<'a, I>(maps: I) -> Self
    where
        I: IntoIterator<Item = &'a HomogeneousBilingual>,
    {
        let mut out = Self::new();
        for m in maps {
            for ((t, s), ids) in &m.provenance {
                for id in ids {
                    out.insert(t, s, id);
                }
            }
        }
        out
    }

    pub fn insert(&mut self, target: &str, source: &str, dictionary_id: &str) {
        let (t, s) = (normalize(target), normalize(source));
        if t.is_empty() || s.is_empty() {
            return;
        }
        self.translations.entry(t.clone()).or_default().insert(s.clone());
        self.provenance
            .entry((t, s))
            .or_default()
            .insert(dictionary_id.to_owned());
    }

    /// Source-language translations of a target-language word.
    pub fn translations(&self, target: &str) -> Option<&BTreeSet<String>> {
        self.translations.get(&normalize(target))
    }

    pub fn contains(&self, target: &str, source: &str) -> bool {
        self.translations(target).is_some_and(|s| s.contains(&normalize(source)))
    }

    pub fn provenance(&self, target: &str, source: &str) -> Option<&BTreeSet<String>> {
        self.provenance.get(&(normalize(target), normalize(source)))
    }

    /// Target-language words, ascending.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.translations.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.translations.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.translations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translations.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.provenance.len()
    }

    /// `target \t source \t dict,dict` per pair, sorted.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# target\tsource\tdictionaries\n");
        for ((t, s), ids) in &self.provenance {
            let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
            let _ = writeln!(out, "{t}\t{s}\t{}", ids.join(","));
        }
        out
    }

    pub fn from_tsv(text: &str, source_name: &str) -> Result<Self> {
        let mut out = Self::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 2, 3)?;
            let ids: Vec<&str> = split_list(rec.field(2), ',').collect();
            if ids.is_empty() {
                out.insert(rec.field(0), rec.field(1), "unknown");
            }
            for id in ids {
                out.insert(rec.field(0), rec.field(1), id);
            }
        }
        Ok(out)
    }
}
