use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SynsetId;
use crate::semtag::{SemanticTag, SenseKey};
use crate::text::{normalize, records};

/// Confusion counts of an emitted (key, value) set against a gold one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub correct: u64,
    pub emitted: u64,
    /// Gold keys that received at least one emitted value.
    pub covered: u64,
    /// Distinct gold keys.
    pub domain: u64,
}

fn ratio(n: u64, d: u64) -> Ratio<u64> {
    if d == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(n, d)
    }
}

fn render(r: Ratio<u64>) -> String {
    format!("{:.4}", r.to_f64().unwrap_or(0.0))
}

impl Evaluation {
    /// correct / emitted; zero when nothing was emitted.
    pub fn precision(&self) -> Ratio<u64> {
        ratio(self.correct, self.emitted)
    }

    pub fn coverage(&self) -> Ratio<u64> {
        ratio(self.covered, self.domain)
    }

    pub fn precision_str(&self) -> String {
        render(self.precision())
    }

    pub fn coverage_str(&self) -> String {
        render(self.coverage())
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "precision {} ({}/{})  coverage {} ({}/{})",
            self.precision_str(),
            self.correct,
            self.emitted,
            self.coverage_str(),
            self.covered,
            self.domain
        )
    }
}

pub fn evaluate<K: Ord, V: Ord>(emitted: &BTreeSet<(K, V)>, gold: &BTreeSet<(K, V)>) -> Result<Evaluation> {
    if gold.is_empty() {
        return Err(Error::Evaluation("gold set is empty".into()));
    }
    let domain: BTreeSet<&K> = gold.iter().map(|(k, _)| k).collect();
    let covered: BTreeSet<&K> = emitted.iter().map(|(k, _)| k).filter(|k| domain.contains(k)).collect();
    Ok(Evaluation {
        correct: emitted.intersection(gold).count() as u64,
        emitted: emitted.len() as u64,
        covered: covered.len() as u64,
        domain: domain.len() as u64,
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// `word \t synset_id` lines.
pub fn load_gold_links(path: impl AsRef<Path>) -> Result<BTreeSet<(String, SynsetId)>> {
    let path = path.as_ref();
    let text = read(path)?;
    let name = path.display().to_string();
    let mut out = BTreeSet::new();
    for rec in records(&text) {
        rec.expect_columns(&name, 2, 2)?;
        out.insert((normalize(rec.field(0)), SynsetId::new(rec.field(1))));
    }
    Ok(out)
}

/// `headword \t sense_no \t tag` lines.
pub fn load_gold_tags(path: impl AsRef<Path>) -> Result<BTreeSet<(SenseKey, SemanticTag)>> {
    let path = path.as_ref();
    let text = read(path)?;
    let name = path.display().to_string();
    let mut out = BTreeSet::new();
    for rec in records(&text) {
        rec.expect_columns(&name, 3, 3)?;
        let sense: u32 = rec
            .field(1)
            .parse()
            .map_err(|_| Error::parse(&name, rec.line, format!("bad sense number `{}`", rec.field(1))))?;
        out.insert(((normalize(rec.field(0)), sense), SemanticTag::new(rec.field(2))));
    }
    Ok(out)
}
