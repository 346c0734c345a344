use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::text::records;

/// Semantic file names compare without a `noun.` prefix and case.
pub fn semfile_key(semfile: &str) -> String {
    let s = semfile.trim().to_lowercase();
    s.strip_prefix("noun.").map(str::to_owned).unwrap_or(s)
}

const ANY: &str = "*";

/// Confidence per (configuration, semantic file). A `*` row is the
/// configuration's fallback.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfidenceTable {
    cells: BTreeMap<(u8, String), f64>,
}

impl ConfidenceTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Measured new-connection precisions for classes 2 and 4, band minimum
    /// elsewhere within those classes. Class 1 only boosts; the classes
    /// never measured start at zero.
    pub fn published_defaults() -> Self {
        let mut t = Self::new();
        t.set(1, ANY, 0.99);
        t.set(2, ANY, 0.50);
        t.set(2, "artifact", 0.50);
        // "mental process"
        t.set(2, "cognition", 0.50);
        t.set(4, ANY, 0.50);
        t.set(4, "artifact", 0.85);
        t.set(4, "cognition", 0.65);
        t.set(4, "communication", 0.50);
        t.set(4, "food", 0.74);
        for c in [3, 5, 6, 7, 8] {
            t.set(c, ANY, 0.0);
        }
        t
    }

    pub fn set(&mut self, configuration: u8, semfile: &str, confidence: f64) {
        let key = if semfile.trim() == ANY { ANY.to_owned() } else { semfile_key(semfile) };
        self.cells.insert((configuration, key), confidence);
    }

    pub fn get(&self, configuration: u8, semfile: &str) -> Result<f64> {
        self.cells
            .get(&(configuration, semfile_key(semfile)))
            .or_else(|| self.cells.get(&(configuration, ANY.to_owned())))
            .copied()
            .ok_or_else(|| Error::Config(format!("no confidence for configuration {configuration} ({semfile})")))
    }

    pub fn covers(&self, configuration: u8) -> bool {
        self.cells.keys().any(|(c, _)| *c == configuration)
    }

    /// Cells of `other` replace ours.
    pub fn with_overrides(mut self, other: &ConfidenceTable) -> Self {
        self.cells.extend(other.cells.iter().map(|(k, v)| (k.clone(), *v)));
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &str, f64)> {
        self.cells.iter().map(|((c, s), v)| (*c, s.as_str(), *v))
    }

    /// `configuration \t semfile \t confidence`, semfile `*` for the fallback.
    pub fn from_tsv(text: &str, source_name: &str) -> Result<Self> {
        let mut t = Self::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 3, 3)?;
            let configuration: u8 = rec
                .field(0)
                .parse()
                .ok()
                .filter(|c| (1..=8).contains(c))
                .ok_or_else(|| Error::parse(source_name, rec.line, format!("bad configuration `{}`", rec.field(0))))?;
            let confidence: f64 = rec
                .field(2)
                .parse()
                .ok()
                .filter(|v: &f64| (0.0..=1.0).contains(v))
                .ok_or_else(|| Error::parse(source_name, rec.line, format!("bad confidence `{}`", rec.field(2))))?;
            if rec.field(1).is_empty() {
                return Err(Error::parse(source_name, rec.line, "empty semantic file"));
            }
            t.set(configuration, rec.field(1), confidence);
        }
        Ok(t)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text, &path.display().to_string())
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# configuration\tsemfile\tconfidence\n");
        for (c, s, v) in self.iter() {
            let _ = writeln!(out, "{c}\t{s}\t{v}");
        }
        out
    }
}
