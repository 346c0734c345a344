//! Word-form normalisation and simple tab-separated record reading.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Case-folds and trims a word form. Internal spaces of multi-word forms are
/// kept, collapsed to single spaces.
pub fn normalize(word: &str) -> String {
    word.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Splits definition text into lower-cased word-form tokens. Punctuation is
/// stripped from token edges.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|t| t.trim_matches(|c: char| !c.is_alphanumeric()).to_lowercase())
        .filter(|t| !t.is_empty())
        .collect()
}

/// Functional words dropped before counting and genus extraction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stoplist(BTreeSet<String>);

impl Stoplist {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Stoplist(words.into_iter().map(|w| normalize(w.as_ref())).filter(|w| !w.is_empty()).collect())
    }

    /// One token per line; `#` lines and blanks are ignored.
    pub fn parse(text: &str) -> Self {
        Stoplist::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(token)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A non-comment, non-blank line of a TSV input with its 1-based line number.
pub(crate) struct Record<'a> {
    pub line: usize,
    pub fields: Vec<&'a str>,
}

pub(crate) fn records(text: &str) -> impl Iterator<Item = Record<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            None
        } else {
            Some(Record {
                line: i + 1,
                fields: line.split('\t').collect(),
            })
        }
    })
}

impl Record<'_> {
    pub fn expect_columns(&self, source: &str, min: usize, max: usize) -> Result<()> {
        let n = self.fields.len();
        if n < min || n > max {
            let wanted = if min == max {
                format!("{min}")
            } else {
                format!("{min}-{max}")
            };
            return Err(Error::parse(source, self.line, format!("expected {wanted} tab-separated columns, found {n}")));
        }
        Ok(())
    }

    pub fn field(&self, i: usize) -> &str {
        self.fields.get(i).map(|f| f.trim()).unwrap_or("")
    }
}

/// Splits a `|`- or `,`-separated list column, dropping empty items.
pub(crate) fn split_list(field: &str, sep: char) -> impl Iterator<Item = &str> {
    field.split(sep).map(str::trim).filter(|s| !s.is_empty())
}
