//! Attaching target-language words to synsets.
//!
//! Each word is put in classes along three dimensions (polysemy of its
//! translations, their structural relations, their conceptual distance).
//! Every class proposes (word, synset) candidates; a candidate's confidence
//! combines the measured precisions of the classes supporting it.

mod classes;
mod precision;
mod run;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::SynsetId;
use crate::text::{normalize, records, split_list};

pub use classes::{classify_conceptual, classify_polysemy, classify_structural, generate_candidates, ClassId, Dimension};
pub use precision::{accept_links, score_candidate, ClassPrecision, Combiner, PrecisionTable, SCORE_EPSILON};
pub use run::{intersect_classes, link_all, ClassVolume, LinkParams, LinkRun, PairStat};

#[derive(Debug, Clone, PartialEq)]
pub struct LinkCandidate {
    pub word: String,
    pub synset: SynsetId,
    pub supporting_classes: BTreeSet<ClassId>,
    pub confidence: f64,
    pub accepted: bool,
}

impl LinkCandidate {
    pub fn new(word: &str, synset: SynsetId, class: ClassId) -> Self {
        LinkCandidate {
            word: normalize(word),
            synset,
            supporting_classes: BTreeSet::from([class]),
            confidence: 0.0,
            accepted: false,
        }
    }

    pub fn key(&self) -> (&str, &SynsetId) {
        (&self.word, &self.synset)
    }

    /// `word \t synset_id \t confidence \t class,class`.
    pub fn write_tsv<'a>(rows: impl IntoIterator<Item = &'a LinkCandidate>) -> String {
        let mut out = String::from("# word\tsynset_id\tconfidence\tclasses\n");
        for c in rows {
            let classes: Vec<&str> = c.supporting_classes.iter().map(|k| k.name()).collect();
            let _ = writeln!(out, "{}\t{}\t{:.6}\t{}", c.word, c.synset, c.confidence, classes.join(","));
        }
        out
    }

    /// Reads accepted-link rows back. Every row is marked accepted.
    pub fn parse_tsv(text: &str, source_name: &str) -> Result<Vec<LinkCandidate>> {
        let mut out = Vec::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 4, 4)?;
            let confidence: f64 = rec
                .field(2)
                .parse()
                .map_err(|_| Error::parse(source_name, rec.line, format!("bad confidence `{}`", rec.field(2))))?;
            let supporting_classes = split_list(rec.field(3), ',')
                .map(|c| c.parse::<ClassId>().map_err(|m| Error::parse(source_name, rec.line, m)))
                .collect::<Result<BTreeSet<_>>>()?;
            if supporting_classes.is_empty() {
                return Err(Error::parse(source_name, rec.line, "link without supporting class"));
            }
            out.push(LinkCandidate {
                word: normalize(rec.field(0)),
                synset: SynsetId::new(rec.field(1)),
                supporting_classes,
                confidence,
                accepted: true,
            });
        }
        Ok(out)
    }
}
