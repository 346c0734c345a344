use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use super::SemanticTag;
use crate::error::{Error, Result};
use crate::text::{normalize, records, tokenize, Stoplist};

/// (headword, sense number).
pub type SenseKey = (String, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub headword: String,
    pub sense_no: u32,
    pub text: Vec<String>,
    /// Genus given by the dictionary itself, if any.
    pub genus: Option<String>,
}

impl Definition {
    pub fn new(headword: &str, sense_no: u32, genus: Option<&str>, text: &str) -> Self {
        Definition {
            headword: normalize(headword),
            sense_no,
            text: tokenize(text),
            genus: genus.map(normalize).filter(|g| !g.is_empty()),
        }
    }

    pub fn key(&self) -> SenseKey {
        (self.headword.clone(), self.sense_no)
    }

    /// Tokens surviving the stoplist.
    pub fn content_tokens<'a>(&'a self, stoplist: &'a Stoplist) -> impl Iterator<Item = &'a str> {
        self.text
            .iter()
            .map(String::as_str)
            .filter(move |t| !stoplist.contains(t))
    }
}

/// The dictionary's own genus when supplied, otherwise the first
/// non-stopword token of the definition.
pub fn extract_genus(d: &Definition, stoplist: &Stoplist) -> Option<String> {
    if let Some(g) = &d.genus {
        return Some(g.clone());
    }
    d.content_tokens(stoplist).next().map(str::to_owned)
}

/// A monolingual definition dictionary, sorted by (headword, sense).
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    defs: Vec<Definition>,
    by_headword: BTreeMap<String, (usize, usize)>,
}

impl Dictionary {
    pub fn new(defs: Vec<Definition>) -> Result<Self> {
        let mut defs = defs;
        defs.sort_by(|a, b| (&a.headword, a.sense_no).cmp(&(&b.headword, b.sense_no)));
        for w in defs.windows(2) {
            if w[0].headword == w[1].headword && w[0].sense_no == w[1].sense_no {
                return Err(Error::Config(format!("duplicate sense {} {}", w[1].headword, w[1].sense_no)));
            }
        }
        let mut by_headword: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for (i, d) in defs.iter().enumerate() {
            by_headword
                .entry(d.headword.clone())
                .and_modify(|r| r.1 = i + 1)
                .or_insert((i, i + 1));
        }
        Ok(Dictionary { defs, by_headword })
    }

    /// Parses `headword \t sense_no \t genus \t text` lines. The genus
    /// column may be empty.
    pub fn from_tsv(text: &str, source_name: &str) -> Result<Self> {
        let mut defs = Vec::new();
        let mut seen = BTreeMap::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 4, 4)?;
            let sense_no: u32 = rec
                .field(1)
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::parse(source_name, rec.line, format!("bad sense number `{}`", rec.field(1))))?;
            let genus = Some(rec.field(2)).filter(|g| !g.is_empty());
            let d = Definition::new(rec.field(0), sense_no, genus, rec.field(3));
            if d.headword.is_empty() {
                return Err(Error::parse(source_name, rec.line, "empty headword"));
            }
            if d.text.is_empty() {
                return Err(Error::parse(source_name, rec.line, "empty definition text"));
            }
            if let Some(prev) = seen.insert(d.key(), rec.line) {
                return Err(Error::parse(
                    source_name,
                    rec.line,
                    format!("duplicate sense {} {} (first on line {prev})", d.headword, d.sense_no),
                ));
            }
            defs.push(d);
        }
        Self::new(defs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text, &path.display().to_string())
    }

    /// Fills every missing genus with [`extract_genus`].
    pub fn with_extracted_genus(mut self, stoplist: &Stoplist) -> Self {
        for d in &mut self.defs {
            if d.genus.is_none() {
                d.genus = extract_genus(d, stoplist);
            }
        }
        self
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.defs
    }

    pub fn senses(&self, headword: &str) -> &[Definition] {
        match self.by_headword.get(&normalize(headword)) {
            Some(&(a, b)) => &self.defs[a..b],
            None => &[],
        }
    }

    pub fn get(&self, headword: &str, sense_no: u32) -> Option<&Definition> {
        self.senses(headword).iter().find(|d| d.sense_no == sense_no)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    DistanceSeed,
    Salient,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DistanceSeed => "DISTANCE_SEED",
            Method::Salient => "SALIENT",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "DISTANCE_SEED" => Ok(Method::DistanceSeed),
            "SALIENT" => Ok(Method::Salient),
            other => Err(format!("unknown tagging method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaggedDefinition {
    pub definition: Definition,
    pub tag: SemanticTag,
    /// Conceptual distance for seeds, summed association ratio otherwise.
    pub score: f64,
    pub method: Method,
    pub ambiguous: bool,
}

impl TaggedDefinition {
    pub fn key(&self) -> SenseKey {
        self.definition.key()
    }

    /// `headword \t sense \t genus \t text \t tag \t score \t method \t ambiguous`.
    pub fn write_tsv<'a>(rows: impl IntoIterator<Item = &'a TaggedDefinition>) -> String {
        let mut out = String::from("# headword\tsense_no\tgenus\tdefinition\ttag\tscore\tmethod\tambiguous\n");
        for t in rows {
            let d = &t.definition;
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                d.headword,
                d.sense_no,
                d.genus.as_deref().unwrap_or(""),
                d.text.join(" "),
                t.tag,
                t.score,
                t.method,
                t.ambiguous
            );
        }
        out
    }

    pub fn parse_tsv(text: &str, source_name: &str) -> Result<Vec<TaggedDefinition>> {
        let mut out = Vec::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 8, 8)?;
            let bad = |what: &str| Error::parse(source_name, rec.line, format!("bad {what}"));
            let sense_no: u32 = rec.field(1).parse().map_err(|_| bad("sense number"))?;
            let genus = Some(rec.field(2)).filter(|g| !g.is_empty());
            let score: f64 = rec.field(5).parse().map_err(|_| bad("score"))?;
            let method: Method = rec
                .field(6)
                .parse()
                .map_err(|m: String| Error::parse(source_name, rec.line, m))?;
            let ambiguous: bool = rec.field(7).parse().map_err(|_| bad("ambiguous flag"))?;
            out.push(TaggedDefinition {
                definition: Definition::new(rec.field(0), sense_no, genus, rec.field(3)),
                tag: SemanticTag::new(rec.field(4)),
                score,
                method,
                ambiguous,
            });
        }
        Ok(out)
    }
}
