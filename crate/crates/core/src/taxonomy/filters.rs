use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{collect_genus, GenusIndex, GenusTable};
use crate::bilingual::HomogeneousBilingual;
use crate::error::{Error, Result};
use crate::graph::WordNetGraph;
use crate::semtag::{Primitives, SemanticTag, TaggedDefinition};

/// Keeps genus terms with some translation whose synset carries the
/// table's primitive.
pub fn filter_f1(t: &GenusTable, bi: &HomogeneousBilingual, g: &WordNetGraph, primitives: &Primitives) -> GenusTable {
    t.retain(|genus, _| {
        bi.translations(genus).into_iter().flatten().any(|tr| {
            g.synsets_of(tr)
                .any(|s| primitives.tag_of(s).as_ref() == Some(&t.tag))
        })
    })
}

/// Keeps genus terms strictly more frequent under the table's primitive
/// than under any other. Ties are dropped.
pub fn filter_f2(t: &GenusTable, index: &GenusIndex) -> GenusTable {
    t.retain(|genus, n| index.by_tag(genus).all(|(tag, m)| tag == &t.tag || n > m))
}

/// Keeps genus terms seen more than `n` times.
pub fn filter_f3(t: &GenusTable, n: u64) -> GenusTable {
    t.retain(|_, count| count > n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    F1,
    F2,
    F3(u64),
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::F1 => f.write_str("F1"),
            Filter::F2 => f.write_str("F2"),
            Filter::F3(n) => write!(f, "(F3>{n})"),
        }
    }
}

/// A `+`-joined filter composition such as `F2+(F3>9)`. The empty string
/// applies no filter.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FilterSpec(pub Vec<Filter>);

impl FromStr for FilterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |term: &str| Error::Config(format!("unknown filter `{term}` in `{s}`"));
        let mut out = Vec::new();
        for raw in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let term = raw
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(raw)
                .trim();
            let filter = match term {
                "F1" => Filter::F1,
                "F2" => Filter::F2,
                _ => {
                    let n = term
                        .strip_prefix("F3")
                        .and_then(|rest| rest.trim().strip_prefix('>'))
                        .ok_or_else(|| bad(raw))?;
                    Filter::F3(n.trim().parse().map_err(|_| bad(raw))?)
                }
            };
            out.push(filter);
        }
        Ok(FilterSpec(out))
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Filter::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

/// What the filters need besides the genus table.
pub struct FilterContext<'a> {
    pub bi: &'a HomogeneousBilingual,
    pub graph: &'a WordNetGraph,
    pub primitives: &'a Primitives,
    pub index: &'a GenusIndex,
}

impl FilterSpec {
    pub fn apply(&self, table: &GenusTable, ctx: &FilterContext<'_>) -> GenusTable {
        self.0.iter().fold(table.clone(), |t, f| match f {
            Filter::F1 => filter_f1(&t, ctx.bi, ctx.graph, ctx.primitives),
            Filter::F2 => filter_f2(&t, ctx.index),
            Filter::F3(n) => filter_f3(&t, *n),
        })
    }
}

/// Genus terms of `tag` surviving `spec`, applied left to right.
pub fn select_top_beginners(
    tagged: &[TaggedDefinition],
    tag: &SemanticTag,
    spec: &FilterSpec,
    ctx: &FilterContext<'_>,
) -> BTreeSet<String> {
    spec.apply(&collect_genus(tagged, tag), ctx)
        .genus_terms()
        .map(str::to_owned)
        .collect()
}
