use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::path::Path;

use super::{Synset, SynsetId, WordNetGraph};
use crate::error::{Error, Result};
use crate::semtag::SemanticTag;
use crate::text::{normalize, records, split_list};

/// One synset as read from input, before cross-references are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynsetRecord {
    pub id: String,
    pub pos: String,
    pub semfile: String,
    pub lemmas: Vec<String>,
    pub hypernyms: Vec<String>,
    /// 1-based source line, 0 when built programmatically.
    pub line: usize,
}

impl SynsetRecord {
    pub fn new(id: &str, semfile: &str, lemmas: &[&str], hypernyms: &[&str]) -> Self {
        SynsetRecord {
            id: id.to_owned(),
            pos: "n".to_owned(),
            semfile: semfile.to_owned(),
            lemmas: lemmas.iter().map(|l| l.to_string()).collect(),
            hypernyms: hypernyms.iter().map(|h| h.to_string()).collect(),
            line: 0,
        }
    }
}

impl WordNetGraph {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&text, &path.display().to_string())
    }

    /// Parses `synset_id \t pos \t semfile \t lemma|lemma \t hyper,hyper`.
    pub fn from_tsv(text: &str, source_name: &str) -> Result<Self> {
        let mut out = Vec::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 4, 5)?;
            let id = rec.field(0);
            if id.is_empty() {
                return Err(Error::parse(source_name, rec.line, "empty synset id"));
            }
            out.push(SynsetRecord {
                id: id.to_owned(),
                pos: rec.field(1).to_owned(),
                semfile: rec.field(2).to_owned(),
                lemmas: split_list(rec.field(3), '|').map(str::to_owned).collect(),
                hypernyms: split_list(rec.field(4), ',').map(str::to_owned).collect(),
                line: rec.line,
            });
        }
        Self::from_records(out, source_name)
    }

    pub fn from_records(records: Vec<SynsetRecord>, source_name: &str) -> Result<Self> {
        let mut records = records;
        records.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in records.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::parse(
                    source_name,
                    pair[1].line,
                    format!("duplicate synset id `{}`", pair[1].id),
                ));
            }
        }

        let index: HashMap<SynsetId, usize> = records
            .iter()
            .enumerate()
            .map(|(i, r)| (SynsetId::new(r.id.clone()), i))
            .collect();

        let n = records.len();
        let mut hypernyms = vec![Vec::new(); n];
        let mut hyponyms = vec![Vec::new(); n];
        let mut lemma_index: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut synsets = Vec::with_capacity(n);

        for (i, r) in records.iter().enumerate() {
            let mut lemmas: Vec<String> = Vec::new();
            for l in &r.lemmas {
                let l = normalize(l);
                if !l.is_empty() && !lemmas.contains(&l) {
                    lemmas.push(l);
                }
            }
            if lemmas.is_empty() {
                return Err(Error::parse(source_name, r.line, format!("synset `{}` has no lemmas", r.id)));
            }
            if r.semfile.is_empty() {
                return Err(Error::parse(source_name, r.line, format!("synset `{}` has no semantic file", r.id)));
            }
            for h in &r.hypernyms {
                if *h == r.id {
                    return Err(Error::Cycle(vec![r.id.clone(), r.id.clone()]));
                }
                let j = *index.get(h.as_str()).ok_or_else(|| Error::DanglingReference {
                    source_name: source_name.to_owned(),
                    line: r.line,
                    synset: r.id.clone(),
                    target: h.clone(),
                })?;
                if !hypernyms[i].contains(&j) {
                    hypernyms[i].push(j);
                    hyponyms[j].push(i);
                }
            }
            for l in &lemmas {
                lemma_index.entry(l.clone()).or_default().push(i);
            }
            synsets.push(Synset {
                id: SynsetId::new(r.id.clone()),
                pos: r.pos.clone(),
                lemmas,
                semfile: SemanticTag::new(&r.semfile),
                hypernyms: BTreeSet::new(),
                hyponyms: BTreeSet::new(),
            });
        }
        for v in hypernyms.iter_mut().chain(hyponyms.iter_mut()) {
            v.sort_unstable();
        }
        for (i, s) in synsets.iter_mut().enumerate() {
            s.hypernyms = hypernyms[i].iter().map(|&j| SynsetId::new(records[j].id.clone())).collect();
            s.hyponyms = hyponyms[i].iter().map(|&j| SynsetId::new(records[j].id.clone())).collect();
        }

        let depth = depths(&hypernyms, &hyponyms).map_err(|cycle| {
            Error::Cycle(cycle.into_iter().map(|i| records[i].id.clone()).collect())
        })?;

        Ok(WordNetGraph {
            synsets,
            index,
            hypernyms,
            hyponyms,
            lemma_index,
            depth,
        })
    }
}

/// Top-down Kahn pass: a synset's depth is fixed once all its hypernyms are.
/// On failure returns one hypernym cycle, closed (first id repeated last).
fn depths(hypernyms: &[Vec<usize>], hyponyms: &[Vec<usize>]) -> std::result::Result<Vec<u32>, Vec<usize>> {
    let n = hypernyms.len();
    let mut pending: Vec<usize> = hypernyms.iter().map(Vec::len).collect();
    let mut depth = vec![0u32; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
    for &r in &queue {
        depth[r] = 1;
    }
    let mut done = 0;
    while let Some(i) = queue.pop_front() {
        done += 1;
        for &c in &hyponyms[i] {
            depth[c] = if depth[c] == 0 { depth[i] + 1 } else { depth[c].min(depth[i] + 1) };
            pending[c] -= 1;
            if pending[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    if done == n {
        return Ok(depth);
    }

    // Every leftover synset still waits on a leftover hypernym, so walking
    // upward through leftovers must revisit a node.
    let start = (0..n).find(|&i| pending[i] > 0).expect("leftover node");
    let mut seen = HashMap::new();
    let mut walk = Vec::new();
    let mut cur = start;
    loop {
        if let Some(&pos) = seen.get(&cur) {
            let mut cycle: Vec<usize> = walk[pos..].to_vec();
            cycle.push(cur);
            return Err(cycle);
        }
        seen.insert(cur, walk.len());
        walk.push(cur);
        cur = *hypernyms[cur]
            .iter()
            .find(|&&h| pending[h] > 0)
            .expect("leftover node has a leftover hypernym");
    }
}
