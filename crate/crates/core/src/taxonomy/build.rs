use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{GenusResolution, GenusTable};
use crate::error::{Error, Result};
use crate::semtag::{SemanticTag, SenseKey};
use crate::text::records;

/// A dictionary sense with its primitive label and genus resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedSense {
    pub key: SenseKey,
    pub tag: SemanticTag,
    pub genus: GenusResolution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    /// Cycle members in parent order, starting at the dropped edge's child.
    pub members: Vec<SenseKey>,
    pub dropped_child: SenseKey,
    pub dropped_parent: SenseKey,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TopStructure {
    /// Tops with no parent among the tops.
    pub roots: BTreeSet<SenseKey>,
    /// Top → top links where one top's genus is another top.
    pub edges: BTreeMap<SenseKey, SenseKey>,
    pub cycles: Vec<CycleReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseTaxonomy {
    pub primitive: SemanticTag,
    pub nodes: BTreeSet<SenseKey>,
    /// Child → parent.
    pub parents: BTreeMap<SenseKey, SenseKey>,
    /// Top beginners left as roots.
    pub tops: BTreeSet<SenseKey>,
    /// Other nodes hung directly from the primitive: unresolved genus,
    /// broken cycles, or everything when there are no tops.
    pub root_attached: BTreeSet<SenseKey>,
    pub cycles: Vec<CycleReport>,
}

/// Senses of the top-beginner words that are themselves labelled `tag`.
pub fn top_senses<'a>(
    top_words: &BTreeSet<String>,
    senses: impl IntoIterator<Item = &'a ResolvedSense>,
    tag: &SemanticTag,
) -> BTreeSet<SenseKey> {
    senses
        .into_iter()
        .filter(|s| &s.tag == tag && top_words.contains(&s.key.0))
        .map(|s| s.key.clone())
        .collect()
}

/// Links tops whose resolved genus is another top. Cycles lose their
/// lowest-weight edge.
pub fn structure_tops<'a>(
    tops: &BTreeSet<SenseKey>,
    senses: impl IntoIterator<Item = &'a ResolvedSense>,
    weights: &GenusTable,
) -> TopStructure {
    let mut edges = BTreeMap::new();
    for s in senses {
        if !tops.contains(&s.key) {
            continue;
        }
        if let Some(p) = s.genus.sense() {
            if p != &s.key && tops.contains(p) {
                edges.insert(s.key.clone(), p.clone());
            }
        }
    }
    let cycles = break_cycles(&mut edges, weights);
    let roots = tops.iter().filter(|t| !edges.contains_key(*t)).cloned().collect();
    TopStructure { roots, edges, cycles }
}

/// Removes one edge per cycle of a child → parent map: the one whose
/// parent headword is least used as a genus, then the smallest child.
fn break_cycles(edges: &mut BTreeMap<SenseKey, SenseKey>, weights: &GenusTable) -> Vec<CycleReport> {
    let mut reports = Vec::new();
    // 0 unvisited, 1 on current walk, 2 done
    let mut state: BTreeMap<SenseKey, u8> = BTreeMap::new();
    let starts: Vec<SenseKey> = edges.keys().cloned().collect();
    for start in starts {
        if state.get(&start).copied().unwrap_or(0) != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(k) = cur {
            match state.get(&k).copied().unwrap_or(0) {
                0 => {
                    state.insert(k.clone(), 1);
                    walk.push(k.clone());
                    cur = edges.get(&k).cloned();
                }
                1 => {
                    let pos = walk.iter().position(|w| *w == k).expect("on walk");
                    let cycle: Vec<SenseKey> = walk[pos..].to_vec();
                    let child = cycle
                        .iter()
                        .min_by(|a, b| {
                            let wa = weights.count(&edges[*a].0);
                            let wb = weights.count(&edges[*b].0);
                            wa.cmp(&wb).then_with(|| a.cmp(b))
                        })
                        .expect("non-empty cycle")
                        .clone();
                    let parent = edges.remove(&child).expect("edge exists");
                    let i = cycle.iter().position(|c| *c == child).expect("member");
                    let mut members = cycle[i..].to_vec();
                    members.extend_from_slice(&cycle[..i]);
                    reports.push(CycleReport {
                        members,
                        dropped_child: child,
                        dropped_parent: parent,
                    });
                    break;
                }
                _ => break,
            }
        }
        for k in walk {
            state.insert(k, 2);
        }
    }
    reports
}

/// Assembles the taxonomy of one primitive.
///
/// Nodes are senses labelled `tag` whose parent chain reaches a top root
/// or the primitive root. The parent of a sense is its resolved genus
/// sense (or, for a structured top, the top it hangs from). Senses with an
/// unresolved genus hang from the primitive root. Without tops every
/// labelled sense hangs from the primitive root.
pub fn build_taxonomy<'a>(
    tag: &SemanticTag,
    tops: &TopStructure,
    senses: impl IntoIterator<Item = &'a ResolvedSense>,
    weights: &GenusTable,
) -> SenseTaxonomy {
    let labelled: BTreeMap<&SenseKey, &ResolvedSense> = senses
        .into_iter()
        .filter(|s| &s.tag == tag)
        .map(|s| (&s.key, s))
        .collect();
    let all_tops: BTreeSet<&SenseKey> = tops.roots.iter().chain(tops.edges.keys()).collect();

    if all_tops.is_empty() {
        let nodes: BTreeSet<SenseKey> = labelled.keys().map(|k| (*k).clone()).collect();
        return SenseTaxonomy {
            primitive: tag.clone(),
            root_attached: nodes.clone(),
            nodes,
            parents: BTreeMap::new(),
            tops: BTreeSet::new(),
            cycles: tops.cycles.clone(),
        };
    }

    let mut anchors_top = BTreeSet::new();
    let mut anchors_root = BTreeSet::new();
    let mut parents: BTreeMap<SenseKey, SenseKey> = BTreeMap::new();
    for (&key, s) in &labelled {
        if all_tops.contains(key) {
            match tops.edges.get(key) {
                Some(p) if labelled.contains_key(p) => {
                    parents.insert(key.clone(), p.clone());
                }
                _ => {
                    anchors_top.insert(key.clone());
                }
            }
            continue;
        }
        match &s.genus {
            GenusResolution::Unresolved => {
                anchors_root.insert(key.clone());
            }
            GenusResolution::Resolved { sense, .. } => {
                if sense != key && labelled.contains_key(sense) {
                    parents.insert(key.clone(), sense.clone());
                }
            }
        }
    }

    let mut cycles = tops.cycles.clone();
    let broken = break_cycles(&mut parents, weights);
    for c in &broken {
        anchors_root.insert(c.dropped_child.clone());
    }
    cycles.extend(broken);

    // A node is kept when its parent chain ends at an anchor.
    let mut keep: BTreeMap<SenseKey, bool> = BTreeMap::new();
    for &key in labelled.keys() {
        let mut chain = Vec::new();
        let mut cur = key.clone();
        let verdict = loop {
            if let Some(&v) = keep.get(&cur) {
                break v;
            }
            if anchors_top.contains(&cur) || anchors_root.contains(&cur) {
                break true;
            }
            chain.push(cur.clone());
            match parents.get(&cur) {
                Some(p) => cur = p.clone(),
                None => break false,
            }
        };
        if anchors_top.contains(&cur) || anchors_root.contains(&cur) {
            keep.insert(cur, true);
        }
        for k in chain {
            keep.insert(k, verdict);
        }
    }

    let nodes: BTreeSet<SenseKey> = keep.into_iter().filter(|(_, v)| *v).map(|(k, _)| k).collect();
    parents.retain(|k, _| nodes.contains(k));
    SenseTaxonomy {
        primitive: tag.clone(),
        tops: anchors_top.into_iter().filter(|k| nodes.contains(k)).collect(),
        root_attached: anchors_root.into_iter().filter(|k| nodes.contains(k)).collect(),
        nodes,
        parents,
        cycles,
    }
}

impl SenseTaxonomy {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes without a parent edge.
    pub fn roots(&self) -> impl Iterator<Item = &SenseKey> {
        self.nodes.iter().filter(|n| !self.parents.contains_key(*n))
    }

    /// Child → parent edges, both endpoints in the taxonomy.
    pub fn edges(&self) -> impl Iterator<Item = (&SenseKey, &SenseKey)> {
        self.parents.iter()
    }

    /// Number of nodes on the longest root-to-leaf chain.
    pub fn height(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| {
                let mut h = 1;
                let mut cur = n;
                while let Some(p) = self.parents.get(cur) {
                    h += 1;
                    cur = p;
                }
                h
            })
            .max()
            .unwrap_or(0)
    }

    /// `tag \t headword \t sense_no \t parent_headword \t parent_sense_no`,
    /// with `-` for primitive-root attachment.
    pub fn write_tsv(&self, out: &mut String) {
        for n in &self.nodes {
            match self.parents.get(n) {
                Some((ph, ps)) => {
                    let _ = writeln!(out, "{}\t{}\t{}\t{ph}\t{ps}", self.primitive, n.0, n.1);
                }
                None => {
                    let _ = writeln!(out, "{}\t{}\t{}\t-\t-", self.primitive, n.0, n.1);
                }
            }
        }
    }

    /// Reads taxonomies back from [`write_tsv`](Self::write_tsv) rows.
    /// Roots come back as `root_attached`; the file does not say which
    /// roots were tops.
    pub fn parse_tsv(text: &str, source_name: &str) -> Result<Vec<SenseTaxonomy>> {
        let mut by_tag: BTreeMap<SemanticTag, SenseTaxonomy> = BTreeMap::new();
        for rec in records(text) {
            rec.expect_columns(source_name, 5, 5)?;
            let sense = |i: usize| -> Result<u32> {
                rec.field(i)
                    .parse()
                    .map_err(|_| Error::parse(source_name, rec.line, format!("bad sense number `{}`", rec.field(i))))
            };
            let tag = SemanticTag::new(rec.field(0));
            let tax = by_tag.entry(tag.clone()).or_insert_with(|| SenseTaxonomy {
                primitive: tag,
                nodes: BTreeSet::new(),
                parents: BTreeMap::new(),
                tops: BTreeSet::new(),
                root_attached: BTreeSet::new(),
                cycles: Vec::new(),
            });
            let key = (rec.field(1).to_owned(), sense(2)?);
            if rec.field(3) == "-" {
                tax.root_attached.insert(key.clone());
            } else {
                tax.parents.insert(key.clone(), (rec.field(3).to_owned(), sense(4)?));
            }
            tax.nodes.insert(key);
        }
        for tax in by_tag.values() {
            if let Some((c, _)) = tax.parents.iter().find(|(_, p)| !tax.nodes.contains(*p)) {
                return Err(Error::parse(
                    source_name,
                    0,
                    format!("{} {} {} has a parent outside the taxonomy", tax.primitive, c.0, c.1),
                ));
            }
        }
        Ok(by_tag.into_values().collect())
    }
}
