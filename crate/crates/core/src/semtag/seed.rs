use rayon::prelude::*;

use super::{Definition, Method, Primitives, TaggedDefinition};
use crate::bilingual::HomogeneousBilingual;
use crate::graph::{Distance, SynsetId, WordNetGraph};
use crate::text::Stoplist;

/// Tags definitions whose headword and genus both translate, using the
/// primitive of the headword-side synset of the closest concept pair.
/// Everything else is skipped. Output is in input order.
pub fn tag_seed_by_distance(
    defs: &[Definition],
    bi: &HomogeneousBilingual,
    g: &WordNetGraph,
    primitives: &Primitives,
    stoplist: &Stoplist,
) -> Vec<TaggedDefinition> {
    defs.par_iter()
        .filter_map(|d| seed_one(d, bi, g, primitives, stoplist))
        .collect()
}

fn seed_one(
    d: &Definition,
    bi: &HomogeneousBilingual,
    g: &WordNetGraph,
    primitives: &Primitives,
    stoplist: &Stoplist,
) -> Option<TaggedDefinition> {
    let genus = super::extract_genus(d, stoplist)?;
    let head_tr = bi.translations(&d.headword)?;
    let genus_tr = bi.translations(&genus)?;
    let head_synsets: Vec<SynsetId> = head_tr
        .iter()
        .flat_map(|w| g.synsets_of(w).map(|s| s.id.clone()))
        .collect();
    let genus_synsets: Vec<SynsetId> = genus_tr
        .iter()
        .flat_map(|w| g.synsets_of(w).map(|s| s.id.clone()))
        .collect();
    let found = g.synset_distance(&head_synsets, &genus_synsets);
    let Distance::Finite(_) = found.distance else {
        return None;
    };
    let (head_side, _) = found.pair?;
    let tag = primitives.tag_of(g.synset(head_side.as_str())?)?;
    Some(TaggedDefinition {
        definition: d.clone(),
        tag,
        score: found.distance.to_f64(),
        method: Method::DistanceSeed,
        ambiguous: false,
    })
}
