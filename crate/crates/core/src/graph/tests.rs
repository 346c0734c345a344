use std::collections::BTreeSet;

use super::*;

const TOY: &str = include_str!("../../fixtures/toy_wordnet.tsv");

fn toy() -> WordNetGraph {
    WordNetGraph::from_tsv(TOY, "toy").unwrap()
}

fn ratio(n: i128, d: i128) -> Distance {
    Distance::Finite(Cost::new(n, d))
}

/// Exhaustive simple-path enumeration with independently recomputed depths.
fn brute_distance(g: &WordNetGraph, w1: &str, w2: &str) -> Distance {
    fn depth(g: &WordNetGraph, id: &SynsetId) -> i128 {
        let s = g.synset(id.as_str()).unwrap();
        s.hypernyms.iter().map(|h| 1 + depth(g, h)).min().unwrap_or(1)
    }
    fn walk(g: &WordNetGraph, cur: &SynsetId, goal: &BTreeSet<SynsetId>, seen: &mut Vec<SynsetId>, acc: Cost, best: &mut Option<Cost>) {
        let acc = acc + Cost::new(1, depth(g, cur));
        if goal.contains(cur) && best.as_ref().is_none_or(|b| acc < *b) {
            *best = Some(acc);
        }
        seen.push(cur.clone());
        let s = g.synset(cur.as_str()).unwrap();
        for n in s.hypernyms.iter().chain(&s.hyponyms) {
            if !seen.contains(n) {
                walk(g, n, goal, seen, acc, best);
            }
        }
        seen.pop();
    }
    let goal: BTreeSet<SynsetId> = g.synsets_of(w2).map(|s| s.id.clone()).collect();
    let mut best = None;
    for s in g.synsets_of(w1) {
        walk(g, &s.id, &goal, &mut Vec::new(), Cost::new(0, 1), &mut best);
    }
    best.map_or(Distance::Infinite, Distance::Finite)
}

#[test]
fn loads_toy_counts() {
    let g = toy();
    assert_eq!(g.len(), 7);
    assert_eq!(g.hypernym_edge_count(), 6);
    assert_eq!(g.synset("n.juice").unwrap().hyponyms.iter().map(|s| s.as_str()).collect::<Vec<_>>(), vec!["n.wine"]);
}

#[test]
fn lemma_index_is_inverse_of_lemmas() {
    let g = toy();
    for w in g.words() {
        for s in g.synsets_of(w) {
            assert!(s.lemmas.iter().any(|l| l == w));
        }
    }
    for s in g.synsets() {
        for l in &s.lemmas {
            assert!(g.synsets_of(l).any(|t| t.id == s.id));
        }
    }
}

#[test]
fn dangling_reference_names_record() {
    let err = WordNetGraph::from_tsv("a\tn\tTops\ta\t\nb\tn\tfood\tb\tzzz\n", "bad").unwrap_err();
    match err {
        Error::DanglingReference { line, synset, target, .. } => {
            assert_eq!((line, synset.as_str(), target.as_str()), (2, "b", "zzz"));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn cycle_is_listed() {
    let err = WordNetGraph::from_tsv("a\tn\tTops\ta\tb\nb\tn\tTops\tb\ta\n", "cyc").unwrap_err();
    let Error::Cycle(ids) = err else { panic!("expected cycle") };
    let members: BTreeSet<_> = ids.iter().map(String::as_str).collect();
    assert_eq!(members, BTreeSet::from(["a", "b"]));
    assert_eq!(ids.first(), ids.last());
}

#[test]
fn self_hypernym_is_a_cycle() {
    let err = WordNetGraph::from_tsv("a\tn\tTops\ta\ta\n", "self").unwrap_err();
    assert!(matches!(err, Error::Cycle(_)));
}

#[test]
fn missing_lemmas_rejected() {
    let err = WordNetGraph::from_tsv("a\tn\tTops\t\t\n", "x").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 1, .. }));
}

#[test]
fn depth_conventions() {
    let g = toy();
    assert_eq!(g.depth("n.entity").unwrap(), 1);
    assert_eq!(g.depth("n.beverage").unwrap(), 3);
    assert_eq!(g.depth("n.wine").unwrap(), 5);
    assert!(matches!(g.depth("nope"), Err(Error::NotFound(_))));
}

#[test]
fn multi_parent_depth_takes_shallowest() {
    // m has parents at depth 2 (b) and 5 (e).
    let recs = vec![
        SynsetRecord::new("a", "Tops", &["a"], &[]),
        SynsetRecord::new("b", "x", &["b"], &["a"]),
        SynsetRecord::new("c", "x", &["c"], &["b"]),
        SynsetRecord::new("d", "x", &["d"], &["c"]),
        SynsetRecord::new("e", "x", &["e"], &["d"]),
        SynsetRecord::new("m", "x", &["m"], &["b", "e"]),
    ];
    let g = WordNetGraph::from_records(recs, "mp").unwrap();
    assert_eq!(g.depth("e").unwrap(), 5);
    assert_eq!(g.depth("m").unwrap(), 3);
}

#[test]
fn distance_to_self_is_reciprocal_depth() {
    let g = toy();
    let d = g.conceptual_distance("wine", "wine");
    assert_eq!(d.distance, ratio(1, 5));
    assert_eq!(d.pair, Some((SynsetId::from("n.wine"), SynsetId::from("n.wine"))));
}

#[test]
fn wine_juice_matches_oracle() {
    let g = toy();
    let d = g.conceptual_distance("wine", "juice");
    // wine (depth 5) + juice (depth 4)
    assert_eq!(d.distance, ratio(9, 20));
    assert_eq!(d.distance, brute_distance(&g, "wine", "juice"));
    assert_eq!(d.pair, Some((SynsetId::from("n.wine"), SynsetId::from("n.juice"))));
}

#[test]
fn unknown_word_is_infinite() {
    let g = toy();
    let d = g.conceptual_distance("wine", "unknownword");
    assert_eq!(d.distance, Distance::Infinite);
    assert!(d.pair.is_none());
}

#[test]
fn distance_symmetric_and_matches_oracle_on_all_pairs() {
    let g = toy();
    let words: Vec<String> = g.words().map(str::to_owned).collect();
    for a in &words {
        for b in &words {
            let ab = g.conceptual_distance(a, b);
            let ba = g.conceptual_distance(b, a);
            assert_eq!(ab.distance, ba.distance, "{a} {b}");
            assert_eq!(ab.distance, brute_distance(&g, a, b), "{a} {b}");
        }
    }
}

#[test]
fn matching_is_case_insensitive() {
    let g = toy();
    assert_eq!(g.conceptual_distance(" Wine", "JUICE").distance, ratio(9, 20));
}

#[test]
fn equal_cost_ties_pick_smallest_id_sequence() {
    // Two parents of equal depth give two equal-cost routes from x to y.
    let recs = vec![
        SynsetRecord::new("r", "Tops", &["r"], &[]),
        SynsetRecord::new("p2", "t", &["p"], &["r"]),
        SynsetRecord::new("p1", "t", &["p"], &["r"]),
        SynsetRecord::new("x", "t", &["x"], &["p1", "p2"]),
        SynsetRecord::new("y", "t", &["y"], &["p1", "p2"]),
    ];
    let g = WordNetGraph::from_records(recs, "tie").unwrap();
    let d = g.conceptual_distance("x", "y");
    let path: Vec<_> = d.path.iter().map(SynsetId::as_str).collect();
    assert_eq!(path, vec!["x", "p1", "y"]);
    // word "p" has two synsets at equal depth; the first id wins
    assert_eq!(g.conceptual_distance("p", "p").pair.unwrap().0.as_str(), "p1");
}

#[test]
fn structural_relations() {
    let g = toy();
    assert_eq!(g.structural_relation("beverage", "drink"), BTreeSet::from([StructuralRelation::SharedSynset]));
    assert_eq!(g.structural_relation("wine", "juice"), BTreeSet::from([StructuralRelation::DirectHyponym]));
    assert_eq!(g.structural_relation("juice", "wine"), BTreeSet::from([StructuralRelation::DirectHypernym]));
    assert_eq!(g.structural_relation("food", "animal"), BTreeSet::from([StructuralRelation::Sibling]));
    assert_eq!(g.structural_relation("dog", "wine"), BTreeSet::from([StructuralRelation::None]));
    assert_eq!(g.structural_relation("foo", "bar"), BTreeSet::from([StructuralRelation::None]));
}

#[test]
fn hypernym_and_hyponym_paths() {
    let g = toy();
    let paths = g.hypernym_paths("n.wine", 2);
    let up: Vec<Vec<&str>> = paths
        .iter()
        .map(|p| p.iter().map(SynsetId::as_str).collect())
        .collect();
    assert_eq!(up, vec![vec!["n.wine", "n.juice"], vec!["n.wine", "n.juice", "n.beverage"]]);
    let down = g.hyponym_paths("n.entity", 1);
    assert_eq!(down.len(), 2);
}
