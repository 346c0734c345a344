//! Conceptual distance: the cheapest hyper/hyponym path between any sense
//! of one word and any sense of another, where every synset on the path
//! (endpoints included) costs the reciprocal of its depth.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use super::{SynsetId, WordNetGraph};

/// Exact path cost. `i128` keeps sums of `1/depth` exact for skeletons
/// far deeper than any real wordnet.
pub type Cost = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(Cost),
    Infinite,
}

impl Distance {
    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Finite(c) => c.to_f64().unwrap_or(f64::INFINITY),
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(c) => write!(f, "{c}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptualDistance {
    pub distance: Distance,
    /// The (first word's synset, second word's synset) pair realising the
    /// minimum.
    pub pair: Option<(SynsetId, SynsetId)>,
    /// The chosen path, from the first synset of `pair` to the second.
    pub path: Vec<SynsetId>,
}

impl ConceptualDistance {
    fn unreachable() -> Self {
        ConceptualDistance {
            distance: Distance::Infinite,
            pair: None,
            path: Vec::new(),
        }
    }
}

impl WordNetGraph {
    pub fn conceptual_distance(&self, w1: &str, w2: &str) -> ConceptualDistance {
        self.search(self.word_indices(w1), self.word_indices(w2))
    }

    /// Like [`conceptual_distance`](Self::conceptual_distance) but between
    /// explicit synset sets. Unknown ids are ignored.
    pub fn synset_distance<'a>(
        &self,
        from: impl IntoIterator<Item = &'a SynsetId>,
        to: impl IntoIterator<Item = &'a SynsetId>,
    ) -> ConceptualDistance {
        let mut a: Vec<usize> = from.into_iter().filter_map(|s| self.index_of(s.as_str())).collect();
        let mut b: Vec<usize> = to.into_iter().filter_map(|s| self.index_of(s.as_str())).collect();
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        self.search(&a, &b)
    }

    fn node_cost(&self, i: usize) -> Cost {
        Cost::new(1, i128::from(self.depth_at(i)))
    }

    /// Multi-source uniform-cost search. Heap keys are (cost, index path);
    /// indices order like ids, so equal-cost ties resolve to the
    /// lexicographically smallest id sequence.
    fn search(&self, sources: &[usize], targets: &[usize]) -> ConceptualDistance {
        if sources.is_empty() || targets.is_empty() {
            return ConceptualDistance::unreachable();
        }
        let mut is_target = vec![false; self.len()];
        for &t in targets {
            is_target[t] = true;
        }
        let mut settled = vec![false; self.len()];
        let mut heap: BinaryHeap<Reverse<(Cost, Vec<usize>)>> = sources
            .iter()
            .map(|&s| Reverse((self.node_cost(s), vec![s])))
            .collect();

        while let Some(Reverse((cost, path))) = heap.pop() {
            let last = *path.last().expect("paths are non-empty");
            if settled[last] {
                continue;
            }
            settled[last] = true;
            if is_target[last] {
                let ids: Vec<SynsetId> = path.iter().map(|&i| self.synset_at(i).id.clone()).collect();
                return ConceptualDistance {
                    distance: Distance::Finite(cost),
                    pair: Some((ids[0].clone(), ids[ids.len() - 1].clone())),
                    path: ids,
                };
            }
            for next in self.neighbours(last) {
                if !settled[next] {
                    let mut p = path.clone();
                    p.push(next);
                    heap.push(Reverse((cost + self.node_cost(next), p)));
                }
            }
        }
        ConceptualDistance::unreachable()
    }
}
