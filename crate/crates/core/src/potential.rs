//! Deciding whether a graphical sequence has a realization containing a
//! pattern, and reshaping realizations with 2-switches.

use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::embed::{contains, Embedding};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::realize::{complete_first, for_each_realization};
use crate::seq::{is_graphical, DegreeSequence};
use crate::Limits;

/// A realization of the sequence together with a copy of the pattern in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialWitness {
    pub realization: SimpleGraph,
    pub embedding: Embedding,
}

impl PotentialWitness {
    /// Vertex `i` of the realization has degree `d_i` and the embedding maps
    /// every pattern edge onto a realization edge.
    pub fn is_valid(&self, seq: &DegreeSequence, pattern: &SimpleGraph) -> bool {
        self.realization.realizes_labeled(seq) && self.embedding.is_valid(pattern, &self.realization)
    }

    /// Whether the pattern sits on host vertices whose degrees are the top
    /// `|V(H)|` values of the sequence (as a multiset).
    pub fn is_top_placed(&self, seq: &DegreeSequence) -> bool {
        let k = self.embedding.0.len();
        let mut got: Vec<u32> = self.embedding.0.iter().map(|&v| seq.terms()[v]).collect();
        got.sort_by(|a, b| b.cmp(a));
        got == seq.terms()[..k]
    }
}

/// How [`is_potentially_with`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SearchMode {
    /// Place the pattern on the highest-degree vertices, then complete the
    /// remaining degrees.
    #[default]
    Pruned,
    /// Enumerate every realization and test containment in each. Debug aid;
    /// subject to the realization size limit.
    Exhaustive,
}

fn check_pre(seq: &DegreeSequence, pattern: &SimpleGraph) -> Result<()> {
    if !is_graphical(seq) {
        return Err(Error::NotGraphical);
    }
    if pattern.n() > seq.len() {
        return Err(Error::PatternTooLarge {
            pattern: pattern.n(),
            host: seq.len(),
        });
    }
    Ok(())
}

/// Searches for a realization of `seq` containing `pattern`.
pub fn is_potentially(seq: &DegreeSequence, pattern: &SimpleGraph) -> Result<Option<PotentialWitness>> {
    is_potentially_with(seq, pattern, SearchMode::Pruned, &Limits::default())
}

pub fn is_potentially_with(
    seq: &DegreeSequence,
    pattern: &SimpleGraph,
    mode: SearchMode,
    limits: &Limits,
) -> Result<Option<PotentialWitness>> {
    check_pre(seq, pattern)?;
    let found = match mode {
        SearchMode::Pruned => top_placed_search(seq, pattern, limits)?,
        SearchMode::Exhaustive => {
            let mut found = None;
            for_each_realization(seq, limits, |g| match contains(g, pattern) {
                Some(embedding) => {
                    found = Some(PotentialWitness {
                        realization: g.clone(),
                        embedding,
                    });
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            })?;
            found
        }
    };
    if let Some(w) = &found {
        assert!(w.is_valid(seq, pattern), "invalid witness for {seq}");
    }
    Ok(found)
}

/// Tries every placement of the pattern onto host vertices `0..k` (the `k`
/// largest degrees) and completes each to a realization.
///
/// Equal degrees are interchangeable, so restricting to positions `0..k`
/// loses nothing: any realization with the pattern on a top-degree vertex
/// set can be relabeled within degree classes to put it there.
fn top_placed_search(seq: &DegreeSequence, pattern: &SimpleGraph, limits: &Limits) -> Result<Option<PotentialWitness>> {
    let n = seq.len();
    let k = pattern.n();
    let d = seq.terms();
    let pdeg = pattern.degrees();
    // Pattern vertices by decreasing degree; the identity placement pairs the
    // largest pattern degrees with the largest host degrees.
    let mut by_degree: Vec<usize> = (0..k).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(pdeg[v]));

    let mut tried: HashSet<SimpleGraph> = HashSet::new();
    for perm in (0..k).permutations(k) {
        // host position i receives pattern vertex by_degree[perm[i]]
        let fits = (0..k).all(|i| pdeg[by_degree[perm[i]]] as u32 <= d[i]);
        if !fits {
            continue;
        }
        let mut map = vec![0; k];
        for (i, &p) in perm.iter().enumerate() {
            map[by_degree[p]] = i;
        }
        let mut forced = SimpleGraph::empty(n);
        for (a, b) in pattern.edges() {
            forced.add_edge(map[a], map[b]);
        }
        if !tried.insert(forced.clone()) {
            continue;
        }
        if let Some(realization) = complete_first(d, forced, limits.node_budget)? {
            return Ok(Some(PotentialWitness {
                realization,
                embedding: Embedding(map),
            }));
        }
    }
    Ok(None)
}

/// Whether some realization has a clique on its `r + 1` highest-degree
/// vertices.
pub fn is_potentially_clique_top(seq: &DegreeSequence, r: usize) -> Result<bool> {
    if seq.len() < r + 1 {
        return Err(Error::PatternTooLarge {
            pattern: r + 1,
            host: seq.len(),
        });
    }
    let clique = SimpleGraph::complete(r + 1);
    // A clique has a single placement up to relabeling, so the top-placed
    // search is exactly the induced-clique question.
    let w = is_potentially(seq, &clique)?;
    if let Some(w) = &w {
        debug_assert!(w.is_top_placed(seq));
        debug_assert_eq!(w.realization.induced_edge_count_prefix(r + 1), r * (r + 1) / 2);
    }
    Ok(w.is_some())
}

/// Starting from a realization `g` of `seq` (vertex `i` has degree `d_i`)
/// whose top `r + 1` vertices do not induce a clique, finds a realization
/// with the same per-vertex degrees and no edge between vertices `r - 1` and
/// `r` (0-based, i.e. `v_r v_{r+1}`).
///
/// Breadth-first over 2-switches, visiting at most `limits.switch_states`
/// graphs. `Ok(None)` means the whole switch class was exhausted without a
/// hit; exceeding the cap is an error.
pub fn edge_excluded_realization(
    seq: &DegreeSequence,
    r: usize,
    g: &SimpleGraph,
    limits: &Limits,
) -> Result<Option<SimpleGraph>> {
    if r == 0 || r + 1 > seq.len() {
        return Err(Error::OutOfRange(format!(
            "r = {r} needs 1 <= r and r + 1 <= n = {}",
            seq.len()
        )));
    }
    if !g.realizes_labeled(seq) {
        return Err(Error::Precondition(
            "graph does not realize the sequence vertex by vertex".into(),
        ));
    }
    let full = r * (r + 1) / 2;
    if g.induced_edge_count_prefix(r + 1) >= full {
        return Err(Error::Precondition(format!(
            "top {} vertices induce all {full} edges",
            r + 1
        )));
    }
    let (a, b) = (r - 1, r);
    let mut seen: HashSet<SimpleGraph> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(g.clone());
    queue.push_back(g.clone());
    while let Some(cur) = queue.pop_front() {
        if !cur.has_edge(a, b) {
            return Ok(Some(cur));
        }
        let edges: Vec<_> = cur.edges().collect();
        for (i, &(p, q)) in edges.iter().enumerate() {
            for &(s, t) in &edges[i + 1..] {
                for cd in [(s, t), (t, s)] {
                    let Ok(next) = cur.two_switch((p, q), cd) else {
                        continue;
                    };
                    if seen.contains(&next) {
                        continue;
                    }
                    if seen.len() >= limits.switch_states {
                        return Err(Error::LimitExceeded(format!(
                            "2-switch search visited {} states without removing v{}v{}",
                            seen.len(),
                            r,
                            r + 1
                        )));
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(None)
}
