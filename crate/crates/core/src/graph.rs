//! Labeled simple graphs on `0..n` stored as adjacency bitsets.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, SwitchFault};
use crate::seq::DegreeSequence;

pub type Vertex = usize;

/// A labeled undirected simple graph.
///
/// Each vertex owns a row of `words` 64-bit words; bit `v` of row `u` is set
/// iff `uv` is an edge. Rows are kept symmetric and loop-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SimpleGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, true);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, repeats and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn row(&self, u: Vertex) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, u: Vertex, v: Vertex, on: bool) {
        let (wu, wv) = (u * self.words + v / 64, v * self.words + u / 64);
        if on {
            self.rows[wu] |= 1 << (v % 64);
            self.rows[wv] |= 1 << (u % 64);
        } else {
            self.rows[wu] &= !(1 << (v % 64));
            self.rows[wv] &= !(1 << (u % 64));
        }
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn try_add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.set(u, v, true);
        Ok(())
    }

    /// Adds `uv`; a no-op if present. Panics on loops or bad endpoints.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert!(u != v && u < self.n && v < self.n, "bad edge {u}-{v}");
        self.set(u, v, true);
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if u < self.n && v < self.n && u != v {
            self.set(u, v, false);
        }
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.row(u)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * 64 + b))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges, ε(G).
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// The subgraph induced by `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.set(i, j, true);
                }
            }
        }
        g
    }

    /// ε(G[0..k]): edges among the first `k` vertices.
    pub fn induced_edge_count_prefix(&self, k: usize) -> usize {
        (0..k)
            .map(|u| (u + 1..k).filter(|&v| self.has_edge(u, v)).count())
            .sum()
    }

    /// Vertex `v` of the result is vertex `perm[v]` of `self`.
    pub fn permuted(&self, perm: &[Vertex]) -> SimpleGraph {
        assert_eq!(perm.len(), self.n);
        self.induced(perm)
    }

    /// Disjoint union; `other` is shifted to `self.n()..`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set(u + self.n, v + self.n, true);
        }
        g
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.set(u, self.n + v, true);
            }
        }
        g
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        g
    }

    /// Replaces edges `ab`, `cd` by `ac`, `bd`. Every degree is unchanged.
    pub fn two_switch(&self, ab: (Vertex, Vertex), cd: (Vertex, Vertex)) -> Result<SimpleGraph> {
        let (a, b) = ab;
        let (c, d) = cd;
        if [a, b, c, d].iter().any(|&x| x >= self.n) {
            return Err(Error::SwitchRejected(SwitchFault::MissingEdge));
        }
        if [a, b, c, d].iter().tuple_combinations().any(|(x, y)| x == y) {
            return Err(Error::SwitchRejected(SwitchFault::RepeatedVertex));
        }
        if !self.has_edge(a, b) || !self.has_edge(c, d) {
            return Err(Error::SwitchRejected(SwitchFault::MissingEdge));
        }
        if self.has_edge(a, c) || self.has_edge(b, d) {
            return Err(Error::SwitchRejected(SwitchFault::TargetEdgeExists));
        }
        let mut g = self.clone();
        g.set(a, b, false);
        g.set(c, d, false);
        g.set(a, c, true);
        g.set(b, d, true);
        Ok(g)
    }

    /// Nonincreasing degree multiset.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let degrees = self.degrees().into_iter().map(|d| d as u32).collect();
        DegreeSequence::from_unsorted(degrees).0
    }

    /// Whether vertex `i` has degree `seq.d(i + 1)` for every `i`.
    pub fn realizes_labeled(&self, seq: &DegreeSequence) -> bool {
        self.n == seq.len() && (0..self.n).all(|u| self.degree(u) == seq.terms()[u] as usize)
    }

    /// Minimum upper-triangle adjacency encoding over all vertex orders.
    ///
    /// Two graphs are isomorphic iff their canonical forms match. Cost is
    /// `n!`, so this refuses `n > 10`.
    pub fn canonical_form(&self) -> Result<Vec<bool>> {
        if self.n > 10 {
            return Err(Error::LimitExceeded(format!(
                "canonical form needs n <= 10, got {}",
                self.n
            )));
        }
        let mut best: Option<Vec<bool>> = None;
        for perm in (0..self.n).permutations(self.n) {
            let code: Vec<bool> = (0..self.n)
                .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
                .map(|(i, j)| !self.has_edge(perm[i], perm[j]))
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        Ok(best.unwrap_or_default())
    }

    /// Renders the `n m` / `u v` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the `n m` / `u v` text format. Blank lines and `#` comments are
    /// skipped.
    pub fn parse_text(text: &str) -> Result<SimpleGraph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut g = SimpleGraph::empty(n);
        let mut seen = 0;
        for line in lines {
            let (u, v) = parse_pair(line)?;
            g.try_add_edge(u, v).map_err(|e| Error::Parse(e.to_string()))?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse(format!("header promises {m} edges, found {seen}")));
        }
        Ok(g)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::Parse(format!("expected two integers in {line:?}")))?;
        tok.parse().map_err(|_| Error::Parse(format!("bad integer {tok:?}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(Error::Parse(format!("trailing tokens in {line:?}")));
    }
    Ok(pair)
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for SimpleGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

/// Serialized as `{ "n": .., "edges": [[u, v], ..] }`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        SimpleGraph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Iterates the set bit positions of a word.
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn basic_invariants() {
        let g = SimpleGraph::complete(4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree_sequence().terms(), &[3, 3, 3, 3]);
        assert_eq!(SimpleGraph::empty(3).degree_sequence().terms(), &[0, 0, 0]);
        assert_eq!(g.induced(&[0, 2]).edge_count(), 1);
        assert_eq!(g.induced_edge_count_prefix(3), 3);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(SimpleGraph::from_edges(3, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            SimpleGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            SimpleGraph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn wide_graphs_use_several_words() {
        let mut g = SimpleGraph::empty(130);
        g.add_edge(0, 129);
        g.add_edge(64, 65);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![129]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 129), (64, 65)]);
        assert_eq!(SimpleGraph::complete(70).edge_count(), 70 * 69 / 2);
    }

    #[test]
    fn two_switch_on_four_cycle() {
        let c4 = cycle(4); // 01 12 23 30
        let g = c4.two_switch((0, 1), (2, 3)).unwrap();
        let expected = SimpleGraph::from_edges(4, [(0, 2), (1, 3), (1, 2), (0, 3)]).unwrap();
        assert_eq!(g, expected);
        assert_eq!(g.degrees(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn two_switch_on_path() {
        let p = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let g = p.two_switch((0, 1), (2, 3)).unwrap();
        assert_eq!(g, SimpleGraph::from_edges(4, [(0, 2), (1, 3), (1, 2)]).unwrap());
        assert_eq!(g.degrees(), p.degrees());
    }

    #[test]
    fn two_switch_rejections() {
        let c4 = cycle(4);
        // 0-1 and 1-2: shared vertex
        assert_eq!(
            c4.two_switch((0, 1), (1, 2)),
            Err(Error::SwitchRejected(SwitchFault::RepeatedVertex))
        );
        assert_eq!(
            c4.two_switch((0, 2), (1, 3)),
            Err(Error::SwitchRejected(SwitchFault::MissingEdge))
        );
        // ac = 0-3 already present
        assert_eq!(
            c4.two_switch((0, 1), (3, 2)),
            Err(Error::SwitchRejected(SwitchFault::TargetEdgeExists))
        );
    }

    #[test]
    fn text_format() {
        let g = cycle(5);
        let text = g.to_text();
        assert!(text.starts_with("5 5\n"));
        assert_eq!(SimpleGraph::parse_text(&text).unwrap(), g);
        assert_eq!(
            SimpleGraph::parse_text("# comment\n3 1\n\n0 2 # edge\n").unwrap(),
            SimpleGraph::from_edges(3, [(0, 2)]).unwrap()
        );
        for bad in [
            "",
            "3",
            "3 1\n0 0\n",
            "3 2\n0 1\n",
            "3 1\n0 x\n",
            "3 1\n0 1 2\n",
            "2 1\n0 5\n",
        ] {
            assert!(SimpleGraph::parse_text(bad).unwrap_err().is_parse(), "{bad:?}");
        }
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let p = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = SimpleGraph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(p.canonical_form().unwrap(), q.canonical_form().unwrap());
        assert_ne!(p.canonical_form().unwrap(), star.canonical_form().unwrap());
        assert!(SimpleGraph::empty(11).canonical_form().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let g = cycle(4);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<SimpleGraph>(&json).unwrap(), g);
        assert!(serde_json::from_str::<SimpleGraph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }
}
