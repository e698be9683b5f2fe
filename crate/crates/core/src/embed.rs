//! Subgraph containment (not induced) by degree-ordered backtracking.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitIter, SimpleGraph, Vertex};
use crate::pattern::PatternSpec;

/// Injective map from pattern vertices to host vertices: `map[p]` is the
/// image of pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding(pub Vec<Vertex>);

impl Embedding {
    pub fn image(&self, p: Vertex) -> Vertex {
        self.0[p]
    }

    /// Injective, in range, and every pattern edge lands on a host edge.
    pub fn is_valid(&self, pattern: &SimpleGraph, host: &SimpleGraph) -> bool {
        if self.0.len() != pattern.n() || self.0.iter().any(|&v| v >= host.n()) {
            return false;
        }
        let mut seen = vec![false; host.n()];
        for &v in &self.0 {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        pattern.edges().all(|(a, b)| host.has_edge(self.0[a], self.0[b]))
    }
}

/// Search plan for one pattern: vertex order plus, for each step, the earlier
/// steps it must be adjacent to.
struct Plan {
    order: Vec<Vertex>,
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    /// Pattern vertices by decreasing degree; ties go to the vertex with more
    /// already-ordered neighbors, then to the lower label.
    fn new(pattern: &SimpleGraph) -> Plan {
        let k = pattern.n();
        let deg = pattern.degrees();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        for _ in 0..k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let linked = pattern.neighbors(v).filter(|&u| placed[u]).count();
                    (deg[v], linked, std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| (0..i).filter(|&j| pattern.has_edge(v, order[j])).collect())
            .collect();
        let degree = order.iter().map(|&v| deg[v]).collect();
        Plan { order, back, degree }
    }
}

struct Search<'a> {
    host: &'a SimpleGraph,
    plan: &'a Plan,
    host_degree: Vec<usize>,
    images: Vec<Vertex>,
    used: Vec<u64>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Found,
    Exhausted,
    Budget,
}

impl Search<'_> {
    fn candidates(&self, step: usize) -> Vec<u64> {
        let words = self.host.words();
        let mut mask = vec![!0u64; words];
        // clip to 0..n
        let n = self.host.n();
        for (w, m) in mask.iter_mut().enumerate() {
            let lo = w * 64;
            if lo >= n {
                *m = 0;
            } else if n - lo < 64 {
                *m = (1u64 << (n - lo)) - 1;
            }
            *m &= !self.used[w];
        }
        for &j in &self.plan.back[step] {
            let row = self.host.row(self.images[j]);
            for (m, r) in mask.iter_mut().zip(row) {
                *m &= r;
            }
        }
        mask
    }

    fn run(&mut self, step: usize) -> Outcome {
        if step == self.plan.order.len() {
            return Outcome::Found;
        }
        let need = self.plan.degree[step];
        let mask = self.candidates(step);
        for (w, &bits) in mask.iter().enumerate() {
            for b in BitIter(bits) {
                let v = w * 64 + b;
                if self.host_degree[v] < need {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Outcome::Budget;
                }
                self.images[step] = v;
                self.used[w] |= 1 << b;
                match self.run(step + 1) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
                self.used[w] &= !(1 << b);
            }
        }
        Outcome::Exhausted
    }
}

fn search(
    host: &SimpleGraph,
    plan: &Plan,
    first: Option<Vertex>,
    budget: u64,
) -> (std::result::Result<Option<Embedding>, ()>, u64) {
    let k = plan.order.len();
    let mut s = Search {
        host,
        plan,
        host_degree: host.degrees(),
        images: vec![0; k],
        used: vec![0; host.words()],
        nodes: 0,
        budget,
    };
    let outcome = match first {
        None => s.run(0),
        Some(v) => {
            s.images[0] = v;
            s.used[v / 64] |= 1 << (v % 64);
            s.nodes = 1;
            s.run(1)
        }
    };
    let result = match outcome {
        Outcome::Found => {
            let mut map = vec![0; k];
            for (step, &p) in plan.order.iter().enumerate() {
                map[p] = s.images[step];
            }
            Ok(Some(Embedding(map)))
        }
        Outcome::Exhausted => Ok(None),
        Outcome::Budget => Err(()),
    };
    (result, s.nodes)
}

/// Finds an embedding of `pattern` into `host` as a (not necessarily induced)
/// subgraph. Deterministic: the first embedding in search order.
pub fn contains(host: &SimpleGraph, pattern: &SimpleGraph) -> Option<Embedding> {
    contains_budgeted(host, pattern, u64::MAX).expect("unbounded search cannot run out of budget")
}

/// As [`contains`], but refuses once `budget` search nodes have been visited.
pub fn contains_budgeted(host: &SimpleGraph, pattern: &SimpleGraph, budget: u64) -> Result<Option<Embedding>> {
    contains_counted(host, pattern, budget).0
}

/// As [`contains_budgeted`], also reporting the number of search nodes used.
pub fn contains_counted(host: &SimpleGraph, pattern: &SimpleGraph, budget: u64) -> (Result<Option<Embedding>>, u64) {
    if pattern.n() > host.n() {
        return (Ok(None), 0);
    }
    if pattern.n() == 0 {
        return (Ok(Some(Embedding(Vec::new()))), 0);
    }
    let plan = Plan::new(pattern);
    let (r, nodes) = search(host, &plan, None, budget);
    (r.map_err(|_| Error::BudgetExhausted(budget)), nodes)
}

/// Parallel variant: the top-level choices are searched concurrently and the
/// embedding from the lowest-ordered successful branch is returned, so the
/// answer equals [`contains`]. `budget` applies per branch.
pub fn contains_par(host: &SimpleGraph, pattern: &SimpleGraph, budget: u64) -> Result<Option<Embedding>> {
    if pattern.n() > host.n() || pattern.n() == 0 {
        return contains_budgeted(host, pattern, budget);
    }
    let plan = Plan::new(pattern);
    let need = plan.degree[0];
    let firsts: Vec<Vertex> = (0..host.n()).filter(|&v| host.degree(v) >= need).collect();
    let found = firsts
        .par_iter()
        .map(|&v| search(host, &plan, Some(v), budget).0)
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        None => Ok(None),
        Some(Ok(e)) => Ok(e),
        Some(Err(())) => Err(Error::BudgetExhausted(budget)),
    }
}

/// Whether `u` meets the hypotheses placed on the removed graph in the
/// K_{r+1} − U threshold result: `7 <= |V(U)| <= r + 1`, at least 6 edges,
/// contains K_3 ∪ P_3, and contains neither C_4 nor Z_4.
pub fn validate_u(u: &SimpleGraph, r: usize) -> Result<bool> {
    if r < 6 {
        return Err(Error::OutOfRange(format!("r = {r}, need r >= 6")));
    }
    let k = u.n();
    if !(7..=r + 1).contains(&k) || u.edge_count() < 6 {
        return Ok(false);
    }
    let must = PatternSpec::triangle_and_path3().build()?;
    let c4 = PatternSpec::Cycle(4).build()?;
    let z4 = PatternSpec::Z4.build()?;
    Ok(contains(u, &must).is_some() && contains(u, &c4).is_none() && contains(u, &z4).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::PatternSpec;

    fn g(s: &str) -> SimpleGraph {
        s.parse::<PatternSpec>().unwrap().build().unwrap()
    }

    /// Independent oracle: try every injective map.
    fn brute_contains(host: &SimpleGraph, pattern: &SimpleGraph) -> bool {
        use itertools::Itertools;
        (0..host.n())
            .permutations(pattern.n())
            .any(|m| pattern.edges().all(|(a, b)| host.has_edge(m[a], m[b])))
    }

    #[test]
    fn spec_examples() {
        let e = contains(&g("K4"), &g("C4")).unwrap();
        assert!(e.is_valid(&g("C4"), &g("K4")));
        assert!(!brute_contains(&g("Z4"), &g("C4")));
        assert_eq!(contains(&g("Z4"), &g("C4")), None);
        assert!(contains(&g("C5"), &g("P3")).is_some());
        assert!(contains(&g("Z4"), &g("K3")).is_some());
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        let hosts = [
            "C5", "Z4", "K4", "F2", "U(K3,P3)", "J(V,C4)", "M(6,2K2)", "U(C3,C4)", "P5", "F(4,2,2)",
        ];
        let patterns = ["K3", "C4", "P3", "2K2", "Z4", "K4", "U(K2,V)", "V", "C5", "J(V,3V)"];
        for h in hosts {
            for p in patterns {
                let (host, pat) = (g(h), g(p));
                let got = contains(&host, &pat);
                assert_eq!(got.is_some(), brute_contains(&host, &pat), "{h} ⊇ {p}");
                if let Some(e) = got {
                    assert!(e.is_valid(&pat, &host));
                }
                assert_eq!(contains_par(&host, &pat, u64::MAX).unwrap(), contains(&host, &pat));
            }
        }
    }

    #[test]
    fn pattern_larger_than_host() {
        assert_eq!(contains(&g("K3"), &g("C4")), None);
        assert_eq!(contains(&g("K3"), &SimpleGraph::empty(0)), Some(Embedding(vec![])));
    }

    #[test]
    fn budget_is_enforced() {
        // complete 6-partite graph: many K6s, no K7
        let host = g("6K4").complement();
        assert_eq!(
            contains_budgeted(&host, &g("K7"), 1000),
            Err(Error::BudgetExhausted(1000))
        );
        assert_eq!(
            contains_budgeted(&host, &g("K6"), 1000).unwrap().map(|e| e.0.len()),
            Some(6)
        );
        assert_eq!(contains_budgeted(&g("K5"), &g("K6"), 10), Ok(None));
    }

    #[test]
    fn embedding_validity_checks() {
        let host = g("C4");
        let pat = g("P2");
        assert!(Embedding(vec![0, 1, 2]).is_valid(&pat, &host));
        assert!(!Embedding(vec![0, 1, 0]).is_valid(&pat, &host));
        assert!(!Embedding(vec![0, 2, 1]).is_valid(&pat, &host));
        assert!(!Embedding(vec![0, 1]).is_valid(&pat, &host));
    }

    #[test]
    fn validate_u_examples() {
        assert_eq!(
            validate_u(&PatternSpec::triangle_and_path3().build().unwrap(), 6),
            Ok(true)
        );
        assert_eq!(validate_u(&g("U(C3,C4)"), 8), Ok(false));
        assert_eq!(validate_u(&g("U(C3,C5)"), 8), Ok(true));
        assert_eq!(validate_u(&g("U(C3,P4)"), 8), Ok(true));
        // Z4 component
        assert_eq!(validate_u(&g("U(Z4,P3)"), 8), Ok(false));
        // too many vertices for r
        assert_eq!(validate_u(&g("U(C3,C5)"), 6), Ok(false));
        // no P3
        assert_eq!(validate_u(&g("U(K3,P2,2V)"), 6), Ok(false));
        assert!(matches!(validate_u(&g("U(K3,P3)"), 5), Err(Error::OutOfRange(_))));
    }
}
