//! Realization search: every labeled graph whose vertex `i` has degree `d_i`,
//! optionally forced to contain a given set of edges.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::seq::{erdos_gallai, is_graphical, DegreeSequence};
use crate::Limits;

/// Backtracking completer. Vertices are finished in label order; vertex `i`
/// picks its remaining neighbors among later vertices, and after every pick
/// the residual demands of the unfinished vertices must pass Erdős–Gallai.
///
/// Without forced edges that test is exact, so no branch dead-ends and the
/// first branch taken (largest residuals first) always succeeds.
pub(crate) struct Completer {
    g: SimpleGraph,
    res: Vec<u32>,
    nodes: u64,
    budget: u64,
    scratch: Vec<u32>,
}

impl Completer {
    /// `None` if some forced degree already exceeds the target.
    pub(crate) fn new(target: &[u32], forced: SimpleGraph, budget: u64) -> Option<Completer> {
        debug_assert_eq!(target.len(), forced.n());
        let mut res = Vec::with_capacity(target.len());
        for (v, &d) in target.iter().enumerate() {
            res.push(d.checked_sub(forced.degree(v) as u32)?);
        }
        Some(Completer {
            g: forced,
            res,
            nodes: 0,
            budget,
            scratch: Vec::new(),
        })
    }

    /// Calls `visit` on each completion in search order until it breaks.
    pub(crate) fn run<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&SimpleGraph) -> ControlFlow<()>,
    {
        if !self.tail_feasible(0) {
            return Ok(ControlFlow::Continue(()));
        }
        self.vertex(0, visit)
    }

    fn tail_feasible(&mut self, from: usize) -> bool {
        self.scratch.clear();
        self.scratch.extend(self.res[from..].iter().copied().filter(|&d| d > 0));
        self.scratch.sort_unstable_by(|a, b| b.cmp(a));
        erdos_gallai(&self.scratch)
    }

    fn vertex<F>(&mut self, from: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&SimpleGraph) -> ControlFlow<()>,
    {
        let n = self.res.len();
        let Some(i) = (from..n).find(|&v| self.res[v] > 0) else {
            return Ok(visit(&self.g));
        };
        let mut cands: Vec<usize> = (i + 1..n)
            .filter(|&j| self.res[j] > 0 && !self.g.has_edge(i, j))
            .collect();
        cands.sort_by_key(|&j| std::cmp::Reverse(self.res[j]));
        let need = self.res[i] as usize;
        if cands.len() < need {
            return Ok(ControlFlow::Continue(()));
        }
        self.res[i] = 0;
        let flow = self.pick(i, &cands, 0, need, visit);
        self.res[i] = need as u32;
        flow
    }

    fn pick<F>(
        &mut self,
        i: usize,
        cands: &[usize],
        start: usize,
        left: usize,
        visit: &mut F,
    ) -> Result<ControlFlow<()>>
    where
        F: FnMut(&SimpleGraph) -> ControlFlow<()>,
    {
        if left == 0 {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted(self.budget));
            }
            if !self.tail_feasible(i + 1) {
                return Ok(ControlFlow::Continue(()));
            }
            return self.vertex(i + 1, visit);
        }
        for idx in start..=cands.len() - left {
            let j = cands[idx];
            self.g.add_edge(i, j);
            self.res[j] -= 1;
            let flow = self.pick(i, cands, idx + 1, left - 1, visit);
            self.res[j] += 1;
            self.g.remove_edge(i, j);
            if !matches!(flow, Ok(ControlFlow::Continue(()))) {
                return flow;
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// First completion of `forced` to a graph where vertex `i` has degree
/// `target[i]`.
pub(crate) fn complete_first(target: &[u32], forced: SimpleGraph, budget: u64) -> Result<Option<SimpleGraph>> {
    let Some(mut c) = Completer::new(target, forced, budget) else {
        return Ok(None);
    };
    let mut found = None;
    let _ = c.run(&mut |g: &SimpleGraph| {
        found = Some(g.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

fn check_limits(seq: &DegreeSequence, limits: &Limits) -> Result<()> {
    if !is_graphical(seq) {
        return Err(Error::NotGraphical);
    }
    if seq.len() > limits.max_realization_n && !limits.accept_cost {
        return Err(Error::LimitExceeded(format!(
            "realization enumeration is limited to n <= {} (got n = {}); set accept_cost to override",
            limits.max_realization_n,
            seq.len()
        )));
    }
    Ok(())
}

/// Visits every labeled realization of `seq` (vertex `i` has degree `d_i`),
/// in a fixed order, until `visit` breaks.
pub fn for_each_realization<F>(seq: &DegreeSequence, limits: &Limits, mut visit: F) -> Result<()>
where
    F: FnMut(&SimpleGraph) -> ControlFlow<()>,
{
    check_limits(seq, limits)?;
    let mut c = Completer::new(seq.terms(), SimpleGraph::empty(seq.len()), limits.node_budget)
        .expect("empty forced graph never overshoots");
    let _ = c.run(&mut visit)?;
    Ok(())
}

/// All labeled realizations of `seq`.
pub fn realizations(seq: &DegreeSequence, limits: &Limits) -> Result<Vec<SimpleGraph>> {
    let mut out = Vec::new();
    for_each_realization(seq, limits, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// One realization, built greedily (largest residual demands first).
pub fn realize(seq: &DegreeSequence) -> Result<SimpleGraph> {
    if !is_graphical(seq) {
        return Err(Error::NotGraphical);
    }
    let g = complete_first(seq.terms(), SimpleGraph::empty(seq.len()), u64::MAX)?;
    Ok(g.expect("graphical sequences always complete greedily"))
}
