//! Degree sequences: graphicality, laying off, and exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonincreasing list of nonnegative degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    /// Wraps `terms`, which must already be nonincreasing.
    pub fn new(terms: Vec<u32>) -> Result<Self> {
        if let Some(i) = terms.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotNonincreasing(i + 1));
        }
        Ok(DegreeSequence(terms))
    }

    /// Sorts `terms` nonincreasing. The flag reports whether a reorder was needed.
    pub fn from_unsorted(mut terms: Vec<u32>) -> (Self, bool) {
        let sorted = terms.windows(2).all(|w| w[0] >= w[1]);
        if !sorted {
            terms.sort_by(|a, b| b.cmp(a));
        }
        (DegreeSequence(terms), !sorted)
    }

    /// Parses the comma-separated text form, sorting if needed. Surrounding
    /// parentheses or brackets are accepted, so JSON arrays parse too.
    ///
    /// Returns the sequence and whether the input was out of order, so callers
    /// can warn about it.
    pub fn parse_lenient(text: &str) -> Result<(Self, bool)> {
        let trimmed = text.trim();
        let trimmed = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
            .unwrap_or(trimmed);
        if trimmed.is_empty() {
            return Err(Error::Parse("empty sequence".into()));
        }
        let terms = trimmed
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad degree {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_unsorted(terms))
    }

    pub fn terms(&self) -> &[u32] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based access, matching the usual `d_i` indexing.
    pub fn d(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// Degree sum.
    pub fn sigma(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    pub fn has_zero(&self) -> bool {
        self.0.last() == Some(&0)
    }

    pub fn max_degree(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_lenient(s).map(|(seq, _)| seq)
    }
}

impl TryFrom<Vec<u32>> for DegreeSequence {
    type Error = Error;

    fn try_from(terms: Vec<u32>) -> Result<Self> {
        Self::new(terms)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(seq: DegreeSequence) -> Self {
        seq.0
    }
}

/// Erdős–Gallai test on a nonincreasing slice.
///
/// Odd sums are rejected before the inequality loop.
pub fn erdos_gallai(terms: &[u32]) -> bool {
    debug_assert!(terms.windows(2).all(|w| w[0] >= w[1]));
    let n = terms.len();
    let total: u64 = terms.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        return false;
    }
    if n == 0 {
        return true;
    }
    if terms[0] as usize >= n {
        return false;
    }
    let mut head = 0u64;
    for t in 1..n {
        head += terms[t - 1] as u64;
        let tail: u64 = terms[t..].iter().map(|&d| (d as u64).min(t as u64)).sum();
        if head > (t * (t - 1)) as u64 + tail {
            return false;
        }
    }
    true
}

/// Whether `seq` is the degree sequence of some simple graph.
pub fn is_graphical(seq: &DegreeSequence) -> bool {
    erdos_gallai(&seq.0)
}

/// Lays off `d_k` (1-based `k`) and returns the re-sorted residual with
/// possibly negative terms.
fn layoff_signed(terms: &[i64], k: usize) -> std::result::Result<Vec<i64>, Error> {
    let n = terms.len();
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let dk = terms[k - 1];
    if dk < 0 {
        return Err(Error::NegativeResidual);
    }
    let dk = dk as usize;
    if dk >= n {
        return Err(Error::DegreeTooLarge {
            degree: dk as u32,
            max: n - 1,
        });
    }
    let mut out = Vec::with_capacity(n - 1);
    if dk >= k {
        // first d_k + 1 positions, skipping k itself
        for (i, &d) in terms.iter().enumerate() {
            let pos = i + 1;
            if pos == k {
                continue;
            }
            out.push(if pos <= dk + 1 { d - 1 } else { d });
        }
    } else {
        for (i, &d) in terms.iter().enumerate() {
            let pos = i + 1;
            if pos == k {
                continue;
            }
            out.push(if pos <= dk { d - 1 } else { d });
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// The residual sequence obtained by laying off `d_k` (`k` is 1-based).
///
/// Fails with [`Error::NegativeResidual`] when a term would drop below
/// zero and with [`Error::DegreeTooLarge`] when `d_k > n - 1`; in both cases
/// the input is not graphical.
pub fn layoff(seq: &DegreeSequence, k: usize) -> Result<DegreeSequence> {
    let signed: Vec<i64> = seq.0.iter().map(|&d| d as i64).collect();
    let residual = layoff_signed(&signed, k)?;
    if residual.last().is_some_and(|&d| d < 0) {
        return Err(Error::NegativeResidual);
    }
    Ok(DegreeSequence(residual.into_iter().map(|d| d as u32).collect()))
}

/// Graphicality by repeatedly laying off the last term.
pub fn is_graphical_recursive(seq: &DegreeSequence) -> bool {
    let mut cur: Vec<i64> = seq.0.iter().map(|&d| d as i64).collect();
    loop {
        if cur.iter().all(|&d| d == 0) {
            return true;
        }
        if cur.last().is_some_and(|&d| d < 0) {
            return false;
        }
        let k = cur.len();
        match layoff_signed(&cur, k) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
    }
}

/// Iterator over graphical sequences of a fixed length in lexicographically
/// decreasing order. Built by [`enumerate_graphical`].
#[derive(Debug, Clone)]
pub struct GraphicalSequences {
    sigma_min: u64,
    sigma_max: u64,
    next: Option<Vec<u32>>,
}

impl GraphicalSequences {
    /// Lexicographic predecessor among nonincreasing sequences.
    fn advance(cur: &mut [u32]) -> bool {
        match cur.iter().rposition(|&d| d > 0) {
            None => false,
            Some(i) => {
                cur[i] -= 1;
                let v = cur[i];
                for d in &mut cur[i + 1..] {
                    *d = v;
                }
                true
            }
        }
    }
}

impl Iterator for GraphicalSequences {
    type Item = DegreeSequence;

    fn next(&mut self) -> Option<DegreeSequence> {
        loop {
            let cur = self.next.as_mut()?;
            let candidate = cur.clone();
            if !Self::advance(cur) {
                self.next = None;
            }
            let s: u64 = candidate.iter().map(|&d| d as u64).sum();
            if s >= self.sigma_min && s <= self.sigma_max && erdos_gallai(&candidate) {
                return Some(DegreeSequence(candidate));
            }
        }
    }
}

/// Every graphical sequence of length `n` with `sigma_min <= σ <= sigma_max`,
/// each exactly once, in lexicographically decreasing order.
pub fn enumerate_graphical(n: usize, sigma_min: u64, sigma_max: u64) -> GraphicalSequences {
    let top = n.saturating_sub(1) as u32;
    GraphicalSequences {
        sigma_min,
        sigma_max,
        next: (n > 0 && sigma_min <= sigma_max).then(|| vec![top; n]),
    }
}

/// Every graphical sequence of length `n`.
pub fn all_graphical(n: usize) -> GraphicalSequences {
    enumerate_graphical(n, 0, (n * n.saturating_sub(1)) as u64)
}
