//! Hypothesis predicates of the known sufficient conditions for a sequence
//! to be potentially K_{r+1}-minus-something graphic.
//!
//! Each predicate checks hypotheses only. Indices are 1-based (`d_i`). Range
//! conditions on `n` and `r` that make the indexed terms meaningful are
//! refusals, not `false`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{is_graphical, DegreeSequence};
use crate::sigma::thm11_value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum RuleTag {
    /// potentially A_{r+1}: `d_{r+1} >= r`, `d_i >= 2r - i` for `i < r`.
    T2_1,
    /// potentially A_{r+1}: `d_{r+1} >= r`, `d_{2r+2} >= r - 1`.
    T2_2,
    /// potentially K_{r+1} - e: `d_{r+1} >= r - 1`, `d_i >= 2r - i` for `i < r`.
    T2_3,
    /// potentially K_{r+1} - e: `d_{r-1} >= r`, `d_{2r+2} >= r - 1`.
    T2_4,
    /// potentially K_{r+1} - e: `d_{r-1} >= r`, `d_{r+1} >= r - 1`,
    /// `d_i >= 2r - i` for `i <= r - 2`.
    L2_2,
    /// potentially K_{r+1} - (P_2 ∪ K_2): `d_{r-4} >= r`, degree-sum bound,
    /// `d_{2r+2} >= r - 1`.
    L2_4,
    /// potentially A_{r+1}: `d_{r-2} >= r + 1`, `d_{r+1} >= r`,
    /// `d_r - 1 >= d_{r+3}`, `d_i >= 2r - i` for `i <= r - 3`.
    L2_5,
    /// potentially K_{r+1} - (K_3 ∪ P_3): `d_{r-2} >= r - 1`,
    /// `d_{r+1} >= r - 2`, degree-sum bound, `d_i >= 2r - i` for `i <= r - 3`.
    L3_1,
}

impl RuleTag {
    pub const ALL: [RuleTag; 8] = [
        RuleTag::T2_1,
        RuleTag::T2_2,
        RuleTag::T2_3,
        RuleTag::T2_4,
        RuleTag::L2_2,
        RuleTag::L2_4,
        RuleTag::L2_5,
        RuleTag::L3_1,
    ];

    /// Smallest `r` for which every indexed term is defined.
    fn min_r(self) -> usize {
        match self {
            RuleTag::T2_1 | RuleTag::T2_2 | RuleTag::T2_3 => 1,
            RuleTag::T2_4 | RuleTag::L2_2 => 2,
            RuleTag::L2_5 => 3,
            RuleTag::L3_1 => 4,
            RuleTag::L2_4 => 5,
        }
    }

    /// Smallest `n` allowed for a given `r`.
    fn min_n(self, r: usize) -> usize {
        match self {
            RuleTag::T2_1 | RuleTag::T2_3 => r + 1,
            RuleTag::T2_2 | RuleTag::T2_4 | RuleTag::L2_4 | RuleTag::L3_1 => 2 * r + 2,
            RuleTag::L2_2 => 2 * r,
            // L2_5 also reads d_{r+3}
            RuleTag::L2_5 => (2 * r).max(r + 3),
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for RuleTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        RuleTag::ALL
            .into_iter()
            .find(|t| t.to_string().replace('_', "") == norm)
            .ok_or_else(|| Error::Parse(format!("unknown rule tag {s:?}")))
    }
}

/// A rule tag with its clique-size parameter `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SufficientRule {
    pub tag: RuleTag,
    pub r: usize,
}

impl SufficientRule {
    pub fn new(tag: RuleTag, r: usize) -> Self {
        SufficientRule { tag, r }
    }
}

/// `d_i >= 2r - i` for `i = 1..=last`.
fn staircase(seq: &DegreeSequence, r: usize, last: usize) -> bool {
    (1..=last).all(|i| seq.d(i) as i64 >= 2 * r as i64 - i as i64)
}

fn at_least(seq: &DegreeSequence, i: usize, bound: i64) -> bool {
    seq.d(i) as i64 >= bound
}

/// Whether `seq` satisfies every hypothesis of `rule`.
pub fn sufficient_condition(seq: &DegreeSequence, rule: SufficientRule) -> Result<bool> {
    let SufficientRule { tag, r } = rule;
    let n = seq.len();
    if r < tag.min_r() {
        return Err(Error::OutOfRange(format!(
            "{tag} needs r >= {}, got r = {r}",
            tag.min_r()
        )));
    }
    if n < tag.min_n(r) {
        return Err(Error::OutOfRange(format!(
            "{tag} with r = {r} needs n >= {}, got n = {n}",
            tag.min_n(r)
        )));
    }
    if !is_graphical(seq) {
        return Err(Error::NotGraphical);
    }
    let ri = r as i64;
    let sigma = seq.sigma() as i64;
    Ok(match tag {
        RuleTag::T2_1 => at_least(seq, r + 1, ri) && staircase(seq, r, r - 1),
        RuleTag::T2_2 => at_least(seq, r + 1, ri) && at_least(seq, 2 * r + 2, ri - 1),
        RuleTag::T2_3 => at_least(seq, r + 1, ri - 1) && staircase(seq, r, r - 1),
        RuleTag::T2_4 => at_least(seq, r - 1, ri) && at_least(seq, 2 * r + 2, ri - 1),
        RuleTag::L2_2 => at_least(seq, r - 1, ri) && at_least(seq, r + 1, ri - 1) && staircase(seq, r, r - 2),
        RuleTag::L2_4 => {
            let (base, odd) = thm11_value(r, n);
            let bound = if odd { base - 1 } else { base - 2 };
            at_least(seq, r - 4, ri) && sigma >= bound && at_least(seq, 2 * r + 2, ri - 1)
        }
        RuleTag::L2_5 => {
            at_least(seq, r - 2, ri + 1)
                && at_least(seq, r + 1, ri)
                // d_r - 1 >= d_{r+3}
                && seq.d(r) > seq.d(r + 3)
                && staircase(seq, r, r - 3)
        }
        RuleTag::L3_1 => {
            let (base, odd) = thm11_value(r, n);
            let bound = if odd { base - 1 } else { base };
            at_least(seq, r - 2, ri - 1) && at_least(seq, r + 1, ri - 2) && sigma >= bound && staircase(seq, r, r - 3)
        }
    })
}
