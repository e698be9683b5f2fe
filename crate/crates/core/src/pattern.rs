//! Named graph families and their text syntax.
//!
//! Grammar (whitespace is ignored everywhere):
//!
//! ```text
//! pattern := [count] atom
//! atom    := "K" int            complete graph on int vertices
//!          | "C" int            cycle on int >= 3 vertices
//!          | "P" int            path with int edges (int + 1 vertices)
//!          | "Z4"               K4 minus a 2-edge path
//!          | "F" int            friendship graph: int triangles sharing a vertex
//!          | "F(" t "," r "," k ")"   k copies of K_t sharing a common r-set
//!          | "V"                a single vertex
//!          | "U(" pattern {"," pattern} ")"   disjoint union
//!          | "J(" pattern "," pattern ")"     join
//!          | "M(" m "," pattern ")"           K_m with the pattern's edges removed
//! ```
//!
//! A leading count is shorthand for a union of copies: `2K2` is `U(K2,K2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Expression tree over graph-family constructors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternSpec {
    Complete(usize),
    Cycle(usize),
    /// `Path(k)` has `k` edges and `k + 1` vertices.
    Path(usize),
    Union(Vec<PatternSpec>),
    Join(Box<PatternSpec>, Box<PatternSpec>),
    CompleteMinus(usize, Box<PatternSpec>),
    Friendship(usize),
    GenFriendship {
        t: usize,
        r: usize,
        k: usize,
    },
    Z4,
    SingleVertex,
}

impl PatternSpec {
    pub fn union(parts: impl IntoIterator<Item = PatternSpec>) -> Self {
        PatternSpec::Union(parts.into_iter().collect())
    }

    pub fn join(a: PatternSpec, b: PatternSpec) -> Self {
        PatternSpec::Join(Box::new(a), Box::new(b))
    }

    pub fn complete_minus(m: usize, inner: PatternSpec) -> Self {
        PatternSpec::CompleteMinus(m, Box::new(inner))
    }

    /// K_3 ∪ P_3.
    pub fn triangle_and_path3() -> Self {
        Self::union([PatternSpec::Complete(3), PatternSpec::Path(3)])
    }

    /// Builds the labeled graph.
    pub fn build(&self) -> Result<SimpleGraph> {
        use PatternSpec::*;
        Ok(match self {
            Complete(k) => {
                if *k == 0 {
                    return Err(Error::InvalidPattern("K needs at least 1 vertex".into()));
                }
                SimpleGraph::complete(*k)
            }
            Cycle(k) => {
                if *k < 3 {
                    return Err(Error::InvalidPattern(format!("C{k}: cycles need at least 3 vertices")));
                }
                SimpleGraph::from_edges(*k, (0..*k).map(|i| (i, (i + 1) % k)))?
            }
            Path(k) => SimpleGraph::from_edges(k + 1, (0..*k).map(|i| (i, i + 1)))?,
            SingleVertex => SimpleGraph::empty(1),
            Z4 => complete_minus(4, &Path(2).build()?)?,
            Union(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidPattern("empty union".into()));
                }
                let mut g = SimpleGraph::empty(0);
                for p in parts {
                    g = g.disjoint_union(&p.build()?);
                }
                g
            }
            Join(a, b) => a.build()?.join(&b.build()?),
            CompleteMinus(m, inner) => complete_minus(*m, &inner.build()?)?,
            Friendship(k) => {
                if *k == 0 {
                    return Err(Error::InvalidPattern("F0 has no triangles".into()));
                }
                let mut g = SimpleGraph::empty(2 * k + 1);
                for i in 0..*k {
                    let (a, b) = (2 * i + 1, 2 * i + 2);
                    g.add_edge(0, a);
                    g.add_edge(0, b);
                    g.add_edge(a, b);
                }
                g
            }
            GenFriendship { t, r, k } => {
                if *t == 0 || *k == 0 || r > t {
                    return Err(Error::InvalidPattern(format!(
                        "F({t},{r},{k}) needs t >= 1, k >= 1 and r <= t"
                    )));
                }
                let n = k * t - k * r + r;
                let mut g = SimpleGraph::empty(n);
                for copy in 0..*k {
                    let own = (0..t - r).map(|i| r + copy * (t - r) + i);
                    let members: Vec<usize> = (0..*r).chain(own).collect();
                    for (i, &a) in members.iter().enumerate() {
                        for &b in &members[i + 1..] {
                            g.add_edge(a, b);
                        }
                    }
                }
                g
            }
        })
    }
}

/// K_m with `inner` placed on vertices `0..|V(inner)|` and its edges removed.
fn complete_minus(m: usize, inner: &SimpleGraph) -> Result<SimpleGraph> {
    if inner.n() > m {
        return Err(Error::InvalidPattern(format!(
            "inner graph has {} vertices, does not fit in K{m}",
            inner.n()
        )));
    }
    let mut g = SimpleGraph::complete(m);
    for (u, v) in inner.edges() {
        g.remove_edge(u, v);
    }
    Ok(g)
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PatternSpec::*;
        match self {
            Complete(k) => write!(f, "K{k}"),
            Cycle(k) => write!(f, "C{k}"),
            Path(k) => write!(f, "P{k}"),
            Z4 => f.write_str("Z4"),
            SingleVertex => f.write_str("V"),
            Friendship(k) => write!(f, "F{k}"),
            GenFriendship { t, r, k } => write!(f, "F({t},{r},{k})"),
            Union(parts) => {
                f.write_str("U(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            Join(a, b) => write!(f, "J({a},{b})"),
            CompleteMinus(m, inner) => write!(f, "M({m},{inner})"),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { src: &compact, pos: 0 };
        let spec = p.pattern()?;
        if p.pos != compact.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, what: &str) -> Error {
        let rest: String = self.src[self.pos.min(self.src.len())..].iter().collect();
        Error::Parse(format!("{what} at offset {} (near {rest:?})", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected '{c}'")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("expected an integer"));
        }
        let s: String = self.src[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.fail("integer too large"))
    }

    fn pattern(&mut self) -> Result<PatternSpec> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let count = self.int()?;
            if count == 0 {
                return Err(self.fail("zero copies"));
            }
            let atom = self.atom()?;
            return Ok(if count == 1 {
                atom
            } else {
                PatternSpec::Union(vec![atom; count])
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<PatternSpec> {
        let c = self.peek().ok_or_else(|| self.fail("unexpected end of pattern"))?;
        self.pos += 1;
        match c.to_ascii_uppercase() {
            'K' => Ok(PatternSpec::Complete(self.int()?)),
            'C' => Ok(PatternSpec::Cycle(self.int()?)),
            'P' => Ok(PatternSpec::Path(self.int()?)),
            'V' => Ok(PatternSpec::SingleVertex),
            'Z' => {
                let k = self.int()?;
                if k != 4 {
                    return Err(self.fail("only Z4 is defined"));
                }
                Ok(PatternSpec::Z4)
            }
            'F' => {
                if self.eat('(') {
                    let t = self.int()?;
                    self.expect(',')?;
                    let r = self.int()?;
                    self.expect(',')?;
                    let k = self.int()?;
                    self.expect(')')?;
                    Ok(PatternSpec::GenFriendship { t, r, k })
                } else {
                    Ok(PatternSpec::Friendship(self.int()?))
                }
            }
            'U' => {
                self.expect('(')?;
                let mut parts = vec![self.pattern()?];
                while self.eat(',') {
                    parts.push(self.pattern()?);
                }
                self.expect(')')?;
                Ok(PatternSpec::Union(parts))
            }
            'J' => {
                self.expect('(')?;
                let a = self.pattern()?;
                self.expect(',')?;
                let b = self.pattern()?;
                self.expect(')')?;
                Ok(PatternSpec::join(a, b))
            }
            'M' => {
                self.expect('(')?;
                let m = self.int()?;
                self.expect(',')?;
                let inner = self.pattern()?;
                self.expect(')')?;
                Ok(PatternSpec::complete_minus(m, inner))
            }
            _ => {
                self.pos -= 1;
                Err(self.fail("unknown constructor"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use PatternSpec::*;

    fn build(s: &str) -> SimpleGraph {
        s.parse::<PatternSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn z4_is_the_paw() {
        let g = Z4.build().unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree_sequence().terms(), &[3, 2, 2, 1]);
    }

    #[test]
    fn spec_examples() {
        let g = PatternSpec::triangle_and_path3().build().unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 6));
        let g = PatternSpec::complete_minus(7, PatternSpec::triangle_and_path3())
            .build()
            .unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 15));
        let g = Friendship(2).build().unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 6));
        assert_eq!(g.degree_sequence().terms(), &[4, 2, 2, 2, 2]);
    }

    #[test]
    fn closed_form_degree_sequences() {
        for k in 1..=12 {
            let seq = Complete(k).build().unwrap().degree_sequence();
            assert!(seq.terms().iter().all(|&d| d as usize == k - 1));
            assert_eq!(seq.len(), k);
            if k >= 3 {
                let seq = Cycle(k).build().unwrap().degree_sequence();
                assert_eq!(seq.terms(), vec![2; k].as_slice());
            }
            let seq = Path(k).build().unwrap().degree_sequence();
            let mut expected = vec![2; k - 1];
            expected.extend([1, 1]);
            assert_eq!(seq.terms(), expected.as_slice());
        }
    }

    #[test]
    fn generalized_friendship() {
        // three K4s sharing an edge: 3*4 - 3*2 + 2 = 8 vertices
        let g = GenFriendship { t: 4, r: 2, k: 3 }.build().unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 1 + 3 * 5);
        // F(3,1,k) is the friendship graph
        let a = GenFriendship { t: 3, r: 1, k: 2 }.build().unwrap();
        assert_eq!(
            a.canonical_form().unwrap(),
            Friendship(2).build().unwrap().canonical_form().unwrap()
        );
    }

    #[test]
    fn join_and_complete_minus_edge_counts() {
        let g = build("J(K2, U(V,V,V))");
        assert_eq!((g.n(), g.edge_count()), (5, 1 + 6));
        for inner in ["P2", "K3", "C4", "U(K3,P3)", "2K2"] {
            let h = build(inner);
            let g = build(&format!("M(7,{inner})"));
            assert_eq!(g.edge_count(), 21 - h.edge_count(), "{inner}");
        }
    }

    #[test]
    fn malformed_specs() {
        assert!(matches!(Cycle(2).build(), Err(Error::InvalidPattern(_))));
        assert!(matches!(Complete(0).build(), Err(Error::InvalidPattern(_))));
        assert!(matches!(build_err("M(3,K4)"), Error::InvalidPattern(_)));
        assert!(matches!(build_err("F(3,4,2)"), Error::InvalidPattern(_)));
    }

    fn build_err(s: &str) -> Error {
        s.parse::<PatternSpec>().unwrap().build().unwrap_err()
    }

    #[test]
    fn parse_syntax() {
        assert_eq!("K7".parse::<PatternSpec>().unwrap(), Complete(7));
        assert_eq!(
            " F ( 4 , 1 , 3 ) ".parse::<PatternSpec>().unwrap(),
            GenFriendship { t: 4, r: 1, k: 3 }
        );
        assert_eq!(
            "M(7, U(K3, P3))".parse::<PatternSpec>().unwrap(),
            PatternSpec::complete_minus(7, PatternSpec::triangle_and_path3())
        );
        assert_eq!(
            "2K2".parse::<PatternSpec>().unwrap(),
            Union(vec![Complete(2), Complete(2)])
        );
        assert_eq!("z4".parse::<PatternSpec>().unwrap(), Z4);
        for bad in ["", "X3", "K", "U(K3", "U()", "Z5", "K3)", "J(K2)", "0K2", "M(4;P2)"] {
            assert!(bad.parse::<PatternSpec>().unwrap_err().is_parse(), "{bad:?}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "K7",
            "C5",
            "P3",
            "Z4",
            "F2",
            "F(4,1,3)",
            "U(K3,P3)",
            "J(K2,V)",
            "M(7,U(K3,P3))",
        ] {
            let p: PatternSpec = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }
}
