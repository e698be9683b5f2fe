use proptest::prelude::*;

use degseq::embed::contains;
use degseq::potential::is_potentially;
use degseq::rules::{sufficient_condition, RuleTag, SufficientRule};
use degseq::seq::{all_graphical, layoff, DegreeSequence};
use degseq::sigma::{closed_form_sigma, extremal_sequence, FormulaFamily};
use degseq::{is_potentially_clique_top, PatternSpec, SimpleGraph};

fn pattern(s: &str) -> SimpleGraph {
    s.parse::<PatternSpec>().unwrap().build().unwrap()
}

fn arb_sequence() -> impl Strategy<Value = DegreeSequence> {
    (1usize..=9)
        .prop_flat_map(|n| prop::collection::vec(0..n as u32, n).prop_map(|t| DegreeSequence::from_unsorted(t).0))
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (2usize..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = SimpleGraph::empty(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn layoff_shape(s in arb_sequence(), k in 1usize..=9) {
        prop_assume!(k <= s.len());
        if let Ok(r) = layoff(&s, k) {
            prop_assert_eq!(r.len(), s.len() - 1);
            prop_assert!(r.terms().windows(2).all(|w| w[0] >= w[1]));
            prop_assert_eq!(r.sigma() + 2 * s.d(k) as u64, s.sigma());
        }
    }

    #[test]
    fn two_switch_preserves_degrees(g in arb_graph(10), picks in prop::collection::vec((0usize..64, 0usize..64), 1..20)) {
        let mut cur = g.clone();
        for (i, j) in picks {
            let edges: Vec<_> = cur.edges().collect();
            if edges.len() < 2 {
                break;
            }
            let ab = edges[i % edges.len()];
            let cd = edges[j % edges.len()];
            if let Ok(next) = cur.two_switch(ab, cd) {
                prop_assert_eq!(next.degrees(), cur.degrees());
                prop_assert_eq!(next.edge_count(), cur.edge_count());
                cur = next;
            }
        }
        prop_assert_eq!(cur.degrees(), g.degrees());
    }

    #[test]
    fn containment_reflexive_and_monotone(g in arb_graph(7), h in arb_graph(5), extra in prop::collection::vec((0usize..7, 0usize..7), 0..6)) {
        prop_assert!(contains(&g, &g).is_some());
        let before = contains(&g, &h).is_some();
        let mut bigger = g.clone();
        for (u, v) in extra {
            if u != v && u < g.n() && v < g.n() {
                bigger.add_edge(u, v);
            }
        }
        if before {
            prop_assert!(contains(&bigger, &h).is_some());
        }
    }

    #[test]
    fn complete_minus_edge_count(m in 4usize..=9, h in arb_graph(4)) {
        let spec = PatternSpec::complete_minus(m, PatternSpec::Complete(1));
        prop_assert_eq!(spec.build().unwrap().edge_count(), m * (m - 1) / 2);
        let mut k = SimpleGraph::complete(m);
        for (u, v) in h.edges() {
            k.remove_edge(u, v);
        }
        prop_assert_eq!(k.edge_count(), m * (m - 1) / 2 - h.edge_count());
    }
}

#[test]
fn thm11_monotone_in_n() {
    for r in 6..=10 {
        let values: Vec<u64> = (5 * r + 18..=5 * r + 40)
            .map(|n| closed_form_sigma(FormulaFamily::Thm11 { r }, n).unwrap())
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "r = {r}: {values:?}");
    }
}

#[test]
fn extremal_template_spot_values() {
    // (52 x4, 6, 5 x48)
    let s = extremal_sequence(7, 53).unwrap();
    assert_eq!(&s.terms()[..5], &[52, 52, 52, 52, 6]);
    assert_eq!(s.terms()[5..].iter().filter(|&&d| d == 5).count(), 48);
}

/// T2_1, T2_3 and L2_2 imply their conclusions on every graphical sequence
/// with 4 <= n <= 8 at r = 3.
#[test]
fn sufficient_conditions_sound_at_small_n() {
    let k4e = pattern("M(4,K2)");
    for n in 4..=8 {
        for s in all_graphical(n) {
            for tag in [RuleTag::T2_1, RuleTag::T2_3, RuleTag::L2_2] {
                let Ok(true) = sufficient_condition(&s, SufficientRule::new(tag, 3)) else {
                    continue;
                };
                let holds = match tag {
                    RuleTag::T2_1 => is_potentially_clique_top(&s, 3).unwrap(),
                    _ => is_potentially(&s, &k4e).unwrap().is_some(),
                };
                assert!(holds, "{tag} counterexample {s}");
            }
        }
    }
}

/// L2_5 compares `d_r - 1` against `d_{r+3}`. Read that way it admits
/// sequences that are not potentially A_{r+1}; comparing against `d_{r+2}`
/// instead has no counterexample at these sizes.
#[test]
fn l25_index_reading() {
    let s: DegreeSequence = "5,3,3,3,3,1".parse().unwrap();
    assert_eq!(
        sufficient_condition(&s, SufficientRule::new(RuleTag::L2_5, 3)),
        Ok(true)
    );
    assert!(!is_potentially_clique_top(&s, 3).unwrap());

    for (r, n) in [(3, 6), (3, 7), (3, 8), (4, 8)] {
        let mut printed_failures = 0;
        for s in all_graphical(n) {
            let rest = s.d(r - 2) as usize > r
                && s.d(r + 1) as usize >= r
                && (1..=r - 3).all(|i| s.d(i) as usize + i >= 2 * r);
            if !rest {
                continue;
            }
            let holds = is_potentially_clique_top(&s, r).unwrap();
            if s.d(r) > s.d(r + 2) {
                assert!(holds, "r = {r}: d_(r+2) reading fails on {s}");
            }
            let printed = sufficient_condition(&s, SufficientRule::new(RuleTag::L2_5, r)).unwrap();
            assert_eq!(printed, s.d(r) > s.d(r + 3));
            if printed && !holds {
                printed_failures += 1;
            }
        }
        assert!(printed_failures > 0, "r = {r}, n = {n}");
    }
}

/// The alternative reading of the K_{r+1} − e condition with `d_{r+1} >= r`
/// in place of `d_{r-1} >= r` is implied by T2_2, so it must hold wherever
/// T2_2 does; track both readings at n = 8, r = 3.
#[test]
fn t24_alternative_reading_tracked() {
    let k4e = pattern("M(4,K2)");
    let (mut printed, mut alternative) = (0, 0);
    for s in all_graphical(8) {
        let alt = s.d(4) >= 3 && s.d(8) >= 2;
        let as_printed = sufficient_condition(&s, SufficientRule::new(RuleTag::T2_4, 3)).unwrap();
        let potential = is_potentially(&s, &k4e).unwrap().is_some();
        if alt {
            alternative += 1;
            assert!(potential, "alternative reading fails on {s}");
        }
        if as_printed {
            printed += 1;
            assert!(potential, "printed reading fails on {s}");
        }
    }
    // the printed hypothesis d_2 >= 3 is weaker than d_4 >= 3
    assert!(printed >= alternative);
    assert!(alternative > 0);
}
