mod common;

use common::{body, index, mixed_body};
use edgemin::edgemin::{
    edge_count_per_level, minimize_edges, minimize_edges_with, trie_minimize, LevelObserver, LevelView, Options,
};
use edgemin::oracle::{self, RotationTrie};
use edgemin::Interval;
use proptest::prelude::*;

/// Records the queued nodes and counters of every level.
#[derive(Default)]
struct Snapshots {
    queued: Vec<Vec<Interval>>,
    nodes: Vec<usize>,
    boundaries: Vec<Vec<bool>>,
}

impl LevelObserver for Snapshots {
    fn level_marked(&mut self, view: &LevelView<'_>) {
        self.queued.push(view.queued().collect());
        self.nodes.push(view.node_count);
        self.boundaries.push(view.boundaries.iter().collect());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn level_counts_match_explicit_graphs(b in mixed_body(120)) {
        let (text, fm) = index(&b);
        if text.len() < 2 {
            return Ok(());
        }
        let levels = edge_count_per_level(&fm, text.len() - 1).unwrap();
        let edges: Vec<usize> = levels.iter().map(|l| l.edges).collect();
        prop_assert_eq!(edges, oracle::naive_level_counts(&text));
        let best = minimize_edges(&fm);
        prop_assert_eq!((best.k_star, best.m_star), oracle::naive_minimize(&text));
    }

    #[test]
    fn node_counts_are_nondecreasing_kmer_counts(b in mixed_body(120)) {
        let (text, fm) = index(&b);
        if text.len() < 2 {
            return Ok(());
        }
        let levels = edge_count_per_level(&fm, text.len() - 1).unwrap();
        for (l, next) in levels.iter().zip(levels.iter().skip(1)) {
            prop_assert!(l.nodes <= next.nodes);
        }
        for l in &levels {
            prop_assert_eq!(l.nodes, oracle::build_dbg(&text, l.k).unwrap().nodes.len());
            prop_assert!(l.edges >= l.nodes);
        }
    }

    #[test]
    fn frontier_matches_trie_levels(b in mixed_body(80)) {
        let (text, fm) = index(&b);
        let trie = RotationTrie::new(&text).unwrap();
        let mut snaps = Snapshots::default();
        let opts = Options { early_termination: false, max_k: None };
        minimize_edges_with(&fm, opts, &mut snaps).unwrap();
        for (i, queued) in snaps.queued.iter().enumerate() {
            let k = i + 1;
            prop_assert_eq!(queued, &trie.sibling_nodes(k));
            prop_assert_eq!(snaps.nodes[i], trie.nodes(k).len());
            let want: Vec<bool> = trie.boundaries(k).iter().collect();
            prop_assert_eq!(&snaps.boundaries[i], &want);
        }
    }

    #[test]
    fn trie_reference_agrees(b in mixed_body(80)) {
        let (text, fm) = index(&b);
        let fast = minimize_edges(&fm);
        let run = trie_minimize(&text, true, false).unwrap();
        prop_assert_eq!(run.result.k_star, fast.k_star);
        prop_assert_eq!(run.result.m_star, fast.m_star);
        prop_assert_eq!(run.result.boundaries, fast.boundaries);
    }

    #[test]
    fn early_termination_is_sound(b in mixed_body(200)) {
        let (_, fm) = index(&b);
        let early = minimize_edges(&fm);
        let full = minimize_edges_with(&fm, Options { early_termination: false, max_k: None }, &mut ()).unwrap();
        prop_assert_eq!((early.k_star, early.m_star), (full.k_star, full.m_star));
        prop_assert_eq!(early.boundaries, full.boundaries);
        prop_assert!(early.intervals_generated <= full.intervals_generated);
    }

    #[test]
    fn work_is_bounded(b in mixed_body(300)) {
        let (_, fm) = index(&b);
        let r = minimize_edges(&fm);
        prop_assert!(r.intervals_generated <= 4 * r.m_star as u64);
    }

    #[test]
    fn boundaries_are_the_optimal_level(b in body(4, 100)) {
        let (text, fm) = index(&b);
        let r = minimize_edges(&fm);
        let trie = RotationTrie::new(&text).unwrap();
        prop_assert_eq!(&r.boundaries, &trie.boundaries(r.k_star));
        prop_assert_eq!(r.node_count(), trie.nodes(r.k_star).len());
    }

    #[test]
    fn borrowed_oracle_matches_explicit_graphs(b in mixed_body(60)) {
        let (text, _) = index(&b);
        for k in 1..=text.len() {
            let (_, m) = oracle::reduce_edges(&oracle::build_dbg(&text, k).unwrap());
            prop_assert_eq!(oracle::reduced_edge_count(&text, k).unwrap(), m);
        }
    }

    #[test]
    fn weight_sums_match_reduced_graphs(b in mixed_body(60)) {
        let (text, _) = index(&b);
        let trie = RotationTrie::new(&text).unwrap();
        for k in 1..text.len() {
            let (_, m) = oracle::reduce_edges(&oracle::build_dbg(&text, k).unwrap());
            prop_assert_eq!(oracle::weight_sum(&trie, k).unwrap(), m);
        }
    }
}

#[test]
fn periodic_text_reduces_well() {
    let body = b"ACGT".repeat(50);
    let (text, fm) = index(&body);
    let r = minimize_edges(&fm);
    assert_eq!((r.k_star, r.m_star), oracle::naive_minimize(&text));
    assert!(2 * r.m_star < text.len(), "m* = {}", r.m_star);
}

#[test]
fn max_k_limits_the_search() {
    let (_, fm) = index(b"AGTGGTGG");
    let opts = Options {
        early_termination: false,
        max_k: Some(1),
    };
    let r = minimize_edges_with(&fm, opts, &mut ()).unwrap();
    assert_eq!((r.k_star, r.m_star), (1, 9));
    assert_eq!(r.node_count(), 4);
}
