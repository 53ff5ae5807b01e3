//! Reference edge minimization over an explicit rotation-trie.

use std::collections::VecDeque;

use super::EdgeMinResult;
use crate::error::Result;
use crate::oracle::{weight_sum, RotationTrie};
use crate::text::Text;

/// Result of [`trie_minimize`] plus any invariant violations observed.
#[derive(Clone, Debug)]
pub struct TrieRun {
    pub result: EdgeMinResult,
    pub violations: Vec<String>,
    /// Levels whose body ran to completion.
    pub levels_completed: usize,
}

/// Edge minimization with trie nodes held in one FIFO queue.
///
/// With `check_invariants`, every level verifies that the queue holds
/// exactly the sibling-bearing nodes, that the node counter matches the
/// level size, and that the edge counter afterwards equals the weight sum.
pub fn trie_minimize(text: &Text, early_termination: bool, check_invariants: bool) -> Result<TrieRun> {
    let trie = RotationTrie::new(text)?;
    let n = trie.n();
    let mut violations = Vec::new();

    let mut node_count = trie.nodes(1).len();
    let mut m = n;
    let mut k_star = 1;
    let mut m_star = n;
    let mut fusible = 0usize;
    let mut generated = 0u64;
    let mut f = vec![false; n];
    let mut queue: VecDeque<usize> = (0..trie.nodes(1).len()).collect();
    let mut levels_completed = 0;

    'levels: for k in 1..n {
        if check_invariants {
            let mut queued: Vec<_> = queue.iter().map(|&i| trie.interval(k, i)).collect();
            queued.sort();
            if queued != trie.sibling_nodes(k) {
                violations.push(format!("level {k}: queue {queued:?} is not the sibling-bearing node set"));
            }
            if node_count != trie.nodes(k).len() {
                violations.push(format!(
                    "level {k}: node counter {node_count}, trie has {}",
                    trie.nodes(k).len()
                ));
            }
        }

        m -= fusible;
        fusible = 0;

        for &idx in &queue {
            let rb = trie.interval(k, idx).end - 1;
            if f[rb] {
                m += trie.interval(k - 1, trie.parent(k, idx)).len() - 1;
                f[rb] = false;
            }
        }

        for _ in 0..queue.len() {
            let idx = queue.pop_front().expect("snapshot size");
            let phi = trie.interval(k, idx);
            let links = trie.weiner_links(k, idx);
            generated += links.len() as u64;
            if let [link] = &links[..] {
                if trie.has_siblings(k + 1, link.target) {
                    fusible += phi.len() - 1;
                } else {
                    m -= phi.len() - 1;
                }
                f[phi.end - 1] = true;
            }
            for link in &links {
                if trie.has_siblings(k + 1, link.target) {
                    if !trie.is_rightmost(k + 1, link.target) {
                        node_count += 1;
                        if early_termination && node_count >= m_star {
                            break 'levels;
                        }
                    }
                    queue.push_back(link.target);
                }
            }
        }

        if check_invariants {
            let want = weight_sum(&trie, k)?;
            if m != want {
                violations.push(format!("level {k}: edge counter {m}, weight sum {want}"));
            }
        }
        levels_completed = k;
        if m < m_star {
            k_star = k;
            m_star = m;
        }
    }

    if n == 1 {
        m_star = 1;
    }
    Ok(TrieRun {
        result: EdgeMinResult {
            k_star,
            m_star,
            boundaries: trie.boundaries(k_star),
            intervals_generated: generated,
        },
        violations,
        levels_completed,
    })
}
