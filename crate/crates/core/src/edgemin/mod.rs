//! Edge minimization over all orders of the de Bruijn graph.
//!
//! The rotation-trie is traversed level by level without materializing it.
//! A trie node is its row interval in the BWT matrix; the nodes of one
//! level partition the rows, and that partition is kept as a boundary
//! bitvector `B` of length `n + 1` in which bit `p` is set when a node
//! starts at row `p` (bit `n` closes the last node). Going one level down
//! only ever adds boundaries, so `B` is refined in place.
//!
//! Only nodes that have siblings are kept explicitly, in one FIFO per first
//! symbol; visiting the queues in symbol order yields lexicographic order,
//! which lets a node's parent be recovered from its leftmost and rightmost
//! siblings. A node without siblings inherits its weight from its parent,
//! except when the parent had a unique Weiner link into a node with
//! siblings: those pending fusions are carried in `fusible` and booked one
//! level later, and the parent's right end is flagged in `F` so the fusion
//! can be reverted once the subtree branches.

mod trie;

pub use trie::{trie_minimize, TrieRun};

use std::collections::VecDeque;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::fm::FmIndex;
use crate::Interval;

/// Outcome of edge minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeMinResult {
    /// Smallest order attaining the minimum.
    pub k_star: usize,
    /// Minimum number of edges of an edge-reduced graph.
    pub m_star: usize,
    /// Node boundaries of level `k_star` (length `n + 1`, first and last bit set).
    pub boundaries: BitVec,
    /// Weiner links generated during the traversal.
    pub intervals_generated: u64,
}

impl EdgeMinResult {
    /// Number of distinct `k_star`-mers.
    pub fn node_count(&self) -> usize {
        self.boundaries.count_ones() - 1
    }

    /// Intervals of the level-`k_star` nodes, in row order.
    pub fn node_intervals(&self) -> Vec<Interval> {
        boundary_intervals(&self.boundaries)
    }
}

/// Splits `[0, n)` at the set bits of a boundary bitvector of length `n + 1`.
pub fn boundary_intervals(boundaries: &BitVec) -> Vec<Interval> {
    let ones: Vec<usize> = boundaries.iter_ones().collect();
    ones.windows(2).map(|w| Interval::new(w[0], w[1])).collect()
}

/// Edge count of one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelCount {
    pub k: usize,
    /// Edges of the edge-reduced graph of order `k`.
    pub edges: usize,
    /// Distinct k-mers.
    pub nodes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Stop once the next level provably cannot beat the best count.
    pub early_termination: bool,
    /// Last order to examine; `None` means `n - 1`.
    pub max_k: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            early_termination: true,
            max_k: None,
        }
    }
}

/// State of the traversal after the boundaries of level `k` are marked.
pub struct LevelView<'a> {
    pub k: usize,
    /// Number of level-`k` nodes.
    pub node_count: usize,
    queues: &'a [VecDeque<Interval>],
    pub boundaries: &'a BitVec,
}

impl LevelView<'_> {
    /// Queued nodes (those with siblings), in lexicographic order.
    pub fn queued(&self) -> impl Iterator<Item = Interval> + '_ {
        self.queues.iter().flatten().copied()
    }
}

/// Hooks into the level loop, used for instrumentation and per-level output.
pub trait LevelObserver {
    fn level_marked(&mut self, _view: &LevelView<'_>) {}
    fn level_done(&mut self, _k: usize, _edges: usize) {}
}

impl LevelObserver for () {}

/// Finds `(k*, m*)` and the node boundaries of level `k*`.
///
/// For a text of length 1 the only graph has one node and one self-loop,
/// so the result is `k* = 1`, `m* = 1`.
pub fn minimize_edges(fm: &FmIndex) -> EdgeMinResult {
    minimize_edges_with(fm, Options::default(), &mut ()).expect("default options are valid")
}

/// [`minimize_edges`] with explicit options and an observer.
pub fn minimize_edges_with(
    fm: &FmIndex,
    options: Options,
    observer: &mut dyn LevelObserver,
) -> Result<EdgeMinResult> {
    let n = fm.len();
    let max_k = options.max_k.unwrap_or(n.saturating_sub(1));
    if n >= 2 && !(1..n).contains(&max_k) {
        return Err(Error::OrderOutOfRange { k: max_k, max: n - 1 });
    }
    let run = Traversal::new(fm).run(max_k, options.early_termination, observer);
    let boundaries = replay_boundary_deletions(run.boundaries, &run.buffer)?;
    Ok(EdgeMinResult {
        k_star: run.k_star,
        m_star: run.m_star,
        boundaries,
        intervals_generated: run.intervals_generated,
    })
}

/// Exact `m_k` and node count for every `k` in `1..=max_k`.
pub fn edge_count_per_level(fm: &FmIndex, max_k: usize) -> Result<Vec<LevelCount>> {
    let n = fm.len();
    if max_k == 0 || max_k >= n {
        return Err(Error::OrderOutOfRange {
            k: max_k,
            max: n.saturating_sub(1),
        });
    }
    struct Recorder(Vec<LevelCount>);
    impl LevelObserver for Recorder {
        fn level_marked(&mut self, view: &LevelView<'_>) {
            self.0.push(LevelCount {
                k: view.k,
                edges: 0,
                nodes: view.node_count,
            });
        }
        fn level_done(&mut self, k: usize, edges: usize) {
            let last = self.0.last_mut().expect("marked before done");
            debug_assert_eq!(last.k, k);
            last.edges = edges;
        }
    }
    let mut rec = Recorder(Vec::with_capacity(max_k));
    Traversal::new(fm).run(max_k, false, &mut rec);
    Ok(rec.0)
}

/// Clears the boundary marks written after the best level was found.
pub fn replay_boundary_deletions(mut boundaries: BitVec, buffer: &[usize]) -> Result<BitVec> {
    let n = boundaries.len().saturating_sub(1);
    for &p in buffer {
        if p == 0 || p >= n || !boundaries.get(p) {
            return Err(Error::Inconsistent(format!(
                "buffered boundary {p} is not a set interior position"
            )));
        }
        boundaries.set(p, false);
    }
    Ok(boundaries)
}

struct Traversal<'a> {
    fm: &'a FmIndex,
    queues: Vec<VecDeque<Interval>>,
    /// Node boundaries of the current level.
    b: BitVec,
    /// Right ends (as `end - 1`) of nodes whose unique Weiner link was counted.
    f: BitVec,
    /// Boundary positions marked since the last improvement.
    buffer: Vec<usize>,
    scratch: Vec<(u8, Interval)>,
}

struct RunOutcome {
    k_star: usize,
    m_star: usize,
    boundaries: BitVec,
    buffer: Vec<usize>,
    intervals_generated: u64,
}

impl<'a> Traversal<'a> {
    fn new(fm: &'a FmIndex) -> Self {
        let n = fm.len();
        let mut b = BitVec::zeros(n + 1);
        b.set(0, true);
        b.set(n, true);
        let mut queues = vec![VecDeque::new(); fm.sigma()];
        let mut scratch = Vec::with_capacity(fm.sigma());
        fm.intervals_into(fm.full(), &mut scratch);
        for &(sym, iv) in &scratch {
            queues[sym as usize].push_back(iv);
        }
        Self {
            fm,
            queues,
            b,
            f: BitVec::zeros(n),
            buffer: Vec::new(),
            scratch,
        }
    }

    fn run(mut self, max_k: usize, early: bool, observer: &mut dyn LevelObserver) -> RunOutcome {
        let n = self.fm.len();
        let mut node_count = self.fm.sigma();
        let mut m = n;
        let mut k_star = 1;
        let mut m_star = n;
        let mut fusible = 0usize;
        let mut generated = 0u64;
        let mut sizes = vec![0usize; self.queues.len()];

        'levels: for k in 1..=max_k {
            m -= fusible;
            fusible = 0;

            // Mark the boundaries of this level's new nodes and revert the
            // fusions of parents whose subtree now branches.
            let mut last: Option<usize> = None;
            for queue in &self.queues {
                for &iv in queue {
                    if !self.b.get(iv.end) {
                        self.b.set(iv.end, true);
                        self.buffer.push(iv.end);
                        last.get_or_insert(iv.start);
                    } else {
                        let rb = iv.end - 1;
                        if self.f.get(rb) {
                            let parent_start = last.expect("rightmost child follows its siblings");
                            m += rb - parent_start;
                            self.f.set(rb, false);
                        }
                        last = None;
                    }
                }
            }
            if k == 1 {
                // Level 1 is the fallback optimum, so its marks are never undone.
                self.buffer.clear();
            }
            observer.level_marked(&LevelView {
                k,
                node_count,
                queues: &self.queues,
                boundaries: &self.b,
            });

            for (size, queue) in sizes.iter_mut().zip(&self.queues) {
                *size = queue.len();
            }
            for sym in 0..self.queues.len() {
                for _ in 0..sizes[sym] {
                    let iv = self.queues[sym].pop_front().expect("snapshot size");
                    self.fm.intervals_into(iv, &mut self.scratch);
                    generated += self.scratch.len() as u64;

                    if let [(_, child)] = self.scratch[..] {
                        if self.b.get(child.start) && self.b.get(child.end) {
                            m -= iv.len() - 1;
                        } else {
                            fusible += iv.len() - 1;
                        }
                        self.f.set(iv.end - 1, true);
                    }

                    for &(csym, child) in &self.scratch {
                        let closed_left = self.b.get(child.start);
                        let closed_right = self.b.get(child.end);
                        if closed_left && closed_right {
                            continue;
                        }
                        if !closed_right {
                            node_count += 1;
                            if early && node_count >= m_star {
                                break 'levels;
                            }
                        }
                        self.queues[csym as usize].push_back(child);
                    }
                }
            }

            observer.level_done(k, m);
            if m < m_star {
                k_star = k;
                m_star = m;
                self.buffer.clear();
            }
        }

        if n == 1 {
            m_star = 1;
        }
        RunOutcome {
            k_star,
            m_star,
            boundaries: self.b,
            buffer: self.buffer,
            intervals_generated: generated,
        }
    }
}
