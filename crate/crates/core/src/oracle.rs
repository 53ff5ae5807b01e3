//! Brute-force reference structures for small inputs.
//!
//! Nothing here touches the suffix-array, wavelet-tree or FM-index code:
//! rotations are sorted by direct comparison, de Bruijn graphs are built
//! from explicit k-mer strings, and the rotation-trie is materialized level
//! by level. Everything is quadratic or worse and meant for checking the
//! fast paths on inputs of a few hundred symbols.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::text::Text;
use crate::Interval;

/// Largest text the explicit rotation-trie accepts.
pub const TRIE_CAP: usize = 1_000;

/// Start positions of the rotations of `bytes` in sorted order.
pub fn sorted_rotations(bytes: &[u8]) -> Vec<usize> {
    let n = bytes.len();
    let mut rows: Vec<usize> = (0..n).collect();
    rows.sort_by(|&a, &b| {
        (0..n)
            .map(|i| bytes[(a + i) % n].cmp(&bytes[(b + i) % n]))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    rows
}

/// Last column of the sorted rotation matrix.
pub fn brute_force_bwt(bytes: &[u8]) -> Vec<u8> {
    let n = bytes.len();
    sorted_rotations(bytes)
        .into_iter()
        .map(|r| bytes[(r + n - 1) % n])
        .collect()
}

/// LF permutation obtained by locating each left-rotated row in the matrix.
pub fn brute_force_lf(bytes: &[u8]) -> Vec<usize> {
    let n = bytes.len();
    let rows = sorted_rotations(bytes);
    let mut row_of = vec![0; n];
    for (row, &start) in rows.iter().enumerate() {
        row_of[start] = row;
    }
    rows.iter().map(|&start| row_of[(start + n - 1) % n]).collect()
}

/// De Bruijn multigraph of order `k` of a cyclic text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDbg {
    pub k: usize,
    pub nodes: BTreeSet<Vec<u8>>,
    pub edges: BTreeMap<(Vec<u8>, Vec<u8>), usize>,
}

impl MultiDbg {
    pub fn total_multiplicity(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn successors(&self) -> BTreeMap<&[u8], BTreeSet<&[u8]>> {
        let mut out: BTreeMap<&[u8], BTreeSet<&[u8]>> = BTreeMap::new();
        for (x, y) in self.edges.keys() {
            out.entry(x).or_default().insert(y);
        }
        out
    }

    pub fn predecessors(&self) -> BTreeMap<&[u8], BTreeSet<&[u8]>> {
        let mut out: BTreeMap<&[u8], BTreeSet<&[u8]>> = BTreeMap::new();
        for (x, y) in self.edges.keys() {
            out.entry(y).or_default().insert(x);
        }
        out
    }

    /// Whether `(x, y)` is the only edge out of `x` and the only edge into `y`.
    pub fn is_fusible(&self, x: &[u8], y: &[u8]) -> bool {
        let succ = self.edges.keys().filter(|(a, _)| a == x).count();
        let pred = self.edges.keys().filter(|(_, b)| b == y).count();
        self.edges.contains_key(&(x.to_vec(), y.to_vec())) && succ == 1 && pred == 1
    }
}

fn kmer(bytes: &[u8], start: usize, k: usize) -> Vec<u8> {
    let n = bytes.len();
    (0..k).map(|i| bytes[(start + i) % n]).collect()
}

/// Order-`k` de Bruijn multigraph: one edge per cyclic (k+1)-mer occurrence.
pub fn build_dbg(text: &Text, k: usize) -> Result<MultiDbg> {
    let bytes = text.as_bytes();
    let n = bytes.len();
    if k == 0 || k > n {
        return Err(Error::OrderOutOfRange { k, max: n });
    }
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeMap::new();
    for i in 0..n {
        let x = kmer(bytes, i, k);
        let y = kmer(bytes, i + 1, k);
        nodes.insert(x.clone());
        *edges.entry((x, y)).or_insert(0) += 1;
    }
    Ok(MultiDbg { k, nodes, edges })
}

/// Edge-reduced graph: every fusible edge keeps multiplicity one.
pub fn reduce_edges(g: &MultiDbg) -> (MultiDbg, usize) {
    let succ = g.successors();
    let pred = g.predecessors();
    let mut reduced = g.clone();
    for ((x, y), m) in reduced.edges.iter_mut() {
        if succ[x.as_slice()].len() == 1 && pred[y.as_slice()].len() == 1 {
            *m = 1;
        }
    }
    let count = reduced.total_multiplicity();
    (reduced, count)
}

/// Edge count of the edge-reduced order-`k` graph, with the (k+1)-mers
/// borrowed from a doubled copy of the text instead of materialized.
/// Same graph as [`reduce_edges`] over [`build_dbg`], much less allocation.
pub fn reduced_edge_count(text: &Text, k: usize) -> Result<usize> {
    let bytes = text.as_bytes();
    let n = bytes.len();
    if k == 0 || k > n {
        return Err(Error::OrderOutOfRange { k, max: n });
    }
    let doubled = [bytes, bytes].concat();
    let mut edges: HashMap<&[u8], usize> = HashMap::new();
    for i in 0..n {
        *edges.entry(&doubled[i..i + k + 1]).or_insert(0) += 1;
    }
    let mut out_degree: HashMap<&[u8], usize> = HashMap::new();
    let mut in_degree: HashMap<&[u8], usize> = HashMap::new();
    for e in edges.keys() {
        *out_degree.entry(&e[..k]).or_insert(0) += 1;
        *in_degree.entry(&e[1..]).or_insert(0) += 1;
    }
    Ok(edges
        .iter()
        .map(|(e, &m)| {
            if out_degree[&e[..k]] == 1 && in_degree[&e[1..]] == 1 {
                1
            } else {
                m
            }
        })
        .sum())
}

/// Reduced edge count `m_k` for `k = 1..=n-1`, by explicit graphs.
pub fn naive_level_counts(text: &Text) -> Vec<usize> {
    (1..text.len())
        .map(|k| reduced_edge_count(text, k).expect("k in range"))
        .collect()
}

/// `(k*, m*)`: the smallest order minimizing the reduced edge count.
pub fn naive_minimize(text: &Text) -> (usize, usize) {
    let counts = naive_level_counts(text);
    let mut best = (1, text.len());
    for (i, &m) in counts.iter().enumerate() {
        if m < best.1 {
            best = (i + 1, m);
        }
    }
    if text.len() == 1 {
        best = (1, 1);
    }
    best
}

/// A Weiner link of a trie node, grouped by preceding symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeinerLink {
    pub symbol: u8,
    /// Index of the target node on the next level (or the same level at depth `n`).
    pub target: usize,
    /// Leaves below the source whose rotation ends with `symbol`.
    pub multiplicity: usize,
}

/// Explicit rotation-trie. Level `k` nodes are the maximal runs of sorted
/// rotations sharing a `k`-prefix; level 0 is the root.
#[derive(Clone, Debug)]
pub struct RotationTrie {
    bytes: Vec<u8>,
    rows: Vec<usize>,
    lf: Vec<usize>,
    levels: Vec<Vec<Interval>>,
    node_of_row: Vec<Vec<u32>>,
}

impl RotationTrie {
    pub fn new(text: &Text) -> Result<Self> {
        let bytes = text.as_bytes().to_vec();
        let n = bytes.len();
        if n > TRIE_CAP {
            return Err(Error::InputTooLarge { len: n, cap: TRIE_CAP });
        }
        let rows = sorted_rotations(&bytes);
        let lf = brute_force_lf(&bytes);
        // lcp[r] = common prefix length of rows r-1 and r (capped at n).
        let lcp: Vec<usize> = (0..n)
            .map(|r| {
                if r == 0 {
                    return 0;
                }
                (0..n)
                    .take_while(|&i| bytes[(rows[r - 1] + i) % n] == bytes[(rows[r] + i) % n])
                    .count()
            })
            .collect();
        let mut levels = Vec::with_capacity(n + 1);
        let mut node_of_row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut nodes = Vec::new();
            let mut ids = vec![0u32; n];
            let mut start = 0;
            for r in 1..=n {
                if r == n || lcp[r] < k {
                    for id in &mut ids[start..r] {
                        *id = nodes.len() as u32;
                    }
                    nodes.push(Interval::new(start, r));
                    start = r;
                }
            }
            levels.push(nodes);
            node_of_row.push(ids);
        }
        Ok(Self {
            bytes,
            rows,
            lf,
            levels,
            node_of_row,
        })
    }

    /// Text length (and trie depth).
    pub fn n(&self) -> usize {
        self.bytes.len()
    }

    pub fn nodes(&self, k: usize) -> &[Interval] {
        &self.levels[k]
    }

    pub fn node_of(&self, k: usize, row: usize) -> usize {
        self.node_of_row[k][row] as usize
    }

    pub fn interval(&self, k: usize, idx: usize) -> Interval {
        self.levels[k][idx]
    }

    /// First `k` symbols of the rotations in node `idx` of level `k`.
    pub fn label(&self, k: usize, idx: usize) -> Vec<u8> {
        kmer(&self.bytes, self.rows[self.levels[k][idx].start], k)
    }

    /// Last symbol of the rotation in `row`.
    pub fn last_symbol(&self, row: usize) -> u8 {
        let n = self.n();
        self.bytes[(self.rows[row] + n - 1) % n]
    }

    pub fn parent(&self, k: usize, idx: usize) -> usize {
        assert!(k >= 1);
        self.node_of(k - 1, self.levels[k][idx].start)
    }

    pub fn children(&self, k: usize, idx: usize) -> std::ops::Range<usize> {
        let iv = self.levels[k][idx];
        self.node_of(k + 1, iv.start)..self.node_of(k + 1, iv.end - 1) + 1
    }

    pub fn has_siblings(&self, k: usize, idx: usize) -> bool {
        self.levels[k][idx] != self.levels[k - 1][self.parent(k, idx)]
    }

    pub fn is_rightmost(&self, k: usize, idx: usize) -> bool {
        self.levels[k][idx].end == self.levels[k - 1][self.parent(k, idx)].end
    }

    /// Level of the targets of Weiner links leaving level `k`.
    pub fn link_level(&self, k: usize) -> usize {
        (k + 1).min(self.n())
    }

    /// Weiner links of node `idx` at level `k` (`1 <= k <= n`), by symbol.
    ///
    /// A row prefixed by the node label and ending in `c` is rotated right
    /// to a row prefixed by `c` followed by that label. At depth `n` the
    /// label is the whole rotation, so the target stays on level `n`.
    pub fn weiner_links(&self, k: usize, idx: usize) -> Vec<WeinerLink> {
        let target_level = self.link_level(k);
        let mut by_symbol: BTreeMap<u8, (usize, usize)> = BTreeMap::new();
        for row in self.levels[k][idx].range() {
            let target = self.node_of(target_level, self.lf[row]);
            let e = by_symbol.entry(self.last_symbol(row)).or_insert((target, 0));
            debug_assert_eq!(e.0, target);
            e.1 += 1;
        }
        by_symbol
            .into_iter()
            .map(|(symbol, (target, multiplicity))| WeinerLink {
                symbol,
                target,
                multiplicity,
            })
            .collect()
    }

    /// `w_k` of a node: 1 when it has a unique Weiner link whose target has
    /// no siblings, otherwise its leaf count.
    pub fn weight(&self, k: usize, idx: usize) -> usize {
        let links = self.weiner_links(k, idx);
        if links.len() == 1 && !self.has_siblings(self.link_level(k), links[0].target) {
            1
        } else {
            self.levels[k][idx].len()
        }
    }

    /// Boundary bitvector of level `k`: bit `p` is set when a node starts at
    /// row `p`, plus the closing bit at `n`.
    pub fn boundaries(&self, k: usize) -> BitVec {
        let mut b = BitVec::zeros(self.n() + 1);
        for iv in &self.levels[k] {
            b.set(iv.start, true);
        }
        b.set(self.n(), true);
        b
    }

    /// Nodes of level `k` that have siblings, in lexicographic order.
    pub fn sibling_nodes(&self, k: usize) -> Vec<Interval> {
        (0..self.levels[k].len())
            .filter(|&i| self.has_siblings(k, i))
            .map(|i| self.levels[k][i])
            .collect()
    }
}

/// Sum of node weights at level `k`.
pub fn weight_sum(trie: &RotationTrie, k: usize) -> Result<usize> {
    if k == 0 || k > trie.n() {
        return Err(Error::OrderOutOfRange { k, max: trie.n() });
    }
    Ok((0..trie.nodes(k).len()).map(|i| trie.weight(k, i)).sum())
}

/// Checks, on every root-to-leaf path, that exactly one node has a unique
/// Weiner link while all its ancestors have several and its whole subtree
/// has unique links; and that a node with a single child passes its weight
/// on as expected (1 below a unique link, unchanged below multiple links).
///
/// Returns a description of every violation found.
pub fn check_path_lemma(trie: &RotationTrie) -> Vec<String> {
    let n = trie.n();
    let mut violations = Vec::new();
    // unique[k][idx]: node has exactly one Weiner link.
    let unique: Vec<Vec<bool>> = (0..=n)
        .map(|k| {
            if k == 0 {
                return vec![false];
            }
            (0..trie.nodes(k).len())
                .map(|i| trie.weiner_links(k, i).len() == 1)
                .collect()
        })
        .collect();
    // subtree_unique[k][idx]: every node in the subtree has a unique link.
    let mut subtree_unique: Vec<Vec<bool>> = unique.clone();
    for k in (1..n).rev() {
        for i in 0..trie.nodes(k).len() {
            let all = trie.children(k, i).all(|c| subtree_unique[k + 1][c]);
            subtree_unique[k][i] = unique[k][i] && all;
        }
    }
    for leaf in 0..n {
        let mut hits = 0;
        let mut ancestors_multiple = true;
        for k in 1..=n {
            let idx = trie.node_of(k, leaf);
            if unique[k][idx] && ancestors_multiple && subtree_unique[k][idx] {
                hits += 1;
            }
            ancestors_multiple &= !unique[k][idx];
        }
        if hits != 1 {
            violations.push(format!("row {leaf}: {hits} nodes satisfy the path conditions"));
        }
    }
    for k in 1..n {
        for z in 0..trie.nodes(k).len() {
            let kids = trie.children(k, z);
            if kids.len() != 1 {
                continue;
            }
            let child = kids.start;
            let w_child = trie.weight(k + 1, child);
            let expected = if unique[k][z] { 1 } else { trie.weight(k, z) };
            if w_child != expected {
                violations.push(format!(
                    "level {k} node {z}: single child weight {w_child}, expected {expected}"
                ));
            }
        }
    }
    violations
}

/// Checks, for `k < n`, that the edges of the order-`k` graph are exactly
/// the Weiner links of level `k` (edge `(c·y[..k-1], y)` with multiplicity
/// equal to the leaves under `y` ending in `c`), and that an edge is fusible
/// iff its node has a unique link whose target has no siblings.
pub fn check_edge_correspondence(text: &Text, trie: &RotationTrie, k: usize) -> Result<Vec<String>> {
    let n = trie.n();
    if k == 0 || k >= n {
        return Err(Error::OrderOutOfRange { k, max: n - 1 });
    }
    let g = build_dbg(text, k)?;
    let mut from_trie = BTreeMap::new();
    let mut fusible_by_trie = BTreeSet::new();
    for idx in 0..trie.nodes(k).len() {
        let y = trie.label(k, idx);
        let links = trie.weiner_links(k, idx);
        for link in &links {
            let mut x = vec![link.symbol];
            x.extend_from_slice(&y[..k - 1]);
            if links.len() == 1 && !trie.has_siblings(k + 1, link.target) {
                fusible_by_trie.insert((x.clone(), y.clone()));
            }
            from_trie.insert((x, y.clone()), link.multiplicity);
        }
    }
    let mut violations = Vec::new();
    if from_trie != g.edges {
        violations.push(format!("level {k}: edge multiset differs from Weiner links"));
    }
    for (x, y) in g.edges.keys() {
        if g.is_fusible(x, y) != fusible_by_trie.contains(&(x.clone(), y.clone())) {
            violations.push(format!(
                "level {k}: fusibility of {:?} -> {:?} disagrees",
                String::from_utf8_lossy(x),
                String::from_utf8_lossy(y)
            ));
        }
    }
    Ok(violations)
}

/// Maximal chains of fusible edges with multiplicity above one, each as its
/// node sequence `x_1 -> ... -> x_w`.
pub fn fusible_paths(g: &MultiDbg) -> Vec<Vec<Vec<u8>>> {
    let succ = g.successors();
    let pred = g.predecessors();
    let mut next: BTreeMap<&[u8], &[u8]> = BTreeMap::new();
    for ((x, y), &m) in &g.edges {
        if m > 1 && succ[x.as_slice()].len() == 1 && pred[y.as_slice()].len() == 1 {
            next.insert(x, y);
        }
    }
    let has_prev: BTreeSet<&[u8]> = next.values().copied().collect();
    let mut paths = Vec::new();
    for &head in next.keys() {
        if has_prev.contains(head) {
            continue;
        }
        let mut path = vec![head.to_vec()];
        let mut cur = head;
        while let Some(&y) = next.get(cur) {
            path.push(y.to_vec());
            cur = y;
        }
        paths.push(path);
    }
    paths
}
