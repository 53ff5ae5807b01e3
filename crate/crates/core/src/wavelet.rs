//! Balanced wavelet tree over a sequence of dense symbol codes.
//!
//! The tree is stored level by level. Level `d` holds, for every position
//! of the sequence stably sorted by the top `d` bits of its symbol, the
//! next bit of that symbol. Node boundaries are not stored: the node with
//! prefix `p` at level `d` starts where symbols with a smaller prefix end,
//! which the cumulative symbol counts give directly.

use crate::bits::{BitVec, RankSelect};
use crate::text::cumulative_counts;
use crate::Interval;

#[derive(Clone, Debug)]
pub struct WaveletTree {
    len: usize,
    sigma: usize,
    depth: usize,
    levels: Vec<RankSelect>,
    counts: Vec<usize>,
}

impl WaveletTree {
    /// Builds the tree for `seq`, whose codes must all be `< sigma`.
    pub fn new(seq: &[u8], sigma: usize) -> Self {
        assert!((1..=256).contains(&sigma), "alphabet size {sigma}");
        let depth = bit_width(sigma - 1);
        let counts = cumulative_counts(seq, sigma);
        let mut levels = Vec::with_capacity(depth);
        let mut cur = seq.to_vec();
        let mut next = vec![0u8; seq.len()];
        for d in 0..depth {
            let shift = depth - 1 - d;
            levels.push(RankSelect::new(BitVec::from_bools(
                cur.iter().map(|&s| (s >> shift) & 1 == 1),
            )));
            // Stable counting sort by the top d+1 bits gives the next level.
            let mut offsets = vec![0usize; (1 << (d + 1)) + 1];
            for &s in &cur {
                offsets[(s >> shift) as usize + 1] += 1;
            }
            for i in 1..offsets.len() {
                offsets[i] += offsets[i - 1];
            }
            for &s in &cur {
                let key = (s >> shift) as usize;
                next[offsets[key]] = s;
                offsets[key] += 1;
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Self {
            len: seq.len(),
            sigma,
            depth,
            levels,
            counts,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Cumulative symbol counts (`sigma + 1` entries).
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Start of the node with `prefix` (the top `d` bits) at level `d`.
    #[inline]
    fn node_start(&self, d: usize, prefix: usize) -> usize {
        let first = prefix << (self.depth - d);
        self.counts[first.min(self.sigma)]
    }

    pub fn access(&self, i: usize) -> u8 {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let mut prefix = 0usize;
        let mut start = 0usize;
        let mut rel = i;
        for (d, level) in self.levels.iter().enumerate() {
            let base = level.rank1(start);
            let ones = level.rank1(start + rel) - base;
            if level.get(start + rel) {
                rel = ones;
                prefix = 2 * prefix + 1;
            } else {
                rel -= ones;
                prefix *= 2;
            }
            start = self.node_start(d + 1, prefix);
        }
        prefix as u8
    }

    /// Occurrences of `sym` in the first `i` positions.
    pub fn rank(&self, sym: u8, i: usize) -> usize {
        debug_assert!(i <= self.len && (sym as usize) < self.sigma);
        let sym = sym as usize;
        let mut start = 0usize;
        let mut rel = i;
        for (d, level) in self.levels.iter().enumerate() {
            let shift = self.depth - 1 - d;
            let base = level.rank1(start);
            let ones = level.rank1(start + rel) - base;
            if (sym >> shift) & 1 == 1 {
                rel = ones;
            } else {
                rel -= ones;
            }
            start = self.node_start(d + 1, sym >> shift);
        }
        rel
    }

    /// Appends `(sym, [counts[sym] + rank(sym, start), counts[sym] + rank(sym, end)))`
    /// for every distinct symbol of `seq[range]`, in ascending symbol order.
    ///
    /// Subtrees whose part of the range is empty are never entered, so the
    /// cost is proportional to the output size times the tree depth at worst.
    pub fn intervals_into(&self, range: Interval, out: &mut Vec<(u8, Interval)>) {
        debug_assert!(range.start <= range.end && range.end <= self.len);
        self.collect(0, 0, range.start, range.end, out);
    }

    fn collect(&self, d: usize, prefix: usize, lo: usize, hi: usize, out: &mut Vec<(u8, Interval)>) {
        if lo == hi {
            return;
        }
        if d == self.depth {
            let base = self.counts[prefix];
            out.push((prefix as u8, Interval::new(base + lo, base + hi)));
            return;
        }
        let level = &self.levels[d];
        let start = self.node_start(d, prefix);
        let base = level.rank1(start);
        let ones_lo = level.rank1(start + lo) - base;
        let ones_hi = level.rank1(start + hi) - base;
        self.collect(d + 1, 2 * prefix, lo - ones_lo, hi - ones_hi, out);
        self.collect(d + 1, 2 * prefix + 1, ones_lo, ones_hi, out);
    }

    /// Bytes needed to store the level bitvectors, their rank directories,
    /// and the count array.
    pub fn size_in_bytes(&self) -> usize {
        self.levels.iter().map(RankSelect::size_in_bytes).sum::<usize>() + 8 * self.counts.len()
    }
}

fn bit_width(x: usize) -> usize {
    (usize::BITS - x.leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rank(seq: &[u8], sym: u8, i: usize) -> usize {
        seq[..i].iter().filter(|&&s| s == sym).count()
    }

    #[test]
    fn running_example_ranks() {
        // G $ G T T G A G G with codes $=0 A=1 G=2 T=3.
        let l = [2u8, 0, 2, 3, 3, 2, 1, 2, 2];
        let wt = WaveletTree::new(&l, 4);
        assert_eq!(wt.rank(2, 9), 5);
        assert_eq!(wt.rank(0, 2), 1);
        for c in 0..4 {
            assert_eq!(wt.rank(c, 0), 0);
        }
        for (i, &s) in l.iter().enumerate() {
            assert_eq!(wt.access(i), s);
        }
    }

    #[test]
    fn single_symbol_tree() {
        let wt = WaveletTree::new(&[0], 1);
        assert_eq!(wt.access(0), 0);
        assert_eq!(wt.rank(0, 1), 1);
        let mut out = Vec::new();
        wt.intervals_into(Interval::new(0, 1), &mut out);
        assert_eq!(out, vec![(0, Interval::new(0, 1))]);
    }

    proptest! {
        #[test]
        fn matches_naive(seq in proptest::collection::vec(0u8..=255, 1..300), sigma_extra in 0usize..3) {
            let sigma = (*seq.iter().max().unwrap() as usize + 1 + sigma_extra).min(256);
            let wt = WaveletTree::new(&seq, sigma);
            for (i, &s) in seq.iter().enumerate() {
                prop_assert_eq!(wt.access(i), s);
            }
            for sym in 0..sigma as u8 {
                let mut prev = 0;
                for i in (0..=seq.len()).step_by(7) {
                    let r = wt.rank(sym, i);
                    prop_assert_eq!(r, naive_rank(&seq, sym, i));
                    prop_assert!(r >= prev);
                    prev = r;
                }
            }
        }

        #[test]
        fn intervals_match_naive(seq in proptest::collection::vec(0u8..12, 1..200), a in 0usize..200, b in 0usize..200) {
            let sigma = 12;
            let wt = WaveletTree::new(&seq, sigma);
            let (lo, hi) = (a.min(b) % seq.len(), (a.max(b) % seq.len()) + 1);
            let (lo, hi) = (lo.min(hi), hi.max(lo));
            let mut got = Vec::new();
            wt.intervals_into(Interval::new(lo, hi), &mut got);
            let mut want = Vec::new();
            for sym in 0..sigma as u8 {
                if seq[lo..hi].contains(&sym) {
                    let base = wt.counts()[sym as usize];
                    want.push((sym, Interval::new(base + naive_rank(&seq, sym, lo), base + naive_rank(&seq, sym, hi))));
                }
            }
            prop_assert_eq!(got, want);
        }
    }
}
