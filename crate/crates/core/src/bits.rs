//! Plain and rank/select-enabled bitvectors.
//!
//! Bits are packed LSB-first into `u64` words: bit `i` lives in word `i / 64`
//! at position `i % 64`. All positions are 0-based.

use std::fmt;

const WORD: usize = 64;
/// Words per rank superblock.
const SUPER: usize = 8;

/// A fixed-length, mutable bit sequence.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut bv = Self {
            words: vec![u64::MAX; len.div_ceil(WORD)],
            len,
        };
        bv.clear_padding();
        bv
    }

    /// Builds a bitvector from packed words. Bits past `len` must be zero.
    pub fn from_words(words: Vec<u64>, len: usize) -> Option<Self> {
        if words.len() != len.div_ceil(WORD) {
            return None;
        }
        let bv = Self { words, len };
        let mut padded = bv.clone();
        padded.clear_padding();
        (padded == bv).then_some(bv)
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut bv = Self::default();
        for b in bits {
            bv.push(b);
        }
        bv
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    /// Sets every bit in `start..end` to `value`.
    pub fn fill(&mut self, start: usize, end: usize, value: bool) {
        // Ranges here are usually short k-mer intervals; a bit loop is enough.
        for i in start..end {
            self.set(i, value);
        }
    }

    pub fn push(&mut self, value: bool) {
        if self.len % WORD == 0 {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.len = len;
        self.words.truncate(len.div_ceil(WORD));
        self.clear_padding();
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        write!(f, "BitVec({s})")
    }
}

/// An immutable bitvector with constant-time rank and logarithmic select.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSelect {
    bits: BitVec,
    /// Number of ones before each superblock of `SUPER` words.
    super_ranks: Vec<u64>,
    ones: usize,
}

impl RankSelect {
    pub fn new(bits: BitVec) -> Self {
        let mut super_ranks = Vec::with_capacity(bits.words.len() / SUPER + 1);
        let mut acc = 0u64;
        for (i, w) in bits.words.iter().enumerate() {
            if i % SUPER == 0 {
                super_ranks.push(acc);
            }
            acc += u64::from(w.count_ones());
        }
        super_ranks.push(acc);
        Self {
            bits,
            super_ranks,
            ones: acc as usize,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Number of ones in positions `0..i`. Requires `i <= len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.bits.len);
        let wi = i / WORD;
        let sb = wi / SUPER;
        let mut r = self.super_ranks[sb] as usize;
        for w in &self.bits.words[sb * SUPER..wi] {
            r += w.count_ones() as usize;
        }
        let rem = i % WORD;
        if rem != 0 {
            r += (self.bits.words[wi] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the one with 0-based rank `r`, if it exists.
    pub fn select1(&self, r: usize) -> Option<usize> {
        if r >= self.ones {
            return None;
        }
        let target = r as u64;
        // Last superblock whose prefix count is <= target.
        let sb = self.super_ranks.partition_point(|&x| x <= target) - 1;
        let mut remaining = (target - self.super_ranks[sb]) as u32;
        for (wi, &w) in self.bits.words.iter().enumerate().skip(sb * SUPER) {
            let c = w.count_ones();
            if remaining < c {
                return Some(wi * WORD + select_in_word(w, remaining));
            }
            remaining -= c;
        }
        None
    }

    /// Serialized footprint: packed words plus the rank directory.
    pub fn size_in_bytes(&self) -> usize {
        8 * (self.bits.words.len() + self.super_ranks.len())
    }
}

#[inline]
fn select_in_word(mut w: u64, mut r: u32) -> usize {
    while r > 0 {
        w &= w - 1;
        r -= 1;
    }
    w.trailing_zeros() as usize
}
