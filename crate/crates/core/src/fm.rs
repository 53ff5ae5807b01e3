//! FM-index: a BWT held in a wavelet tree.
//!
//! Rows and intervals are 0-based; an [`Interval`] is half-open, so the
//! 1-based closed interval `[lb, rb]` corresponds to `Interval::new(lb - 1, rb)`.

use crate::error::{Error, Result};
use crate::text::{BwtData, Text};
use crate::wavelet::WaveletTree;
use crate::Interval;

#[derive(Clone, Debug)]
pub struct FmIndex {
    bwt: BwtData,
    wt: WaveletTree,
}

impl FmIndex {
    pub fn new(text: &Text) -> Self {
        Self::from_bwt(BwtData::build(text))
    }

    pub fn from_bwt(bwt: BwtData) -> Self {
        let wt = WaveletTree::new(bwt.l(), bwt.sigma());
        Self { bwt, wt }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.bwt.sigma()
    }

    pub fn bwt(&self) -> &BwtData {
        &self.bwt
    }

    pub fn wavelet_tree(&self) -> &WaveletTree {
        &self.wt
    }

    /// Interval of all rows.
    pub fn full(&self) -> Interval {
        Interval::new(0, self.len())
    }

    /// Occurrences of code `sym` among the first `i` symbols of L.
    pub fn rank(&self, sym: u8, i: usize) -> Result<usize> {
        if sym as usize >= self.sigma() {
            return Err(Error::SymbolOutOfRange {
                symbol: sym as usize,
                sigma: self.sigma(),
            });
        }
        if i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.len(),
            });
        }
        Ok(self.wt.rank(sym, i))
    }

    /// LF-mapping of row `i`.
    pub fn lf_step(&self, i: usize) -> Result<usize> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.len(),
            });
        }
        let sym = self.bwt.l()[i];
        Ok(self.bwt.c()[sym as usize] + self.wt.rank(sym, i))
    }

    /// Extends the ω-interval `iv` to the cω-interval. The result is empty
    /// when cω does not occur.
    pub fn backward_step(&self, sym: u8, iv: Interval) -> Result<Interval> {
        self.check_interval(iv)?;
        let lo = self.rank(sym, iv.start)?;
        let hi = self.rank(sym, iv.end)?;
        let base = self.bwt.c()[sym as usize];
        Ok(Interval::new(base + lo, base + hi))
    }

    /// Every non-empty cω-interval reachable from the ω-interval `iv`, by
    /// ascending symbol.
    pub fn get_intervals(&self, iv: Interval) -> Result<Vec<(u8, Interval)>> {
        self.check_interval(iv)?;
        if iv.is_empty() {
            return Err(Error::InvalidInterval {
                start: iv.start,
                end: iv.end,
                len: self.len(),
            });
        }
        let mut out = Vec::new();
        self.wt.intervals_into(iv, &mut out);
        Ok(out)
    }

    /// Unchecked [`get_intervals`](Self::get_intervals) into a reused buffer.
    #[inline]
    pub(crate) fn intervals_into(&self, iv: Interval, out: &mut Vec<(u8, Interval)>) {
        out.clear();
        self.wt.intervals_into(iv, out);
    }

    fn check_interval(&self, iv: Interval) -> Result<()> {
        if iv.start > iv.end || iv.end > self.len() {
            return Err(Error::InvalidInterval {
                start: iv.start,
                end: iv.end,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Serialized size of the wavelet tree, the usual FM-index footprint.
    pub fn size_in_bytes(&self) -> usize {
        self.wt.size_in_bytes()
    }
}
