//! Order selection for edge-reduced de Bruijn graphs, and tunneled BWTs.
//!
//! Given a null-terminated text `S`, [`edgemin::minimize_edges`] finds the
//! order `k*` whose edge-reduced de Bruijn graph has the fewest edges `m*`,
//! using one level-wise traversal of the rotation-trie simulated on an
//! FM-index. The node boundaries of the winning level feed
//! [`tunnel::build_tunneled`], which fuses every prefix interval that
//! corresponds to a fusible path of that graph; the result has exactly
//! `m*` entries and inverts back to `S`.
//!
//! All row positions in this crate are 0-based and intervals are
//! half-open.
//!
//! ```
//! use edgemin::{edgemin::minimize_edges, fm::FmIndex, text::Text, tunnel};
//!
//! let text = Text::ingest(b"AGTGGTGG", false).unwrap();
//! let fm = FmIndex::new(&text);
//! let best = minimize_edges(&fm);
//! assert_eq!((best.k_star, best.m_star), (2, 7));
//!
//! let tbwt = tunnel::build_tunneled(&fm, &best.boundaries, best.k_star).unwrap();
//! assert_eq!(tbwt.len(), 7);
//! assert_eq!(tunnel::invert_tunneled(&tbwt).unwrap(), text);
//! ```

pub mod bits;
pub mod edgemin;
pub mod error;
pub mod fm;
pub mod oracle;
pub mod tbwt;
pub mod text;
pub mod tunnel;
pub mod wavelet;

pub use error::{Error, Result};

use std::fmt;
use std::ops::Range;

/// Half-open range of rotation-matrix rows.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    #[inline]
    pub const fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    #[inline]
    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}
