//! Null-terminated input texts and their Burrows-Wheeler transform.

use crate::error::{Error, Result};

/// The end-of-text byte. It must not occur inside a text body.
pub const SENTINEL: u8 = 0x00;

/// Dense remapping of the bytes that occur in a text.
///
/// Codes are assigned in byte order, so comparing codes is the same as
/// comparing the original bytes. The sentinel, when present, is code 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    codes: [u16; 256],
}

impl Alphabet {
    const NONE: u16 = u16::MAX;

    /// Alphabet of the distinct bytes in `bytes`.
    pub fn of(bytes: &[u8]) -> Self {
        let mut seen = [false; 256];
        for &b in bytes {
            seen[b as usize] = true;
        }
        let symbols = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::from_symbols(symbols).expect("sorted by construction")
    }

    /// Alphabet from an explicit, strictly increasing symbol list.
    pub fn from_symbols(symbols: Vec<u8>) -> Option<Self> {
        if symbols.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let mut codes = [Self::NONE; 256];
        for (code, &b) in symbols.iter().enumerate() {
            codes[b as usize] = code as u16;
        }
        Some(Self { symbols, codes })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    #[inline]
    pub fn code(&self, byte: u8) -> Option<u8> {
        match self.codes[byte as usize] {
            Self::NONE => None,
            c => Some(c as u8),
        }
    }

    #[inline]
    pub fn symbol(&self, code: u8) -> u8 {
        self.symbols[code as usize]
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn encode(&self, bytes: &[u8]) -> Vec<u8> {
        bytes
            .iter()
            .map(|&b| self.code(b).expect("byte outside alphabet"))
            .collect()
    }

    pub fn decode(&self, codes: &[u8]) -> Vec<u8> {
        codes.iter().map(|&c| self.symbol(c)).collect()
    }
}

/// A validated null-terminated text: a body without interior sentinels,
/// followed by exactly one [`SENTINEL`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
    alphabet: Alphabet,
}

impl Text {
    /// Validates `raw` and appends the sentinel.
    ///
    /// With `strip_sentinel_bytes` set, every 0x00 byte of `raw` is dropped
    /// first; otherwise the first one is reported as an error.
    pub fn ingest(raw: &[u8], strip_sentinel_bytes: bool) -> Result<Self> {
        let mut bytes = Vec::with_capacity(raw.len() + 1);
        if strip_sentinel_bytes {
            bytes.extend(raw.iter().copied().filter(|&b| b != SENTINEL));
        } else {
            if let Some(offset) = raw.iter().position(|&b| b == SENTINEL) {
                return Err(Error::InteriorSentinel { offset });
            }
            bytes.extend_from_slice(raw);
        }
        bytes.push(SENTINEL);
        let alphabet = Alphabet::of(&bytes);
        Ok(Self { bytes, alphabet })
    }

    /// Text length including the sentinel.
    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false: a text holds at least the sentinel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct symbols, sentinel included.
    #[inline]
    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    /// The full text, sentinel included.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// The text without its trailing sentinel.
    pub fn body(&self) -> &[u8] {
        &self.bytes[..self.bytes.len() - 1]
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

/// The BWT of a text in dense symbol codes, with its C-array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwtData {
    l: Vec<u8>,
    c: Vec<usize>,
    text_row: usize,
    alphabet: Alphabet,
}

impl BwtData {
    /// Builds the BWT from the suffix array of the text.
    ///
    /// Because the text ends with a unique smallest sentinel, sorting its
    /// suffixes orders its rotations, and row `r` of the rotation matrix
    /// ends with the byte preceding suffix `sa[r]`.
    pub fn build(text: &Text) -> Self {
        let bytes = text.as_bytes();
        let n = bytes.len();
        let alphabet = text.alphabet().clone();
        let (_, sa) = divsufsort::sort(bytes).into_parts();
        let mut l = Vec::with_capacity(n);
        let mut text_row = 0;
        for (row, &pos) in sa.iter().enumerate() {
            let pos = pos as usize;
            let prev = if pos == 0 {
                text_row = row;
                bytes[n - 1]
            } else {
                bytes[pos - 1]
            };
            l.push(alphabet.code(prev).expect("byte from text"));
        }
        Self::from_codes(l, alphabet, text_row)
    }

    pub(crate) fn from_codes(l: Vec<u8>, alphabet: Alphabet, text_row: usize) -> Self {
        let c = cumulative_counts(&l, alphabet.len());
        Self {
            l,
            c,
            text_row,
            alphabet,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.l.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    /// Last column in dense codes.
    pub fn l(&self) -> &[u8] {
        &self.l
    }

    /// Last column in original bytes.
    pub fn l_bytes(&self) -> Vec<u8> {
        self.alphabet.decode(&self.l)
    }

    /// `c()[x]` is the number of symbols smaller than code `x`; length `sigma + 1`.
    pub fn c(&self) -> &[usize] {
        &self.c
    }

    /// Row of the rotation matrix equal to the text itself (0-based).
    pub fn text_row(&self) -> usize {
        self.text_row
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The full LF permutation (0-based), computed by one scan over L.
    pub fn lf_permutation(&self) -> Vec<usize> {
        let mut next = self.c[..self.sigma()].to_vec();
        self.l
            .iter()
            .map(|&sym| {
                let r = next[sym as usize];
                next[sym as usize] += 1;
                r
            })
            .collect()
    }

    /// Recovers the text by walking LF backwards from row 0.
    pub fn invert(&self) -> Text {
        let n = self.len();
        let lf = self.lf_permutation();
        let mut bytes = vec![SENTINEL; n];
        let mut row = 0;
        for slot in (0..n - 1).rev() {
            bytes[slot] = self.alphabet.symbol(self.l[row]);
            row = lf[row];
        }
        Text {
            bytes,
            alphabet: self.alphabet.clone(),
        }
    }
}

/// Cumulative symbol counts: entry `x` counts symbols with code `< x`.
pub(crate) fn cumulative_counts(seq: &[u8], sigma: usize) -> Vec<usize> {
    let mut c = vec![0usize; sigma + 1];
    for &s in seq {
        c[s as usize + 1] += 1;
    }
    for i in 1..=sigma {
        c[i] += c[i - 1];
    }
    c
}
