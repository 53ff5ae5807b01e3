//! Binary container for a tunneled BWT.
//!
//! Layout, all integers little-endian:
//!
//! | field      | size                                  |
//! |------------|---------------------------------------|
//! | magic      | 5 bytes, `TBWT1`                      |
//! | version    | u8, 1                                 |
//! | flags      | u8, 0                                 |
//! | n_original | u64, text length with sentinel        |
//! | p          | u64, tunneled length                  |
//! | sigma      | u16                                   |
//! | k_used     | u32                                   |
//! | alphabet   | sigma bytes, ascending, first is 0x00 |
//! | L          | p bytes, original symbol values       |
//! | D_out      | p + 1 bits in u64 words, LSB first    |
//! | q          | u64                                   |
//! | D_in       | q + 1 bits in u64 words, LSB first    |
//!
//! Padding bits in the last word of each bitvector must be zero.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::text::Alphabet;
use crate::tunnel::TunneledBwt;

pub const MAGIC: &[u8; 5] = b"TBWT1";
pub const VERSION: u8 = 1;

pub fn serialize(t: &TunneledBwt) -> Vec<u8> {
    let p = t.len();
    let mut out = Vec::with_capacity(32 + t.alphabet().len() + p + (p / 4) + 16);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(0);
    out.extend_from_slice(&(t.n_original() as u64).to_le_bytes());
    out.extend_from_slice(&(p as u64).to_le_bytes());
    out.extend_from_slice(&(t.alphabet().len() as u16).to_le_bytes());
    out.extend_from_slice(&(t.k_used() as u32).to_le_bytes());
    out.extend_from_slice(t.alphabet().symbols());
    out.extend_from_slice(&t.l_bytes());
    write_bits(&mut out, t.d_out());
    out.extend_from_slice(&(t.d_in().len() as u64 - 1).to_le_bytes());
    write_bits(&mut out, t.d_in());
    out
}

pub fn parse(data: &[u8]) -> Result<TunneledBwt> {
    let mut r = Reader { data, pos: 0 };
    if r.take(5, "magic")? != MAGIC {
        return Err(Error::Corrupt("bad magic".into()));
    }
    let version = r.u8("version")?;
    if version != VERSION {
        return Err(Error::Corrupt(format!("unsupported version {version}")));
    }
    let flags = r.u8("flags")?;
    if flags != 0 {
        return Err(Error::Corrupt(format!("unknown flags {flags:#04x}")));
    }
    let n_original = r.len_u64("n_original")?;
    let p = r.len_u64("p")?;
    let sigma = u16::from_le_bytes(r.array("sigma")?) as usize;
    let k_used = u32::from_le_bytes(r.array("k_used")?) as usize;
    if sigma == 0 || sigma > 256 {
        return Err(Error::Corrupt(format!("alphabet size {sigma}")));
    }
    if p == 0 || n_original == 0 {
        return Err(Error::Corrupt("empty text".into()));
    }
    let symbols = r.take(sigma, "alphabet")?.to_vec();
    let alphabet =
        Alphabet::from_symbols(symbols).ok_or_else(|| Error::Corrupt("alphabet not strictly ascending".into()))?;
    let l_bytes = r.take(p, "L")?;
    let l = l_bytes
        .iter()
        .map(|&b| {
            alphabet
                .code(b)
                .ok_or_else(|| Error::Corrupt(format!("byte {b:#04x} in L is not in the alphabet")))
        })
        .collect::<Result<Vec<u8>>>()?;
    let d_out = r.bits(p + 1, "D_out")?;
    let q = r.len_u64("q")?;
    if q != p {
        return Err(Error::Corrupt(format!("D_in covers {q} slots but L has {p} entries")));
    }
    let d_in = r.bits(q + 1, "D_in")?;
    if r.pos != data.len() {
        return Err(Error::Corrupt(format!("{} trailing bytes", data.len() - r.pos)));
    }
    TunneledBwt::from_parts(l, alphabet, d_out, d_in, n_original, k_used)
}

fn write_bits(out: &mut Vec<u8>, bits: &BitVec) {
    for w in bits.words() {
        out.extend_from_slice(&w.to_le_bytes());
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.data.len())
            .ok_or_else(|| Error::Corrupt(format!("truncated in {what}")))?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn array<const N: usize>(&mut self, what: &str) -> Result<[u8; N]> {
        Ok(self.take(N, what)?.try_into().expect("length checked"))
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    /// A u64 length, bounded by the bytes left so huge values fail early.
    fn len_u64(&mut self, what: &str) -> Result<usize> {
        let v = u64::from_le_bytes(self.array(what)?);
        usize::try_from(v)
            .ok()
            .filter(|&v| v < usize::MAX / 2)
            .ok_or_else(|| Error::Corrupt(format!("{what} = {v} is out of range")))
    }

    fn bits(&mut self, len: usize, what: &str) -> Result<BitVec> {
        let words = len.div_ceil(64);
        let raw = self.take(words * 8, what)?;
        let words = raw
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        BitVec::from_words(words, len).ok_or_else(|| Error::Corrupt(format!("{what} has nonzero padding")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgemin::minimize_edges;
    use crate::fm::FmIndex;
    use crate::text::Text;
    use crate::tunnel::{from_result, invert_tunneled};
    use proptest::prelude::*;

    fn tunneled(s: &[u8]) -> TunneledBwt {
        let fm = FmIndex::new(&Text::ingest(s, false).unwrap());
        from_result(&fm, &minimize_edges(&fm)).unwrap()
    }

    #[test]
    fn running_example_bytes() {
        let data = serialize(&tunneled(b"AGTGGTGG"));
        assert_eq!(&data[..5], b"TBWT1");
        assert_eq!(data[5..7], [1, 0]);
        assert_eq!(u64::from_le_bytes(data[7..15].try_into().unwrap()), 9);
        assert_eq!(u64::from_le_bytes(data[15..23].try_into().unwrap()), 7);
        assert_eq!(u16::from_le_bytes(data[23..25].try_into().unwrap()), 4);
        assert_eq!(u32::from_le_bytes(data[25..29].try_into().unwrap()), 2);
        assert_eq!(&data[29..33], b"\0AGT");
        assert_eq!(&data[33..40], b"G\0GTGAG");
        assert_eq!(u64::from_le_bytes(data[40..48].try_into().unwrap()), 0b1101_1111);
        assert_eq!(u64::from_le_bytes(data[48..56].try_into().unwrap()), 7);
        assert_eq!(u64::from_le_bytes(data[56..64].try_into().unwrap()), 0b1110_1111);
        assert_eq!(data.len(), 64);
        assert_eq!(parse(&data).unwrap(), tunneled(b"AGTGGTGG"));
    }

    #[test]
    fn every_truncation_is_rejected() {
        let data = serialize(&tunneled(b"AGTGGTGG"));
        for len in 0..data.len() {
            assert!(matches!(parse(&data[..len]), Err(Error::Corrupt(_))), "prefix {len}");
        }
    }

    #[test]
    fn header_corruption_is_rejected() {
        let data = serialize(&tunneled(b"AGTGGTGG"));
        let cases: &[(usize, u8)] = &[(0, b'X'), (5, 2), (6, 1), (23, 0), (29, b'A'), (30, 0), (33, b'Z')];
        for &(at, val) in cases {
            let mut bad = data.clone();
            bad[at] = val;
            assert!(parse(&bad).is_err(), "byte {at} = {val}");
        }
        let mut bad = data.clone();
        bad.push(0);
        assert!(parse(&bad).is_err());
        let mut bad = data.clone();
        bad[40 + 1] = 1;
        assert!(parse(&bad).is_err(), "padding");
        let mut bad = data.clone();
        bad[48] = 6;
        assert!(parse(&bad).is_err(), "q");
        let mut bad = data;
        bad[15] = 200;
        assert!(parse(&bad).is_err(), "p");
    }

    proptest! {
        #[test]
        fn round_trip(body in proptest::collection::vec(1u8..=4, 0..300)) {
            let t = tunneled(&body);
            let back = parse(&serialize(&t)).unwrap();
            prop_assert_eq!(&back, &t);
            let text = invert_tunneled(&back).unwrap();
            prop_assert_eq!(text.body(), &body[..]);
        }
    }
}
