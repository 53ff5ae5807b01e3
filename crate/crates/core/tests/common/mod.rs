#![allow(dead_code)]

use edgemin::fm::FmIndex;
use edgemin::text::Text;
use proptest::prelude::*;

/// Text bodies over the first `sigma` capital letters.
pub fn body(sigma: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(b'A'..b'A' + sigma, 0..=max_len)
}

/// Bodies with an alphabet size drawn from {2, 4, 8}.
pub fn mixed_body(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop_oneof![body(2, max_len), body(4, max_len), body(8, max_len)]
}

pub fn index(body: &[u8]) -> (Text, FmIndex) {
    let text = Text::ingest(body, false).unwrap();
    let fm = FmIndex::new(&text);
    (text, fm)
}
