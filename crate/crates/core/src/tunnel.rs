//! Tunneled BWT built from the node boundaries of one de Bruijn order.
//!
//! A k-mer `y` whose rows all end with the same symbol, and whose preceding
//! k-mer `x` is followed by nothing but `y`, is fused with `x`: only the top
//! row of `y` keeps its L entry, and only the top row of `x` keeps its F
//! entry. `D_in` marks the surviving L entries (and the run of F rows that
//! share them), `D_out` the surviving F entries. Both carry one trailing
//! terminator bit.

use std::collections::{BTreeMap, BTreeSet};

use crate::bits::{BitVec, RankSelect};
use crate::edgemin::EdgeMinResult;
use crate::error::{Error, Result};
use crate::fm::FmIndex;
use crate::oracle::{brute_force_bwt, brute_force_lf, build_dbg, fusible_paths, sorted_rotations, TRIE_CAP};
use crate::text::{cumulative_counts, Alphabet, Text, SENTINEL};
use crate::wavelet::WaveletTree;
use crate::Interval;

/// A run of rows whose last symbols agree along `width` backward steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrefixInterval {
    pub width: usize,
    pub rows: Interval,
}

impl PrefixInterval {
    /// L entries removed by tunneling this interval.
    pub fn removed(&self) -> usize {
        self.width * (self.rows.len() - 1)
    }
}

#[derive(Clone, Debug)]
pub struct TunneledBwt {
    l: Vec<u8>,
    wt: WaveletTree,
    c: Vec<usize>,
    d_out: RankSelect,
    d_in: RankSelect,
    alphabet: Alphabet,
    n_original: usize,
    k_used: usize,
}

impl PartialEq for TunneledBwt {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l
            && self.d_out.bits() == other.d_out.bits()
            && self.d_in.bits() == other.d_in.bits()
            && self.alphabet == other.alphabet
            && self.n_original == other.n_original
            && self.k_used == other.k_used
    }
}

impl Eq for TunneledBwt {}

impl TunneledBwt {
    /// Assembles a tunneled BWT from stored parts, checking their shape.
    ///
    /// `l` holds dense codes of `alphabet`, whose first symbol must be the
    /// sentinel. Both bitvectors need length `l.len() + 1`, a leading and a
    /// trailing one, and the same number of runs.
    pub fn from_parts(
        l: Vec<u8>,
        alphabet: Alphabet,
        d_out: BitVec,
        d_in: BitVec,
        n_original: usize,
        k_used: usize,
    ) -> Result<Self> {
        let p = l.len();
        let sigma = alphabet.len();
        if sigma == 0 || alphabet.symbols()[0] != SENTINEL {
            return Err(Error::Corrupt("alphabet does not start with the sentinel".into()));
        }
        if let Some(&bad) = l.iter().find(|&&s| s as usize >= sigma) {
            return Err(Error::Corrupt(format!("symbol code {bad} outside alphabet of {sigma}")));
        }
        let sentinels = l.iter().filter(|&&s| s == 0).count();
        if sentinels != 1 {
            return Err(Error::Corrupt(format!("L holds {sentinels} sentinels")));
        }
        if n_original < p {
            return Err(Error::Corrupt(format!("original length {n_original} below tunneled length {p}")));
        }
        for (name, bits) in [("D_out", &d_out), ("D_in", &d_in)] {
            if bits.len() != p + 1 {
                return Err(Error::Corrupt(format!("{name} has {} bits, expected {}", bits.len(), p + 1)));
            }
            if !bits.get(0) || !bits.get(p) {
                return Err(Error::Corrupt(format!("{name} lacks its first or terminator bit")));
            }
        }
        if d_out.count_ones() != d_in.count_ones() {
            return Err(Error::Corrupt(format!(
                "D_out has {} runs but D_in has {}",
                d_out.count_ones(),
                d_in.count_ones()
            )));
        }
        Ok(Self::assemble(l, alphabet, d_out, d_in, n_original, k_used))
    }

    fn assemble(l: Vec<u8>, alphabet: Alphabet, d_out: BitVec, d_in: BitVec, n_original: usize, k_used: usize) -> Self {
        let sigma = alphabet.len();
        let c = cumulative_counts(&l, sigma);
        let wt = WaveletTree::new(&l, sigma);
        Self {
            l,
            wt,
            c,
            d_out: RankSelect::new(d_out),
            d_in: RankSelect::new(d_in),
            alphabet,
            n_original,
            k_used,
        }
    }

    /// Number of L entries left after tunneling.
    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }

    /// Tunneled L in dense codes.
    pub fn l(&self) -> &[u8] {
        &self.l
    }

    pub fn l_bytes(&self) -> Vec<u8> {
        self.alphabet.decode(&self.l)
    }

    /// C-array of the tunneled L.
    pub fn c(&self) -> &[usize] {
        &self.c
    }

    pub fn d_out(&self) -> &BitVec {
        self.d_out.bits()
    }

    pub fn d_in(&self) -> &BitVec {
        self.d_in.bits()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Length of the original text, sentinel included.
    pub fn n_original(&self) -> usize {
        self.n_original
    }

    /// De Bruijn order whose k-mers were tunneled.
    pub fn k_used(&self) -> usize {
        self.k_used
    }

    /// `select1(D_out, rank1(D_in, C[L[i]] + rank_{L[i]}(L, i)))` in 0-based form.
    pub fn generalized_lf(&self, i: usize) -> Result<usize> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.len(),
            });
        }
        let (_, run) = self.in_run(i);
        Ok(self.d_out.select1(run).expect("runs match"))
    }

    /// Slot in F reached from position `i`, and the index of its `D_in` run.
    fn in_run(&self, i: usize) -> (usize, usize) {
        let sym = self.l[i];
        let slot = self.c[sym as usize] + self.wt.rank(sym, i);
        (slot, self.d_in.rank1(slot + 1) - 1)
    }

    /// Serialized size: wavelet tree, both bitvectors, C-array and alphabet.
    pub fn size_in_bytes(&self) -> usize {
        self.wt.size_in_bytes() + self.d_out.size_in_bytes() + self.d_in.size_in_bytes() + self.alphabet.len()
    }
}

/// Tunnels every fusible edge between the k-mers delimited by `boundaries`.
pub fn build_tunneled(fm: &FmIndex, boundaries: &BitVec, k_used: usize) -> Result<TunneledBwt> {
    build_tunneled_report(fm, boundaries, k_used).map(|(t, _)| t)
}

/// Tunnels at the optimum found by edge minimization.
pub fn from_result(fm: &FmIndex, result: &EdgeMinResult) -> Result<TunneledBwt> {
    build_tunneled(fm, &result.boundaries, result.k_star)
}

/// [`build_tunneled`] plus the prefix intervals that were tunneled, each
/// reported at its bottom k-mer with the number of fused edges as width.
/// Fusions of single-row k-mers change nothing and are not reported.
pub fn build_tunneled_report(
    fm: &FmIndex,
    boundaries: &BitVec,
    k_used: usize,
) -> Result<(TunneledBwt, Vec<PrefixInterval>)> {
    let n = fm.len();
    if boundaries.len() != n + 1 {
        return Err(Error::InvalidBoundaries(format!(
            "length {} for a BWT of length {n}",
            boundaries.len()
        )));
    }
    if !boundaries.get(0) || !boundaries.get(n) {
        return Err(Error::InvalidBoundaries("first or closing bit is unset".into()));
    }
    let nodes = RankSelect::new(boundaries.clone());
    let mut d_out = boundaries.clone();
    let mut d_in = boundaries.clone();
    // Fused edges keyed by the start of y, valued by the interval of x.
    let mut fused: BTreeMap<usize, Interval> = BTreeMap::new();
    let mut sources: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::with_capacity(fm.sigma());
    let mut start = 0;
    for j in 0..n {
        if !d_in.get(j + 1) {
            continue;
        }
        let y = Interval::new(start, j + 1);
        fm.intervals_into(y, &mut out);
        for &(_, x) in &out {
            let node = nodes.rank1(x.start + 1) - 1;
            let node_end = nodes.select1(node + 1).expect("closing bit is set");
            if x.end > node_end {
                return Err(Error::InvalidBoundaries(format!(
                    "image {x:?} of {y:?} crosses the boundary at {node_end}"
                )));
            }
        }
        match out[..] {
            [(_, x)] if d_out.get(x.start) && d_out.get(x.end) => {
                d_in.fill(y.start + 1, y.end, false);
                d_out.fill(x.start + 1, x.end, false);
                if y.len() > 1 {
                    fused.insert(y.start, x);
                    sources.insert(x.start);
                }
            }
            _ => {
                d_in.fill(y.start, y.end, true);
                for &(_, x) in &out {
                    d_out.fill(x.start, x.end, true);
                }
            }
        }
        start = j + 1;
    }

    let mut l = fm.bwt().l().to_vec();
    let (mut p, mut q) = (0, 0);
    for i in 0..n {
        let keep_l = d_in.get(i);
        let keep_f = d_out.get(i);
        if keep_l {
            l[p] = l[i];
            d_out.set(p, keep_f);
            p += 1;
        }
        if keep_f {
            d_in.set(q, keep_l);
            q += 1;
        }
    }
    if p != q {
        return Err(Error::Inconsistent(format!("{p} L entries but {q} F entries survive")));
    }
    l.truncate(p);
    d_out.truncate(p);
    d_out.push(true);
    d_in.truncate(q);
    d_in.push(true);

    let mut report = Vec::new();
    for (&y_start, _) in fused.iter().filter(|(s, _)| !sources.contains(s)) {
        let mut width = 0;
        let mut cur = y_start;
        while let Some(x) = fused.get(&cur) {
            width += 1;
            cur = x.start;
        }
        let node = nodes.rank1(y_start + 1) - 1;
        let end = nodes.select1(node + 1).expect("closing bit is set");
        report.push(PrefixInterval {
            width,
            rows: Interval::new(y_start, end),
        });
    }

    let tbwt = TunneledBwt::assemble(l, fm.bwt().alphabet().clone(), d_out, d_in, n, k_used);
    Ok((tbwt, report))
}

/// Recovers the original text by walking the generalized LF-mapping
/// backwards from the sentinel row, carrying tunnel entry offsets.
pub fn invert_tunneled(t: &TunneledBwt) -> Result<Text> {
    let n = t.n_original;
    let p = t.len();
    let mut body = Vec::with_capacity(n.saturating_sub(1));
    let mut offsets: Vec<usize> = Vec::new();
    let mut pos = 0;
    for _ in 1..n {
        let sym = t.l[pos];
        if sym == 0 {
            return Err(Error::Corrupt(format!("sentinel reached after {} symbols", body.len())));
        }
        body.push(t.alphabet.symbol(sym));

        let (slot, run) = t.in_run(pos);
        let run_start = t.d_in.select1(run).expect("slot lies in a run");
        if slot > run_start || !t.d_in.get(slot + 1) {
            offsets.push(slot - run_start);
        }
        pos = t
            .d_out
            .select1(run)
            .filter(|&x| x < p)
            .ok_or_else(|| Error::Corrupt(format!("run {run} has no L position")))?;
        if !t.d_out.get(pos + 1) {
            let offset = offsets
                .pop()
                .ok_or_else(|| Error::Corrupt(format!("tunnel exit at {pos} without an entry")))?;
            let width = t.d_out.select1(run + 1).expect("terminator closes every run") - pos;
            if offset >= width {
                return Err(Error::Corrupt(format!("offset {offset} exceeds tunnel width {width}")));
            }
            pos += offset;
        }
    }
    if t.l[pos] != 0 {
        return Err(Error::Corrupt("walk did not end at the sentinel".into()));
    }
    if !offsets.is_empty() {
        return Err(Error::Corrupt(format!("{} tunnel entries never exited", offsets.len())));
    }
    body.reverse();
    Text::ingest(&body, false)
}

/// Brute-force check that the maximal fusible paths of the order-`k` graph
/// are prefix intervals of the BWT.
///
/// Each path `x_1 -> ... -> x_w` must map to a `<w - 1, rows(x_w)>` prefix
/// interval, the paths must carry `(w - 1) * |rows|` edges, the row sets
/// they cover must be pairwise disjoint, and `boundaries` must be the
/// level-`k` node partition. Returns the intervals sorted by row.
pub fn validate_prefix_intervals(fm: &FmIndex, k: usize, boundaries: &BitVec) -> Result<Vec<PrefixInterval>> {
    let n = fm.len();
    if n > TRIE_CAP {
        return Err(Error::InputTooLarge { len: n, cap: TRIE_CAP });
    }
    let text = fm.bwt().invert();
    let bytes = text.as_bytes();
    let g = build_dbg(&text, k)?;
    let rows = sorted_rotations(bytes);
    let lf = brute_force_lf(bytes);
    let l = brute_force_bwt(bytes);
    let kmer_of = |row: usize| -> Vec<u8> { (0..k).map(|i| bytes[(rows[row] + i) % n]).collect() };

    let mut violations = Vec::new();
    let mut expected = BitVec::zeros(n + 1);
    expected.set(n, true);
    for r in 0..n {
        if r == 0 || kmer_of(r) != kmer_of(r - 1) {
            expected.set(r, true);
        }
    }
    if &expected != boundaries {
        violations.push(format!("boundaries are not the level-{k} partition"));
    }

    let mut found = Vec::new();
    let mut covered: BTreeMap<usize, usize> = BTreeMap::new();
    for (pidx, path) in fusible_paths(&g).iter().enumerate() {
        let last = path.last().expect("paths are non-empty");
        let members: Vec<usize> = (0..n).filter(|&r| &kmer_of(r) == last).collect();
        let iv = Interval::new(members[0], members[members.len() - 1] + 1);
        if iv.len() != members.len() {
            violations.push(format!("rows of {:?} are not contiguous", String::from_utf8_lossy(last)));
            continue;
        }
        let width = path.len() - 1;

        let mut cur: Vec<usize> = iv.range().collect();
        let first = bytes[rows[cur[0]]];
        if cur.iter().any(|&r| bytes[rows[r]] != first) {
            violations.push(format!("{iv:?}: first column differs"));
        }
        for x in 0..width {
            let sym = l[cur[0]];
            if cur.iter().any(|&r| l[r] != sym) {
                violations.push(format!("{iv:?}: last column differs after {x} steps"));
            }
            for r in &mut cur {
                *r = lf[*r];
            }
        }

        let edges: usize = path.windows(2).map(|e| g.edges[&(e[0].clone(), e[1].clone())]).sum();
        if edges != width * iv.len() {
            violations.push(format!("{iv:?}: path carries {edges} edges, expected {}", width * iv.len()));
        }

        for y in iv.range() {
            let mut r = y;
            for _ in 0..=width {
                if let Some(other) = covered.insert(r, pidx) {
                    if other != pidx {
                        violations.push(format!("row {r} is covered by paths {other} and {pidx}"));
                    }
                }
                r = lf[r];
            }
        }
        found.push(PrefixInterval { width, rows: iv });
    }

    if violations.is_empty() {
        found.sort_by_key(|pi| pi.rows);
        Ok(found)
    } else {
        Err(Error::PrefixIntervals(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgemin::minimize_edges;

    fn example() -> (Text, FmIndex) {
        let t = Text::ingest(b"AGTGGTGG", false).unwrap();
        let fm = FmIndex::new(&t);
        (t, fm)
    }

    fn bits(s: &str) -> BitVec {
        BitVec::from_bools(s.bytes().map(|b| b == b'1'))
    }

    #[test]
    fn running_example_layout() {
        let (_, fm) = example();
        let best = minimize_edges(&fm);
        let (t, report) = build_tunneled_report(&fm, &best.boundaries, 2).unwrap();
        assert_eq!(t.l_bytes(), b"G\0GTGAG");
        assert_eq!(t.d_out(), &bits("11111011"));
        assert_eq!(t.d_in(), &bits("11110111"));
        assert_eq!(t.c(), &[0, 1, 2, 6, 7]);
        assert_eq!(
            report,
            vec![PrefixInterval {
                width: 2,
                rows: Interval::new(3, 5)
            }]
        );
    }

    #[test]
    fn running_example_slot_mapping() {
        let (_, fm) = example();
        let best = minimize_edges(&fm);
        let t = from_result(&fm, &best).unwrap();
        let targets: Vec<usize> = (0..7)
            .map(|slot| t.d_out.select1(t.d_in.rank1(slot + 1) - 1).unwrap())
            .collect();
        assert_eq!(targets, vec![0, 1, 2, 3, 3, 4, 6]);
        let lf: Vec<usize> = (0..7).map(|i| t.generalized_lf(i).unwrap()).collect();
        assert_eq!(lf, vec![2, 0, 3, 6, 3, 1, 4]);
        assert!(t.generalized_lf(7).is_err());
    }

    #[test]
    fn running_example_round_trip() {
        let (text, fm) = example();
        let t = from_result(&fm, &minimize_edges(&fm)).unwrap();
        assert_eq!(invert_tunneled(&t).unwrap(), text);
    }

    #[test]
    fn singleton_boundaries_leave_bwt_unchanged() {
        let (text, fm) = example();
        let all = BitVec::ones(fm.len() + 1);
        let (t, report) = build_tunneled_report(&fm, &all, 8).unwrap();
        assert!(report.is_empty());
        assert_eq!(t.l(), fm.bwt().l());
        assert_eq!(t.d_out(), &all);
        assert_eq!(t.d_in(), &all);
        for i in 0..fm.len() {
            assert_eq!(t.generalized_lf(i).unwrap(), fm.lf_step(i).unwrap());
        }
        assert_eq!(invert_tunneled(&t).unwrap(), text);
    }

    #[test]
    fn no_fusible_edges() {
        let text = Text::ingest(b"ABCD", false).unwrap();
        let fm = FmIndex::new(&text);
        let best = minimize_edges(&fm);
        let t = from_result(&fm, &best).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.d_out().count_ones(), 6);
        assert!(validate_prefix_intervals(&fm, best.k_star, &best.boundaries).unwrap().is_empty());
    }

    #[test]
    fn prefix_intervals_of_example() {
        let (_, fm) = example();
        let best = minimize_edges(&fm);
        let got = validate_prefix_intervals(&fm, 2, &best.boundaries).unwrap();
        assert_eq!(
            got,
            vec![PrefixInterval {
                width: 2,
                rows: Interval::new(3, 5)
            }]
        );
        assert_eq!(got[0].removed(), 9 - 7);
    }

    #[test]
    fn wrong_level_boundaries_are_reported() {
        let (_, fm) = example();
        let best = minimize_edges(&fm);
        assert!(matches!(
            validate_prefix_intervals(&fm, 3, &best.boundaries),
            Err(Error::PrefixIntervals(_))
        ));
    }

    #[test]
    fn rejects_bad_boundaries() {
        let (_, fm) = example();
        assert!(build_tunneled(&fm, &BitVec::ones(5), 1).is_err());
        let mut b = BitVec::ones(10);
        b.set(0, false);
        assert!(build_tunneled(&fm, &b, 1).is_err());
        // Merging the two "GG" rows sends them onto the split "TGG" rows.
        let mut b = BitVec::ones(10);
        b.set(4, false);
        assert!(matches!(build_tunneled(&fm, &b, 1), Err(Error::InvalidBoundaries(_))));
    }

    #[test]
    fn corrupt_parts_are_rejected() {
        let (_, fm) = example();
        let t = from_result(&fm, &minimize_edges(&fm)).unwrap();
        let a = t.alphabet().clone();
        let l = t.l().to_vec();
        let ok = |d_out: BitVec, d_in: BitVec| TunneledBwt::from_parts(l.clone(), a.clone(), d_out, d_in, 9, 2);
        assert!(ok(t.d_out().clone(), t.d_in().clone()).is_ok());
        assert!(ok(bits("1111101"), t.d_in().clone()).is_err());
        assert!(ok(bits("11111010"), t.d_in().clone()).is_err());
        assert!(ok(bits("11111111"), t.d_in().clone()).is_err());
        let mut two_sentinels = l.clone();
        two_sentinels[0] = 0;
        assert!(TunneledBwt::from_parts(two_sentinels, a.clone(), t.d_out().clone(), t.d_in().clone(), 9, 2).is_err());
        assert!(TunneledBwt::from_parts(l.clone(), a.clone(), t.d_out().clone(), t.d_in().clone(), 6, 2).is_err());
    }

    #[test]
    fn corrupt_bits_fail_inversion() {
        let (_, fm) = example();
        let t = from_result(&fm, &minimize_edges(&fm)).unwrap();
        // Swapping the D_in zero to another slot breaks the run structure.
        let moved = TunneledBwt::from_parts(
            t.l().to_vec(),
            t.alphabet().clone(),
            t.d_out().clone(),
            bits("11101111"),
            9,
            2,
        )
        .unwrap();
        let res = invert_tunneled(&moved);
        assert!(res.is_err() || res.unwrap().as_bytes() != b"AGTGGTGG\0");
        let shorter = TunneledBwt::from_parts(
            t.l().to_vec(),
            t.alphabet().clone(),
            t.d_out().clone(),
            t.d_in().clone(),
            7,
            2,
        )
        .unwrap();
        assert!(matches!(invert_tunneled(&shorter), Err(Error::Corrupt(_))));
    }

    #[test]
    fn sentinel_only() {
        let text = Text::ingest(b"", false).unwrap();
        let fm = FmIndex::new(&text);
        let t = from_result(&fm, &minimize_edges(&fm)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(invert_tunneled(&t).unwrap(), text);
    }
}
