//! JSON-returning entry points for the demo page. NUL bytes in the input
//! are dropped, since the sentinel is reserved.

use edgemin::edgemin::{edge_count_per_level, minimize_edges, LevelCount};
use edgemin::fm::FmIndex;
use edgemin::text::Text;
use edgemin::tunnel::{build_tunneled_report, invert_tunneled};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest input the page accepts.
pub const MAX_INPUT: usize = 1 << 20;

#[derive(Serialize)]
struct Level {
    k: usize,
    edges: usize,
    nodes: usize,
}

#[derive(Serialize)]
struct Curve {
    n: usize,
    k_star: usize,
    m_star: usize,
    levels: Vec<Level>,
}

#[derive(Serialize)]
struct Tunnel {
    n: usize,
    k: usize,
    bwt: String,
    tunneled: String,
    d_out: String,
    d_in: String,
    intervals: Vec<TunnelInterval>,
    recovered: bool,
}

#[derive(Serialize)]
struct TunnelInterval {
    width: usize,
    start: usize,
    end: usize,
}

fn index(input: &str) -> Result<(Text, FmIndex), String> {
    if input.len() > MAX_INPUT {
        return Err(format!("input longer than {MAX_INPUT} bytes"));
    }
    let text = Text::ingest(input.as_bytes(), true).map_err(|e| e.to_string())?;
    let fm = FmIndex::new(&text);
    Ok((text, fm))
}

fn show(bytes: &[u8]) -> String {
    bytes.iter().map(|&b| if b == 0 { '$' } else { b as char }).collect()
}

fn bits(b: &edgemin::bits::BitVec) -> String {
    b.iter().map(|x| if x { '1' } else { '0' }).collect()
}

/// Edge and node counts for orders `1..=max_k` (capped at `n - 1`) plus the minimum.
#[wasm_bindgen]
pub fn curve(input: &str, max_k: usize) -> Result<String, String> {
    let (text, fm) = index(input)?;
    let best = minimize_edges(&fm);
    let max_k = max_k.min(text.len() - 1);
    let levels = if max_k == 0 {
        Vec::new()
    } else {
        edge_count_per_level(&fm, max_k).map_err(|e| e.to_string())?
    };
    let curve = Curve {
        n: text.len(),
        k_star: best.k_star,
        m_star: best.m_star,
        levels: levels
            .into_iter()
            .map(|LevelCount { k, edges, nodes }| Level { k, edges, nodes })
            .collect(),
    };
    Ok(serde_json::to_string(&curve).expect("plain struct"))
}

/// BWT and tunneled BWT at the minimizing order, with the tunnel report.
#[wasm_bindgen]
pub fn tunnel(input: &str) -> Result<String, String> {
    let (text, fm) = index(input)?;
    let best = minimize_edges(&fm);
    let (t, report) = build_tunneled_report(&fm, &best.boundaries, best.k_star).map_err(|e| e.to_string())?;
    let recovered = invert_tunneled(&t).map(|r| r == text).unwrap_or(false);
    let out = Tunnel {
        n: text.len(),
        k: best.k_star,
        bwt: show(&fm.bwt().l_bytes()),
        tunneled: show(&t.l_bytes()),
        d_out: bits(t.d_out()),
        d_in: bits(t.d_in()),
        intervals: report
            .iter()
            .map(|p| TunnelInterval {
                width: p.width,
                start: p.rows.start,
                end: p.rows.end,
            })
            .collect(),
        recovered,
    };
    Ok(serde_json::to_string(&out).expect("plain struct"))
}
