//! Commands behind the `edgemin` binary.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use edgemin::edgemin::{edge_count_per_level, minimize_edges_with, EdgeMinResult, Options};
use edgemin::fm::FmIndex;
use edgemin::text::Text;
use edgemin::{tbwt, tunnel};
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Io { path: PathBuf, source: io::Error },
    Corrupt(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Corrupt(_) => 4,
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Corrupt(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<edgemin::Error> for CliError {
    fn from(e: edgemin::Error) -> Self {
        match e {
            edgemin::Error::Corrupt(_) => CliError::Corrupt(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).map_err(|e| CliError::io(path, e))
}

fn load_text(path: &Path, strip_nul: bool) -> Result<Text> {
    Ok(Text::ingest(&read(path)?, strip_nul)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimizeReport {
    /// Text length including the sentinel.
    pub n: usize,
    pub k_star: usize,
    pub m_star: usize,
    pub edge_ratio: f64,
    pub nodes: usize,
    pub intervals_generated: u64,
}

impl MinimizeReport {
    fn new(n: usize, r: &EdgeMinResult) -> Self {
        Self {
            n,
            k_star: r.k_star,
            m_star: r.m_star,
            edge_ratio: r.m_star as f64 / n as f64,
            nodes: r.node_count(),
            intervals_generated: r.intervals_generated,
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "n\t{}\nk*\t{}\nm*\t{}\nedge ratio\t{:.6}\nnodes\t{}\nintervals generated\t{}\n",
            self.n, self.k_star, self.m_star, self.edge_ratio, self.nodes, self.intervals_generated
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct") + "\n"
    }
}

pub fn minimize(path: &Path, strip_nul: bool, early_termination: bool) -> Result<MinimizeReport> {
    let text = load_text(path, strip_nul)?;
    let fm = FmIndex::new(&text);
    let opts = Options {
        early_termination,
        max_k: None,
    };
    let r = minimize_edges_with(&fm, opts, &mut ())?;
    Ok(MinimizeReport::new(text.len(), &r))
}

/// TSV with columns `k`, `edges`, `nodes`, one row per order.
pub fn analyze(path: &Path, max_k: Option<usize>, strip_nul: bool) -> Result<String> {
    let text = load_text(path, strip_nul)?;
    let mut out = String::from("k\tedges\tnodes\n");
    let n = text.len();
    let limit = n - 1;
    let max_k = max_k.unwrap_or(limit);
    if max_k > limit {
        return Err(CliError::Validation(format!("--max-k {max_k} exceeds n - 1 = {limit}")));
    }
    if max_k == 0 {
        return Ok(out);
    }
    let fm = FmIndex::new(&text);
    for l in edge_count_per_level(&fm, max_k)? {
        writeln!(out, "{}\t{}\t{}", l.k, l.edges, l.nodes).expect("string write");
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TunnelSummary {
    pub n: usize,
    pub k: usize,
    pub len: usize,
}

pub fn tunnel_bytes(raw: &[u8], strip_nul: bool) -> Result<(Vec<u8>, TunnelSummary)> {
    let text = Text::ingest(raw, strip_nul)?;
    let fm = FmIndex::new(&text);
    let best = minimize_edges_with(&fm, Options::default(), &mut ())?;
    let t = tunnel::from_result(&fm, &best)?;
    let summary = TunnelSummary {
        n: text.len(),
        k: best.k_star,
        len: t.len(),
    };
    Ok((tbwt::serialize(&t), summary))
}

pub fn untunnel_bytes(data: &[u8]) -> Result<Vec<u8>> {
    let t = tbwt::parse(data)?;
    Ok(tunnel::invert_tunneled(&t)?.body().to_vec())
}

pub fn tunnel(input: &Path, out: &Path, strip_nul: bool) -> Result<TunnelSummary> {
    let (data, summary) = tunnel_bytes(&read(input)?, strip_nul)?;
    write(out, &data)?;
    Ok(summary)
}

pub fn untunnel(input: &Path, out: &Path) -> Result<usize> {
    let body = untunnel_bytes(&read(input)?)?;
    write(out, &body)?;
    Ok(body.len())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub file: String,
    pub input_length: usize,
    pub k_star: usize,
    pub m_star: usize,
    pub edge_ratio: f64,
    pub fm_size_bytes: usize,
    pub tfm_size_bytes: usize,
    pub size_ratio: f64,
    pub index_ms: f64,
    pub minimize_ms: f64,
    pub tunnel_ms: f64,
}

pub const BENCH_HEADER: &str =
    "file\tinput_length\tk_star\tm_star\tedge_ratio\tfm_size_bytes\ttfm_size_bytes\tsize_ratio\tindex_ms\tminimize_ms\ttunnel_ms\terror";

impl BenchRecord {
    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{:.6}\t{}\t{}\t{:.6}\t{:.3}\t{:.3}\t{:.3}\t",
            self.file,
            self.input_length,
            self.k_star,
            self.m_star,
            self.edge_ratio,
            self.fm_size_bytes,
            self.tfm_size_bytes,
            self.size_ratio,
            self.index_ms,
            self.minimize_ms,
            self.tunnel_ms
        )
    }
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Runs the whole pipeline on one input. NUL bytes are dropped.
pub fn bench_bytes(file: &str, raw: &[u8]) -> Result<BenchRecord> {
    let t0 = Instant::now();
    let text = Text::ingest(raw, true)?;
    let fm = FmIndex::new(&text);
    let index_ms = ms(t0);
    let t1 = Instant::now();
    let best = minimize_edges_with(&fm, Options::default(), &mut ())?;
    let minimize_ms = ms(t1);
    let t2 = Instant::now();
    let t = tunnel::from_result(&fm, &best)?;
    let tunnel_ms = ms(t2);
    let n = text.len();
    Ok(BenchRecord {
        file: file.to_string(),
        input_length: n,
        k_star: best.k_star,
        m_star: best.m_star,
        edge_ratio: best.m_star as f64 / n as f64,
        fm_size_bytes: fm.size_in_bytes(),
        tfm_size_bytes: t.size_in_bytes(),
        size_ratio: t.size_in_bytes() as f64 / fm.size_in_bytes() as f64,
        index_ms,
        minimize_ms,
        tunnel_ms,
    })
}

/// One TSV row per regular file of `dir`, sorted by name. A file that
/// fails gets a row with only its name and the error message.
pub fn bench(dir: &Path) -> Result<String> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| CliError::io(dir, e))? {
        let entry = entry.map_err(|e| CliError::io(dir, e))?;
        if entry.file_type().map_err(|e| CliError::io(&entry.path(), e))?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for path in files {
        let name = path.file_name().expect("listed file").to_string_lossy().into_owned();
        let row = read(&path)
            .and_then(|raw| bench_bytes(&name, &raw))
            .map(|r| r.tsv_row())
            .unwrap_or_else(|e| format!("{name}\t\t\t\t\t\t\t\t\t\t\t{}", e.to_string().replace(['\t', '\n'], " ")));
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}
