use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use edgemin_cli::{self as cli, CliError};

/// Find the de Bruijn graph order with the fewest edges after edge
/// reduction, and build the matching tunneled BWT.
#[derive(Parser)]
#[command(name = "edgemin", version)]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report k*, m* and related counts for a file.
    Minimize {
        path: PathBuf,
        /// Drop 0x00 bytes instead of rejecting them.
        #[arg(long)]
        strip_nul: bool,
        /// Examine every order up to n - 1.
        #[arg(long)]
        no_early_term: bool,
        #[arg(long)]
        json: bool,
    },
    /// Edge and node counts for every order up to --max-k, as TSV.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        strip_nul: bool,
    },
    /// Write the tunneled BWT of a file.
    Tunnel {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        strip_nul: bool,
    },
    /// Recover the original file from a tunneled BWT.
    Untunnel {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the pipeline on every file of a directory, as TSV.
    Bench {
        dir: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, s: &str) -> cli::Result<()> {
    match out {
        Some(p) => std::fs::write(p, s).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let _ = std::io::stdout().write_all(s.as_bytes());
            Ok(())
        }
    }
}

fn run(cmd: Cmd) -> cli::Result<()> {
    match cmd {
        Cmd::Minimize {
            path,
            strip_nul,
            no_early_term,
            json,
        } => {
            let r = cli::minimize(&path, strip_nul, !no_early_term)?;
            emit(None, &if json { r.to_json() } else { r.to_text() })
        }
        Cmd::Analyze {
            path,
            max_k,
            out,
            strip_nul,
        } => emit(out.as_deref(), &cli::analyze(&path, max_k, strip_nul)?),
        Cmd::Tunnel { path, out, strip_nul } => {
            let s = cli::tunnel(&path, &out, strip_nul)?;
            eprintln!("n = {}, k = {}, tunneled length = {}", s.n, s.k, s.len);
            Ok(())
        }
        Cmd::Untunnel { path, out } => cli::untunnel(&path, &out).map(|_| ()),
        Cmd::Bench { dir, out } => emit(out.as_deref(), &cli::bench(&dir)?),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(args.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("edgemin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
