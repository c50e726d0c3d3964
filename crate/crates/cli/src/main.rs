use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use pwtri::generate::{generate, Family};
use pwtri::io::{emit_decomposition, emit_graph, parse_decomposition, parse_graph};
use pwtri::oracle;
use pwtri::pipeline::{self, DecompositionSource, Mode, PipelineOptions};
use pwtri::{EmbeddedMultigraph, PathDecomposition};

#[derive(Parser)]
#[command(name = "pwtri", version, about = "Triangulate planar graphs while keeping pathwidth bounded")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Triangulate (or maximally outer-planarize) a graph and report the width bound.
    Triangulate {
        /// Graph file; `-` reads standard input.
        #[arg(long)]
        input: PathBuf,
        /// Path decomposition of the input. Computed exactly when omitted.
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long, default_value = "auto", value_parser = parse_mode)]
        mode: Mode,
        /// Write the JSON report to PATH, or to standard error without one.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        report: Option<PathBuf>,
        /// Keep the token ledger and audit it after every step.
        #[arg(long)]
        debug_tokens: bool,
        /// Output graph; standard output by default.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Output decomposition.
        #[arg(long)]
        out_td: Option<PathBuf>,
    },
    /// Print a graph from a generator family.
    Generate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exact pathwidth of a small graph.
    Pathwidth {
        #[arg(long)]
        input: PathBuf,
        /// Also write an optimal decomposition.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check a decomposition against a graph and print its width.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        td: PathBuf,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: pwtri::Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: pwtri::Error| e.to_string())
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => io::stdout().write_all(text.as_bytes())?,
        Some(p) if p == Path::new("-") => io::stdout().write_all(text.as_bytes())?,
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<EmbeddedMultigraph> {
    parse_graph(&read_text(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_td(path: &Path) -> Result<PathDecomposition> {
    parse_decomposition(&read_text(path)?).with_context(|| format!("parsing decomposition {}", path.display()))
}

fn optimal(g: &EmbeddedMultigraph) -> Result<PathDecomposition> {
    match oracle::exact_pathwidth(g) {
        Ok(r) => Ok(r.witness),
        Err(pwtri::Error::SizeCap { n, cap }) => {
            bail!("graph has {n} vertices, above the exact-solver cap of {cap}; pass --td or raise PWTRI_NODE_CAP")
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Triangulate { input, td, mode, report, debug_tokens, out, out_td } => {
            let g = read_graph(&input)?;
            let (p, source) = match td {
                Some(path) => (read_td(&path)?, DecompositionSource::Given),
                None => (optimal(&g)?, DecompositionSource::Oracle),
            };
            let opts = PipelineOptions { mode, debug_tokens, source, oracle_widths: true };
            let res = pipeline::run(&g, &p, opts)?;
            write_text(out.as_deref(), &emit_graph(&res.graph))?;
            if let Some(path) = out_td {
                write_text(Some(&path), &emit_decomposition(&res.decomposition, res.graph.vertex_count()))?;
            }
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&res.report)? + "\n";
                if path == Path::new("-") {
                    io::stderr().write_all(json.as_bytes())?;
                } else {
                    fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
                }
            }
            let r = &res.report;
            log::info!("width {} -> {} (bound {} = {})", r.input_width, r.output_width, r.bound_formula, r.bound);
            if r.all_green {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("pwtri: report is not all green (width {}, bound {})", r.output_width, r.bound);
                Ok(ExitCode::from(1))
            }
        }
        Command::Generate { family, n, seed, out } => {
            let g = generate(family, n, seed)?;
            write_text(out.as_deref(), &emit_graph(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pathwidth { input, witness } => {
            let g = read_graph(&input)?;
            let p = optimal(&g)?;
            println!("{}", p.width());
            if let Some(path) = witness {
                write_text(Some(&path), &emit_decomposition(&p, g.vertex_count()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { input, td } => {
            let g = read_graph(&input)?;
            let p = read_td(&td)?;
            match p.check(&g) {
                Ok(()) => {
                    println!("valid width {}", p.width());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pwtri: {e:#}");
            ExitCode::from(2)
        }
    }
}
