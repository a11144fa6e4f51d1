//! Subcommand dispatch. All I/O lives here; the verdict of a claim run is
//! the product, so claim failures exit 0 unless `--strict` asks for exit 2.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use reconlab::{
    aggregate_over_matchings, are_hypomorphic, are_isomorphic, card_valid_matchings,
    count_paths_at, count_paths_at_oracle, count_paths_pair, count_paths_pair_oracle, deck,
    find_hypomorphic_pairs, find_hypomorphic_pairs_among, verify_claims,
    verify_single_graph_claims, EvalMode, Graph, Matching, PairSearchResult,
    DEFAULT_MATCHING_CAP,
};

use crate::graph6::{emit_graph6, parse_graph6};
use crate::report::{claim_entries, format_claim_line, ClaimEntry, ReportDocument, Subject};

/// Exit status for usage errors, unreadable files, and malformed inputs.
pub const EXIT_USAGE: i32 = 1;
/// Exit status for claim failures under `--strict`.
pub const EXIT_STRICT_FAILURE: i32 = 2;

/// Worker-count override honored by the parallel search pipeline.
pub const THREADS_ENV_VAR: &str = "RECON_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "reconlab",
    version,
    about = "Decks, hypomorphism, exact path counts, and claim verification for small graphs",
    disable_help_subcommand = true
)]
struct Cli {
    /// Exit with status 2 when any verified claim fails.
    #[arg(long, global = true)]
    strict: bool,

    /// Zero out timing fields so identical inputs give byte-identical output.
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the deck as sorted graph6 cards with multiplicities.
    Deck {
        /// graph6 line, or a path to an edge-list file.
        graph: String,
    },
    /// Exit 0 iff the two graphs are isomorphic.
    Iso { g: String, h: String },
    /// Exit 0 iff the two graphs are hypomorphic (equal decks).
    Hypo {
        g: String,
        h: String,
        /// Also list the card-valid matchings, one per line.
        #[arg(long)]
        matchings: bool,
    },
    /// Count simple paths of a given length through a vertex (or pair).
    Paths(PathsArgs),
    /// Verify the pair claims C1-C10 for two hypomorphic graphs.
    Verify(VerifyArgs),
    /// Verify the single-graph claims (C5, C7b) on one graph.
    Identity { graph: String },
    /// Exhaustive hypomorphic-pair search over all graphs on N vertices.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
struct PathsArgs {
    graph: String,
    /// Focus vertex (0-based).
    #[arg(long)]
    vertex: usize,
    /// Second focus vertex: count paths through both.
    #[arg(long)]
    pair: Option<usize>,
    /// Path length in edges.
    #[arg(long)]
    length: usize,
    /// Cross-check against the subset dynamic-programming oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    g: String,
    h: String,
    /// Fixed matching as comma- or space-separated images of 0..n-1.
    #[arg(long, conflicts_with = "all_matchings")]
    matching: Option<String>,
    /// Quantify each claim over every card-valid matching.
    #[arg(long)]
    all_matchings: bool,
    /// Write the report document as JSON to FILE ('-' for stdout).
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Vertex count to search.
    #[arg(long)]
    n: usize,
    /// Read graph6 lines (one per class) instead of built-in enumeration;
    /// required beyond the built-in cap.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

/// Parses `argv` (without the program name) and runs one subcommand,
/// writing to the supplied streams. Returns the process exit status.
pub fn run_command(argv: &[&str], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let full = std::iter::once("reconlab").chain(argv.iter().copied());
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Deck { graph } => cmd_deck(graph, out),
        Command::Iso { g, h } => cmd_iso(g, h, out),
        Command::Hypo { g, h, matchings } => cmd_hypo(g, h, *matchings, out),
        Command::Paths(args) => cmd_paths(args, out),
        Command::Verify(args) => cmd_verify(args, cli.strict, cli.deterministic, out),
        Command::Identity { graph } => cmd_identity(graph, cli.strict, out),
        Command::Search(args) => cmd_search(args, out),
    }
}

/// A graph argument is a graph6 line, or a path to an edge-list file
/// (one `u v` pair per line, 0-based, `#` comments; an optional leading
/// single integer fixes the vertex count for trailing isolated vertices).
fn load_graph(arg: &str) -> Result<Graph> {
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        parse_edge_list(&text).with_context(|| format!("parsing edge list {arg}"))
    } else {
        parse_graph6(arg).map_err(|e| anyhow!("invalid graph6 {arg:?}: {e}"))
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut explicit_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_seen: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [n] if edges.is_empty() && explicit_n.is_none() && max_seen.is_none() => {
                explicit_n = Some(n.parse().with_context(|| format!("line {}", lineno + 1))?);
            }
            [a, b] => {
                let a: usize = a.parse().with_context(|| format!("line {}", lineno + 1))?;
                let b: usize = b.parse().with_context(|| format!("line {}", lineno + 1))?;
                max_seen = Some(max_seen.unwrap_or(0).max(a).max(b));
                edges.push((a, b));
            }
            _ => bail!("line {}: expected 'u v'", lineno + 1),
        }
    }
    let n = match (explicit_n, max_seen) {
        (Some(n), _) => n,
        (None, Some(max)) => max + 1,
        (None, None) => bail!("empty edge list"),
    };
    Ok(Graph::from_edges(n, &edges)?)
}

fn cmd_deck(graph: &str, out: &mut dyn Write) -> Result<i32> {
    let g = load_graph(graph)?;
    let d = deck(&g)?;
    for (card, multiplicity) in d.cards() {
        writeln!(out, "{} {}", emit_graph6(&card.to_graph())?, multiplicity)?;
    }
    Ok(0)
}

fn cmd_iso(g: &str, h: &str, out: &mut dyn Write) -> Result<i32> {
    let (g, h) = (load_graph(g)?, load_graph(h)?);
    if are_isomorphic(&g, &h)? {
        writeln!(out, "isomorphic")?;
        Ok(0)
    } else {
        writeln!(out, "not isomorphic")?;
        Ok(EXIT_USAGE)
    }
}

fn cmd_hypo(g: &str, h: &str, matchings: bool, out: &mut dyn Write) -> Result<i32> {
    let (g, h) = (load_graph(g)?, load_graph(h)?);
    if !are_hypomorphic(&g, &h)? {
        writeln!(out, "not hypomorphic")?;
        return Ok(EXIT_USAGE);
    }
    writeln!(out, "hypomorphic")?;
    if matchings {
        let enumeration = card_valid_matchings(&g, &h, DEFAULT_MATCHING_CAP)?;
        for m in &enumeration.matchings {
            writeln!(out, "{m}")?;
        }
        if enumeration.truncated {
            writeln!(out, "# truncated at {DEFAULT_MATCHING_CAP} matchings")?;
        }
    }
    Ok(0)
}

fn cmd_paths(args: &PathsArgs, out: &mut dyn Write) -> Result<i32> {
    let g = load_graph(&args.graph)?;
    let count = match args.pair {
        Some(other) => count_paths_pair(&g, args.vertex, other, args.length)?,
        None => count_paths_at(&g, args.vertex, args.length)?,
    };
    if args.oracle {
        let recount = match args.pair {
            Some(other) => count_paths_pair_oracle(&g, args.vertex, other, args.length)?,
            None => count_paths_at_oracle(&g, args.vertex, args.length)?,
        };
        if recount != count {
            bail!("oracle mismatch: enumeration {count}, subset oracle {recount}");
        }
    }
    writeln!(out, "{count}")?;
    Ok(0)
}

fn parse_matching(text: &str) -> Result<Matching> {
    let images: Vec<usize> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("matching entry {s:?}")))
        .collect::<Result<_>>()?;
    Ok(Matching::new(images)?)
}

fn cmd_verify(
    args: &VerifyArgs,
    strict: bool,
    deterministic: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let started = Instant::now();
    let (g, h) = (load_graph(&args.g)?, load_graph(&args.h)?);
    let inputs = vec![emit_graph6(&g)?, emit_graph6(&h)?];
    let mut doc = ReportDocument::new(inputs.clone(), g.vertex_count());

    if args.all_matchings {
        doc.quantified = Some(aggregate_over_matchings(&g, &h, DEFAULT_MATCHING_CAP)?);
    } else {
        let sigma = match &args.matching {
            Some(text) => parse_matching(text)?,
            None => card_valid_matchings(&g, &h, 1)?
                .matchings
                .into_iter()
                .next()
                .expect("hypomorphic graphs admit a matching"),
        };
        let pair = verify_claims(&g, &h, &sigma)?;
        let singles_g = verify_single_graph_claims(&g)?;
        let singles_h = verify_single_graph_claims(&h)?;
        doc.matching = Some(sigma.as_slice().to_vec());
        doc.claims = Some(claim_entries(&pair, &singles_g, &singles_h));
    }
    if !deterministic {
        doc.elapsed_ms = started.elapsed().as_millis() as u64;
    }

    let json_to_stdout = args.json.as_deref() == Some(Path::new("-"));
    if json_to_stdout {
        writeln!(out, "{}", doc.to_json())?;
    } else {
        writeln!(out, "G: {}  H: {}  n={}", inputs[0], inputs[1], g.vertex_count())?;
        if let Some(matching) = &doc.matching {
            let shown: Vec<String> = matching.iter().map(|v| v.to_string()).collect();
            writeln!(out, "matching: {}", shown.join(" "))?;
        }
        if let Some(entries) = &doc.claims {
            print_claim_entries(entries, out)?;
        }
        if let Some(q) = &doc.quantified {
            writeln!(
                out,
                "matchings examined: {} (truncated: {})",
                q.matchings_examined, q.truncated
            )?;
            for row in &q.rows {
                let mode = match row.mode {
                    EvalMode::Standard => "",
                    EvalMode::ConnectedOnly => " [connected-only]",
                    EvalMode::AllGraphs => " [all-graphs]",
                };
                writeln!(
                    out,
                    "{:<4} {}{}: for-all={} for-some={}",
                    row.claim.label(),
                    row.claim.title(),
                    mode,
                    row.holds_for_all,
                    row.holds_for_some
                )?;
            }
        }
        if let Some(file) = &args.json {
            fs::write(file, doc.to_json() + "\n")
                .with_context(|| format!("writing {}", file.display()))?;
        }
    }

    Ok(if strict && doc.has_failure() { EXIT_STRICT_FAILURE } else { 0 })
}

fn print_claim_entries(entries: &[ClaimEntry], out: &mut dyn Write) -> Result<()> {
    for entry in entries {
        writeln!(out, "{}", format_claim_line(entry))?;
    }
    let failed = entries.iter().filter(|e| !e.passed()).count();
    if failed == 0 {
        writeln!(out, "result: all {} claim rows pass", entries.len())?;
    } else {
        writeln!(out, "result: {failed} of {} claim rows fail", entries.len())?;
    }
    Ok(())
}

fn cmd_identity(graph: &str, strict: bool, out: &mut dyn Write) -> Result<i32> {
    let g = load_graph(graph)?;
    let reports = verify_single_graph_claims(&g)?;
    let entries: Vec<ClaimEntry> =
        reports.iter().map(|r| ClaimEntry::from_report(r, Subject::G)).collect();
    print_claim_entries(&entries, out)?;
    let failed = entries.iter().any(|e| !e.passed());
    Ok(if strict && failed { EXIT_STRICT_FAILURE } else { 0 })
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<i32> {
    let result: PairSearchResult = match &args.input {
        Some(file) => {
            let text = fs::read_to_string(file)
                .with_context(|| format!("reading {}", file.display()))?;
            let mut graphs = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let g = parse_graph6(line)
                    .map_err(|e| anyhow!("{}:{}: {e}", file.display(), lineno + 1))?;
                if g.vertex_count() != args.n {
                    bail!(
                        "{}:{}: graph has {} vertices, expected {}",
                        file.display(),
                        lineno + 1,
                        g.vertex_count(),
                        args.n
                    );
                }
                graphs.push(g);
            }
            find_hypomorphic_pairs_among(&graphs)?
        }
        None => find_hypomorphic_pairs(args.n)?,
    };

    writeln!(out, "n: {}", result.n)?;
    writeln!(out, "isomorphism classes: {}", result.class_count)?;
    writeln!(out, "deck-collision buckets: {}", result.deck_collision_buckets)?;
    writeln!(out, "hypomorphic non-isomorphic pairs: {}", result.pairs.len())?;
    for (a, b) in &result.pairs {
        writeln!(out, "pair: {} {}", emit_graph6(&a.to_graph())?, emit_graph6(&b.to_graph())?)?;
    }
    Ok(0)
}

/// Applies the `RECON_LAB_THREADS` override to the global worker pool.
/// Call once at startup; later calls are ignored.
pub fn configure_thread_pool(err: &mut dyn Write) {
    let Ok(value) = std::env::var(THREADS_ENV_VAR) else {
        return;
    };
    match value.parse::<usize>() {
        Ok(threads) if threads > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
        _ => {
            let _ = writeln!(err, "warning: ignoring {THREADS_ENV_VAR}={value:?}");
        }
    }
}
