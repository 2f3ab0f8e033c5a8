//! Command-line surface over the `nimpos` library.
//!
//! Exit codes are part of the contract: 0 on success, 1 when a verification
//! or mapping request fails on its input (formula/oracle mismatch, non-P
//! position, dead cell), 2 on usage errors (bad flags, k = 0, oracle
//! guardrail, unwritable output). All output is deterministic: identical
//! invocations produce byte-identical streams and files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use nimpos::evolution::{evolve_nim, NimEvolution};
use nimpos::oracle::{self, CountMode};
use nimpos::svg::{render_svg, RenderOptions};
use nimpos::uw::{cell_to_position, evolve_uw, position_path, Cell};
use nimpos::{Family, Position};

mod memo_cache;

/// Verification refuses brute-force runs costing more than this many
/// completions, so a stray large argument cannot hang a terminal for hours.
const ORACLE_GUARDRAIL: u128 = 1_000_000_000;

#[derive(Parser)]
#[command(name = "nimpos", version, about = "Count and map the P-positions of k-pile Nim")]
pub struct Cli {
    /// Persist the sequence memo table at this path (created on first use).
    #[arg(long, global = true, value_name = "PATH")]
    pub memo_cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print sequence terms via the closed forms and recursions.
    Seq(SeqArgs),
    /// Print sequence terms recomputed by brute-force enumeration.
    Oracle(SeqArgs),
    /// Check formulas against brute force over an index range.
    Verify(VerifyArgs),
    /// Print generation records (born/cumulative) for Nim or the grid automaton.
    Evolve(EvolveArgs),
    /// Map a three-pile P-position to its grid cell, or a cell back.
    Map(MapArgs),
    /// Render the grid automaton as an SVG file.
    Render(RenderArgs),
    /// Export a sequence range in b-file format ("n value" per line).
    Bfile(BfileArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// One "index value" pair per line.
    Plain,
    /// One JSON object per line.
    Jsonl,
    /// Same shape as plain; the b-file interchange format.
    Bfile,
}

#[derive(Args)]
pub struct SeqArgs {
    /// Sequence family: a (max <= n), d (max = n), A (total <= 2n), D (total = 2n).
    #[arg(long)]
    pub family: char,
    /// Number of piles.
    #[arg(long)]
    pub k: usize,
    /// First index, inclusive.
    #[arg(long, default_value_t = 0)]
    pub from: u64,
    /// Last index, inclusive.
    #[arg(long)]
    pub to: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
    /// Write to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Sequence family: a, d, A, or D.
    #[arg(long)]
    pub family: char,
    /// Number of piles.
    #[arg(long)]
    pub k: usize,
    /// First index, inclusive.
    #[arg(long, default_value_t = 0)]
    pub from: u64,
    /// Last index, inclusive.
    #[arg(long)]
    pub to: u64,
}

#[derive(Args)]
pub struct EvolveArgs {
    /// Number of Nim piles to evolve.
    #[arg(long, conflicts_with = "grid")]
    pub k: Option<usize>,
    /// Evolve the three-branch grid automaton instead of Nim positions.
    #[arg(long)]
    pub grid: bool,
    /// Last generation, inclusive.
    #[arg(long)]
    pub to: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct MapArgs {
    /// A three-pile position "p1,p2,p3" to map onto the grid.
    #[arg(long, conflicts_with = "cell", required_unless_present = "cell")]
    pub position: Option<String>,
    /// A grid cell "x,y" to map back to a position.
    #[arg(long, requires = "gen")]
    pub cell: Option<String>,
    /// Generation bound to evolve to when resolving a cell.
    #[arg(long)]
    pub gen: Option<u64>,
}

#[derive(Args)]
pub struct RenderArgs {
    /// Last generation, inclusive.
    #[arg(long)]
    pub to: u64,
    /// Output SVG path.
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
    /// Grid pitch in pixels.
    #[arg(long, default_value_t = 16)]
    pub cell_size: u32,
    /// Dot radius in pixels.
    #[arg(long, default_value_t = 4)]
    pub dot_radius: u32,
    /// Color dots by birth generation.
    #[arg(long)]
    pub color: bool,
}

#[derive(Args)]
pub struct BfileArgs {
    /// Sequence family: a, d, A, or D.
    #[arg(long)]
    pub family: char,
    /// Number of piles.
    #[arg(long)]
    pub k: usize,
    /// First index, inclusive.
    #[arg(long, default_value_t = 0)]
    pub from: u64,
    /// Last index, inclusive.
    #[arg(long)]
    pub to: u64,
    /// Output path; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Failures that terminate a command, sorted by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: the computation ran and the answer is "no" (mismatch,
    /// non-P input, dead cell).
    Failure(String),
    /// Exit 2: the request itself was unusable.
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Failure(m) | CliError::Usage(m) => m,
        }
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("nimpos: {}", e.message());
            e.code()
        }
    }
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Seq(args) => cmd_seq(args, cli.memo_cache.as_deref(), TermSource::Formula),
        Command::Oracle(args) => cmd_seq(args, None, TermSource::BruteForce),
        Command::Verify(args) => cmd_verify(args, cli.memo_cache.as_deref()),
        Command::Evolve(args) => cmd_evolve(args),
        Command::Map(args) => cmd_map(args),
        Command::Render(args) => cmd_render(args),
        Command::Bfile(args) => cmd_bfile(args, cli.memo_cache.as_deref()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TermSource {
    Formula,
    BruteForce,
}

fn parse_family(letter: char) -> Result<Family, CliError> {
    Family::from_letter(letter)
        .ok_or_else(|| CliError::Usage(format!("unknown family '{letter}' (expected a, d, A, or D)")))
}

fn check_k(k: usize) -> Result<(), CliError> {
    if k == 0 {
        Err(CliError::Usage("the pile count k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Pile bound the brute-force enumeration would use for `family` up to
/// index `n`.
fn oracle_pile_bound(family: Family, n: u64) -> Result<u64, CliError> {
    match family {
        Family::MaxAtMost | Family::MaxExact => Ok(n),
        Family::TotalAtMost | Family::TotalExact => n
            .checked_mul(2)
            .ok_or_else(|| CliError::Usage("index too large for brute force".into())),
    }
}

fn guardrail(family: Family, k: usize, to: u64) -> Result<(), CliError> {
    let bound = oracle_pile_bound(family, to)?;
    let cost = u128::from(bound + 1).checked_pow(k as u32 - 1);
    match cost {
        Some(c) if c <= ORACLE_GUARDRAIL => Ok(()),
        _ => Err(CliError::Usage(format!(
            "brute force over ({} + 1)^{} completions exceeds the guardrail of {ORACLE_GUARDRAIL}; \
             shrink --to or --k",
            bound,
            k - 1,
        ))),
    }
}

fn oracle_term(family: Family, k: usize, n: u64) -> Result<nimpos::Count, CliError> {
    let res = match family {
        Family::MaxAtMost => oracle::count_by_max(k, n, CountMode::AtMost),
        Family::MaxExact => oracle::count_by_max(k, n, CountMode::Exactly),
        Family::TotalAtMost => oracle::count_by_total(k, n, CountMode::AtMost),
        Family::TotalExact => oracle::count_by_total(k, n, CountMode::Exactly),
    };
    res.map_err(|e| CliError::Usage(e.to_string()))
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn write_failed(e: io::Error) -> CliError {
    CliError::Usage(format!("write failed: {e}"))
}

fn cmd_seq(args: SeqArgs, cache: Option<&Path>, source: TermSource) -> Result<(), CliError> {
    let family = parse_family(args.family)?;
    check_k(args.k)?;
    if source == TermSource::BruteForce {
        guardrail(family, args.k, args.to)?;
    }

    let mut engine = memo_cache::load(cache)?;
    let mut out = open_output(args.out.as_deref())?;
    for n in args.from..=args.to {
        let value = match source {
            TermSource::Formula => engine
                .term(family, args.k, n)
                .map_err(|e| CliError::Usage(e.to_string()))?,
            TermSource::BruteForce => oracle_term(family, args.k, n)?,
        };
        emit_term(&mut out, args.format, n, &value).map_err(write_failed)?;
    }
    out.flush().map_err(write_failed)?;
    memo_cache::store(cache, &engine)?;
    Ok(())
}

fn emit_term(out: &mut dyn Write, format: OutputFormat, n: u64, value: &nimpos::Count) -> io::Result<()> {
    match format {
        OutputFormat::Plain | OutputFormat::Bfile => writeln!(out, "{n} {value}"),
        OutputFormat::Jsonl => {
            let obj = serde_json::json!({ "index": n, "value": value.to_string() });
            writeln!(out, "{obj}")
        }
    }
}

fn cmd_verify(args: VerifyArgs, cache: Option<&Path>) -> Result<(), CliError> {
    let family = parse_family(args.family)?;
    check_k(args.k)?;
    guardrail(family, args.k, args.to)?;

    let mut engine = memo_cache::load(cache)?;
    let mut mismatches = 0u64;
    let mut total = 0u64;
    for n in args.from..=args.to {
        let got = engine
            .term(family, args.k, n)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let expected = oracle_term(family, args.k, n)?;
        if got != expected {
            println!("{n} {expected} {got}");
            mismatches += 1;
        }
        total += 1;
    }
    memo_cache::store(cache, &engine)?;
    if mismatches == 0 {
        println!("ok: {total} terms of {}_{} match brute force", args.family, args.k);
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "{mismatches} of {total} terms of {}_{} disagree with brute force",
            args.family, args.k
        )))
    }
}

fn cmd_evolve(args: EvolveArgs) -> Result<(), CliError> {
    let mut out = open_output(args.out.as_deref())?;
    if args.grid {
        let births = evolve_uw(args.to);
        let mut cumulative = 0u64;
        for g in 0..=args.to {
            let born = births.born_at(g).len() as u64;
            cumulative += born;
            emit_generation(&mut out, args.format, g, &born.into(), &cumulative.into())
                .map_err(write_failed)?;
        }
        out.flush().map_err(write_failed)?;
        return Ok(());
    }
    let k = args
        .k
        .ok_or_else(|| CliError::Usage("pass --k <piles> or --grid".into()))?;
    check_k(k)?;
    let NimEvolution { records, .. } =
        evolve_nim(k, args.to, false).map_err(|e| CliError::Usage(e.to_string()))?;
    for r in &records {
        emit_generation(&mut out, args.format, r.generation, &r.born, &r.cumulative)
            .map_err(write_failed)?;
    }
    out.flush().map_err(write_failed)
}

fn emit_generation(
    out: &mut dyn Write,
    format: OutputFormat,
    g: u64,
    born: &nimpos::Count,
    cumulative: &nimpos::Count,
) -> io::Result<()> {
    match format {
        OutputFormat::Plain | OutputFormat::Bfile => writeln!(out, "{g} {born} {cumulative}"),
        OutputFormat::Jsonl => {
            let obj = serde_json::json!({
                "generation": g,
                "born": born.to_string(),
                "cumulative": cumulative.to_string(),
            });
            writeln!(out, "{obj}")
        }
    }
}

fn parse_ints<T: std::str::FromStr>(s: &str, what: &str, want: usize) -> Result<Vec<T>, CliError> {
    let parts: Result<Vec<T>, _> = s.split(',').map(|p| p.trim().parse::<T>()).collect();
    match parts {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(CliError::Usage(format!(
            "cannot parse {what} '{s}': expected {want} comma-separated integers"
        ))),
    }
}

fn cmd_map(args: MapArgs) -> Result<(), CliError> {
    if let Some(raw) = args.position.as_deref() {
        let piles = parse_ints::<u64>(raw, "position", 3)?;
        let p = Position::new(piles).expect("three piles");
        let (cell, segments) =
            position_path(&p).map_err(|e| CliError::Failure(e.to_string()))?;
        println!("cell {},{}", cell.x, cell.y);
        print_segments(&segments);
        return Ok(());
    }
    let raw = args.cell.as_deref().expect("clap requires one of position/cell");
    let coords = parse_ints::<i64>(raw, "cell", 2)?;
    let gen = args.gen.expect("clap enforces --gen with --cell");
    let births = evolve_uw(gen);
    let cell = Cell::new(coords[0], coords[1]);
    let p = cell_to_position(cell, &births).map_err(|e| CliError::Failure(e.to_string()))?;
    let piles: Vec<String> = p.piles().iter().map(u64::to_string).collect();
    println!("position {}", piles.join(","));
    let (_, segments) = position_path(&p).expect("reconstructed positions are P-positions");
    print_segments(&segments);
    Ok(())
}

fn print_segments(segments: &[nimpos::uw::Segment]) {
    for s in segments {
        let [a, b, c] = s.pair.indicator();
        println!("segment ({a},{b},{c}) length {}", s.length);
    }
}

fn cmd_render(args: RenderArgs) -> Result<(), CliError> {
    let births = evolve_uw(args.to);
    let options = RenderOptions {
        cell_size: args.cell_size,
        dot_radius: args.dot_radius,
        margin: args.cell_size,
        color_by_generation: args.color,
    };
    let doc = render_svg(&births, &options);
    std::fs::write(&args.out, doc)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", args.out.display())))
}

fn cmd_bfile(args: BfileArgs, cache: Option<&Path>) -> Result<(), CliError> {
    let family = parse_family(args.family)?;
    check_k(args.k)?;
    let mut engine = memo_cache::load(cache)?;
    let mut out = open_output(args.out.as_deref())?;
    for n in args.from..=args.to {
        let value = engine
            .term(family, args.k, n)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        writeln!(out, "{n} {value}").map_err(write_failed)?;
    }
    out.flush().map_err(write_failed)?;
    memo_cache::store(cache, &engine)?;
    Ok(())
}
