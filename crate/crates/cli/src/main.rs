//! `tourneylab`: command-line front end for the tournament toolkit.

mod input;
mod report;

use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use tourneylab::{c3_from_scores, ClassFilter, Claim, Objective, Tournament, Verifier};

use input::{Format, ParseError};
use report::{AnalysisRecord, ClaimRecord, ExtremalRecord, FixtureRecord};

#[derive(Parser)]
#[command(name = "tourneylab", version, about = "Tournament matrices: 3-cycles, determinants, strong components, isomorphism classes")]
struct Cli {
    /// Worker threads for enumeration and verification (default: all cores).
    #[arg(long, global = true, env = "TOURNEYLAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report invariants of each input tournament.
    Analyze {
        /// Files, codes (`T<n>:<hex>`) or `-` for stdin. Reads stdin when empty.
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        /// One JSON record per line.
        #[arg(long)]
        json: bool,
    },
    /// Print one canonical code per isomorphism class of order `n`.
    Enumerate {
        n: usize,
        /// Keep singular classes only.
        #[arg(long)]
        singular: bool,
        /// Keep strong classes only.
        #[arg(long)]
        strong: bool,
        /// Keep classes with this sorted score vector, e.g. `1,2,2,3,4,4,5`.
        #[arg(long, value_delimiter = ',')]
        score: Option<Vec<u32>>,
        /// Keep classes with exactly this many 3-cycles.
        #[arg(long)]
        c3: Option<u64>,
    },
    /// Extreme 3-cycle count over singular or nonsingular classes of order `n`.
    Extremal {
        n: usize,
        /// `max-singular` or `min-nonsingular`.
        objective: Objective,
        #[arg(long)]
        json: bool,
    },
    /// Check claims exhaustively. Arguments are claim ids or `all`, plus an
    /// order range `lo..hi` (inclusive; default 3..7).
    Verify {
        #[arg(required = true)]
        args: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Include elapsed_ms in JSON records.
        #[arg(long)]
        timings: bool,
    },
    /// Print the built-in example matrices with their recorded values.
    Fixtures {
        #[arg(long)]
        json: bool,
    },
    /// Convert between matrix text and `T<n>:<hex>` codes.
    Convert {
        /// Files, codes or `-` for stdin. Reads stdin when empty.
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
        /// Output format.
        #[arg(long, value_enum)]
        to: Target,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Target {
    Matrix,
    Code,
}

/// Errors the user can fix by changing the invocation or input.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.is::<Usage>() || e.is::<ParseError>() || e.is::<tourneylab::Error>();
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Usage("--threads must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring thread pool")?;
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Analyze {
            inputs,
            format,
            json,
        } => {
            for t in read_inputs(&inputs, format)? {
                let rec = AnalysisRecord::of(&t);
                if json {
                    writeln!(out, "{}", serde_json::to_string(&rec)?)?;
                } else {
                    writeln!(out, "{}", rec.to_text())?;
                }
            }
            ExitCode::SUCCESS
        }
        Command::Enumerate {
            n,
            singular,
            strong,
            score,
            c3,
        } => {
            let start = Instant::now();
            let filter = ClassFilter {
                singular,
                strong,
                sorted_scores: score.map(|mut s| {
                    s.sort_unstable();
                    s
                }),
            };
            let classes = tourneylab::enumerate_iso_classes(n)?;
            let kept: Vec<&Tournament> = classes
                .par_iter()
                .filter(|t| filter.matches(t))
                .filter(|t| c3.is_none_or(|k| c3_from_scores(&t.score_vector()).get() == k))
                .collect();
            for t in &kept {
                writeln!(out, "{}", t.encode())?;
            }
            eprintln!(
                "{} of {} classes of order {n} ({:.2?})",
                kept.len(),
                classes.len(),
                start.elapsed()
            );
            ExitCode::SUCCESS
        }
        Command::Extremal { n, objective, json } => {
            let start = Instant::now();
            let result = Verifier::new().extremal(n, objective)?;
            let rec = ExtremalRecord::from(&result);
            if json {
                writeln!(out, "{}", serde_json::to_string(&rec)?)?;
            } else {
                write!(out, "{}", rec.to_text())?;
            }
            eprintln!("elapsed {:.2?}", start.elapsed());
            ExitCode::SUCCESS
        }
        Command::Verify {
            args,
            json,
            timings,
        } => verify(&args, json, timings, &mut out)?,
        Command::Fixtures { json } => {
            for f in tourneylab::fixtures::all() {
                let rec = FixtureRecord::from(&f);
                if json {
                    writeln!(out, "{}", serde_json::to_string(&rec)?)?;
                } else {
                    write!(out, "{}", rec.to_text())?;
                }
            }
            ExitCode::SUCCESS
        }
        Command::Convert { inputs, format, to } => {
            let ts = read_inputs(&inputs, format)?;
            for (i, t) in ts.iter().enumerate() {
                match to {
                    Target::Code => writeln!(out, "{}", t.encode())?,
                    Target::Matrix => {
                        if i > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", t.to_matrix_text())?;
                    }
                }
            }
            ExitCode::SUCCESS
        }
    };
    out.flush()?;
    Ok(code)
}

fn read_inputs(inputs: &[String], format: Format) -> anyhow::Result<Vec<Tournament>> {
    let stdin_only = [String::from("-")];
    let inputs = if inputs.is_empty() { &stdin_only[..] } else { inputs };
    let mut all = Vec::new();
    for arg in inputs {
        let (text, source) = if arg == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            (s, "<stdin>".to_string())
        } else if PathBuf::from(arg).is_file() {
            let s = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
            (s, arg.clone())
        } else if arg.starts_with('T') {
            (arg.clone(), "<argument>".to_string())
        } else {
            return Err(Usage(format!("{arg}: no such file and not a T<n>:<hex> code")).into());
        };
        all.extend(input::parse_all(&text, format, &source)?);
    }
    Ok(all)
}

fn parse_range(s: &str) -> Option<RangeInclusive<usize>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        Some(lo.parse().ok()?..=hi.parse().ok()?)
    } else {
        let n = s.parse().ok()?;
        Some(n..=n)
    }
}

fn verify(args: &[String], json: bool, timings: bool, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let mut range = None;
    let mut claims = Vec::new();
    for a in args {
        if let Some(r) = parse_range(a) {
            if range.replace(r).is_some() {
                bail!(Usage("more than one order range given".into()));
            }
        } else if a.eq_ignore_ascii_case("all") {
            claims.extend(Claim::ALL);
        } else {
            claims.push(a.parse::<Claim>().map_err(|e| anyhow!(Usage(e.to_string())))?);
        }
    }
    if claims.is_empty() {
        bail!(Usage("no claims given".into()));
    }
    let range = range.unwrap_or(3..=7);
    let mut verifier = Verifier::new();
    let mut failed = false;
    for claim in claims {
        let report = verifier.verify(claim, range.clone())?;
        failed |= !report.passed();
        for o in &report.outcomes {
            let rec = ClaimRecord::new(&report, o, timings);
            if json {
                writeln!(out, "{}", serde_json::to_string(&rec)?)?;
            } else {
                writeln!(out, "{}", rec.to_row())?;
            }
            eprintln!("{} n={} {} ms", rec.claim_id, o.n, o.elapsed.as_millis());
        }
        eprintln!("{}: {} ({:.2?})", report.claim_id(), report.status, report.elapsed);
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
