//! Command line front end: enumerate pattern corpora, classify or
//! conjugate JSONL streams, dump point graphs, and run the verification
//! suite.
//!
//! Exit codes: 0 on success, 1 when verification finds failures or a
//! conjugacy request hits a non-twist, 2 on usage, IO, or parse errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use triod_rotation::conjugacy::{build_conjugacy, ConjugacyError};
use triod_rotation::loop_graph::dump_lines;
use triod_rotation::pattern::{enumerate, Pattern};
use triod_rotation::rotation_theory::{classify, CSV_HEADER};
use triod_rotation::verify::{run_suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "triodrot", version, about = "Rotation theory of cycles on the triod")]
struct Cli {
    /// Worker threads for the verification suite (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Omit timing fields so reruns are byte identical. Commands without
    /// timing fields are already deterministic; they accept the flag as a
    /// no-op.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write patterns as JSONL, one canonical representative per line.
    Enumerate {
        /// Single period to enumerate.
        #[arg(long, conflicts_with = "max_period")]
        period: Option<usize>,
        /// All periods from 1 up to this bound.
        #[arg(long)]
        max_period: Option<usize>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Classify a JSONL stream of patterns.
    Classify {
        /// Input path, or - for stdin.
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Conjugacy reports for triod twists in a JSONL stream.
    Conjugate {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run the verification suite over the enumerated corpus.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_period: usize,
        /// Comma separated check names; default runs every check.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value_t = 3)]
        oracle_multiplier: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Dump the oriented point graph of each pattern.
    Graph {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(cli.command, cli.deterministic) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, deterministic: bool) -> Result<ExitCode, String> {
    match command {
        Command::Enumerate { period, max_period, out } => {
            let periods: Vec<usize> = match (period, max_period) {
                (Some(n), None) => vec![n],
                (None, Some(m)) => (1..=m).collect(),
                _ => return Err("exactly one of --period or --max-period is required".into()),
            };
            if periods.contains(&0) {
                return Err("period must be at least 1".into());
            }
            let mut w = open_output(&out)?;
            for n in periods {
                for p in enumerate(n) {
                    emit(&mut w, &p.to_json_line())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { input, out, format } => {
            let patterns = read_patterns(&input)?;
            let mut w = open_output(&out)?;
            match format {
                Format::Json => {
                    for p in &patterns {
                        let c = classify(p).map_err(|e| e.to_string())?;
                        emit(&mut w, &c.to_json().to_string())?;
                    }
                }
                Format::Csv => {
                    let mut csv = csv::Writer::from_writer(w);
                    csv.write_record(CSV_HEADER).map_err(|e| e.to_string())?;
                    for p in &patterns {
                        let c = classify(p).map_err(|e| e.to_string())?;
                        csv.write_record(c.csv_fields()).map_err(|e| e.to_string())?;
                    }
                    csv.flush().map_err(|e| e.to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Conjugate { input, out } => {
            let patterns = read_patterns(&input)?;
            let mut w = open_output(&out)?;
            let mut hit_error = false;
            for p in &patterns {
                let line = match build_conjugacy(p) {
                    Ok(report) => report.to_json().to_string(),
                    Err(e) => {
                        hit_error = true;
                        let name = match e {
                            ConjugacyError::NotTriodTwist => "NotTriodTwist".to_string(),
                            other => other.to_string(),
                        };
                        serde_json::json!({"error": name}).to_string()
                    }
                };
                emit(&mut w, &line)?;
            }
            Ok(if hit_error { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Verify { max_period, checks, oracle_multiplier, out } => {
            let mut cfg = SuiteConfig::new(max_period);
            cfg.oracle_multiplier = oracle_multiplier;
            cfg.deterministic = deterministic;
            cfg.checks = checks.map(|list| {
                list.split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect::<BTreeSet<String>>()
            });
            let report = run_suite(&cfg).map_err(|e| e.to_string())?;
            let mut w = open_output(&out)?;
            emit(&mut w, &serde_json::to_string_pretty(&report.to_json()).unwrap())?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Graph { input, out } => {
            let patterns = read_patterns(&input)?;
            let mut w = open_output(&out)?;
            for p in &patterns {
                emit(&mut w, &format!("# pattern {}", p.to_json_line()))?;
                for line in dump_lines(p) {
                    emit(&mut w, &line)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_patterns(path: &str) -> Result<Vec<Pattern>, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    let mut patterns = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let p = Pattern::from_json_line(line).map_err(|e| format!("line {}: {e}", i + 1))?;
        patterns.push(p);
    }
    Ok(patterns)
}

fn open_output(path: &str) -> Result<Box<dyn Write>, String> {
    if path == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        let file = fs::File::create(path).map_err(|e| format!("{path}: {e}"))?;
        Ok(Box::new(io::BufWriter::new(file)))
    }
}

fn emit(w: &mut dyn Write, line: &str) -> Result<(), String> {
    match writeln!(w, "{line}") {
        Ok(()) => Ok(()),
        // Downstream closed the pipe; finish quietly like any stream tool.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(format!("write: {e}")),
    }
}
