use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gammalab::reports::{
    emit_table, run_config, verify_certificate, Certificate, EvidenceFile, RunConfig, RunOptions,
    TableFormat,
};
use gammalab::Error;

/// Exact search and certificate checking for LCLs over finitely generated groups.
#[derive(Parser)]
#[command(name = "gammalab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a TOML config and write certificates.
    Run {
        config: PathBuf,
        /// Tasks run concurrently.
        #[arg(long)]
        jobs: Option<usize>,
        /// Search node budget per task.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Cap on enumerated configurations.
        #[arg(long)]
        limit: Option<usize>,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check certificates; exits 1 if any is rejected.
    Verify {
        #[arg(required = true)]
        certificates: Vec<PathBuf>,
        /// Skip replays whose recorded search cost exceeds this many nodes.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an evidence file as an aligned table (or CSV for a `.csv` output).
    Table {
        evidence: PathBuf,
        /// Show at most this many rows.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Run {
            config,
            jobs,
            budget,
            seed,
            limit,
            out,
        } => {
            let cfg = RunConfig::load(&config)?;
            let opts = RunOptions {
                jobs,
                budget,
                seed,
                limit,
                out,
            };
            let summary = run_config(&cfg, &opts)?;
            for o in &summary.outputs {
                let c = &o.certificate;
                println!("{:<24} {:<9} {}", c.task, c.kind, c.outcome);
            }
            for p in &summary.written {
                println!("wrote {}", p.display());
            }
            Ok(summary.exit_code() as u8)
        }
        Command::Verify {
            certificates,
            budget,
            out,
        } => {
            let mut text = String::new();
            let mut all = true;
            for path in &certificates {
                let cert = Certificate::read(path)?;
                let report = verify_certificate(&cert, budget)?;
                let verdict = if report.accepted() { "ACCEPTED" } else { "REJECTED" };
                text += &format!("{}: {} ({} {})\n", path.display(), verdict, report.kind, report.outcome);
                for c in &report.checks {
                    let mark = if c.ok { "ok  " } else { "FAIL" };
                    text += &format!("  {mark} {}: {}\n", c.name, c.detail);
                }
                all &= report.accepted();
            }
            emit(out.as_deref(), &text)?;
            Ok(if all { 0 } else { 1 })
        }
        Command::Table { evidence, limit, out } => {
            let mut ev = EvidenceFile::read(&evidence)?;
            if let Some(n) = limit {
                ev.rows.sort_by_key(|r| (r.s_index, r.k));
                ev.rows.truncate(n);
            }
            let text = emit_table(&ev, TableFormat::for_path(out.as_deref()))?;
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gammalab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
