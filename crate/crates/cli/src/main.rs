use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use mub_cli::output::render;
use mub_cli::reports::{
    cmd_classify_d3, cmd_gen, cmd_minors, cmd_profile, cmd_sharp_bound, cmd_verify_monomial, parse_selector,
};
use mub_cli::{cmd_table1, cmd_verify_all, ingest_state, OutputFormat, RunConfig, Switch};
use mub_core::search::{estimated_candidates, saturation_search, validate_saturation_dim, MinorMode, SaturationOptions};

#[derive(Parser)]
#[command(name = "mub", version, about = "Exact support uncertainty relations for the standard complete set of mutually unbiased bases in prime dimension")]
struct Cli {
    /// Output format; CSV and table are flat projections of the JSON report.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: OutputFormat,

    /// Worker threads for the parallel searches.
    #[arg(long, env = "MUB_WORKERS", global = true)]
    workers: Option<usize>,

    /// Include wall-clock times (reports are otherwise reproducible byte for byte).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the d+1 standard bases as ω-exponent tables.
    Gen { d: u32 },

    /// Support sizes of a state in every basis, with pair-inequality slacks.
    Profile {
        d: u32,
        /// JSON file {"dim": d, "entries": [["num/den", ...], ...]}
        #[arg(long)]
        state: PathBuf,
    },

    /// Run every exact structural check at dimension d.
    VerifyAll {
        d: u32,
        /// Random states for the pair-inequality fuzzing.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Decompose H_k†H_j into a monomial matrix times H_t†.
    VerifyMonomial {
        d: u32,
        #[arg(long, requires = "k")]
        j: Option<usize>,
        #[arg(long, requires = "j")]
        k: Option<usize>,
    },

    /// Certify that square submatrices have nonzero determinant.
    Minors {
        d: u32,
        /// Every minor up to --max-order (default for d ≤ 7).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Random minors instead (default 10000 for d > 7).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
        /// F, H<j> or H<k>*H<j> (meaning H_k†H_j); all matrices if omitted.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// All qutrit states with support two in every basis.
    ClassifyD3,

    /// Search for states with support (d+1)/2 in three or more bases.
    SearchSaturation {
        d: u32,
        #[arg(long, value_enum, default_value = "on")]
        symmetry: Switch,
        #[arg(long, value_enum, default_value = "on")]
        prefilter: Switch,
        /// Resume from and write progress to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Allow d = 17 and 19 (days of computation).
        #[arg(long)]
        marathon: bool,
        /// Work items per batch; the checkpoint is rewritten after each batch.
        #[arg(long, default_value_t = 64)]
        batch: usize,
        /// Stop after this many work items (resume later with --checkpoint).
        #[arg(long)]
        stop_after: Option<usize>,
    },

    /// Smallest total support for d ∈ {2, 3, 5, 7}, with witnesses.
    SharpBound {
        d: u32,
        /// Include every witness state in the report.
        #[arg(long)]
        witnesses: bool,
        /// At d = 7, also run the support-five pair/triple search.
        #[arg(long)]
        support5: bool,
    },

    /// Lower bounds, achievability and sharp bounds for primes up to --max-d.
    Table1 {
        #[arg(long, default_value_t = 13)]
        max_d: u32,
        /// Skip the saturation searches beyond d = 7.
        #[arg(long)]
        no_search: bool,
        #[arg(long)]
        marathon: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<(String, u8)> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .context("configuring worker threads")?;
    }
    let f = cli.format;
    let mut cfg = RunConfig::new("", f);
    cfg.workers = cli.workers;
    cfg.timings = cli.timings;
    let out = match cli.command {
        Command::Gen { d } => render(&cmd_gen(d)?, f)?,
        Command::Profile { d, state } => {
            cfg.with_dim(d)?;
            let psi = ingest_state(&state)?;
            render(&cmd_profile(d, &psi)?, f)?
        }
        Command::VerifyAll { d, samples, seed } => {
            let report = cmd_verify_all(d, samples, seed)?;
            let code = if report.passed { 0 } else { 2 };
            return Ok((render(&report, f)?, code));
        }
        Command::VerifyMonomial { d, j, k } => {
            cfg.with_dim(d)?;
            render(&cmd_verify_monomial(d, j.zip(k))?, f)?
        }
        Command::Minors { d, exhaustive, samples, max_order, matrix, seed } => {
            cfg.with_dim(d)?;
            let mode = match (exhaustive, samples) {
                (true, _) => Some(MinorMode::Exhaustive { max_order: max_order.unwrap_or(d as usize) }),
                (false, Some(n)) => Some(MinorMode::Sampled { samples: n, seed }),
                (false, None) => max_order.map(|m| MinorMode::Exhaustive { max_order: m }),
            };
            let selector = matrix.as_deref().map(parse_selector).transpose()?;
            render(&cmd_minors(d, selector, mode)?, f)?
        }
        Command::ClassifyD3 => render(&cmd_classify_d3()?, f)?,
        Command::SearchSaturation { d, symmetry, prefilter, checkpoint, marathon, batch, stop_after } => {
            validate_saturation_dim(d, marathon)?;
            if d >= 11 {
                let n = estimated_candidates(d, symmetry.is_on());
                let secs = n as f64 * 6e-6 / cli.workers.unwrap_or(1).max(1) as f64;
                eprintln!("d = {d}: {n} candidates, roughly {secs:.0} s of work per worker");
            }
            let opts = SaturationOptions {
                symmetry: symmetry.is_on(),
                prefilter: prefilter.is_on(),
                checkpoint,
                marathon,
                workers: cli.workers,
                batch_size: batch,
                stop_after,
            };
            let mut report = saturation_search(d, &opts)?;
            if !cli.timings {
                report.elapsed_ms = None;
            }
            render(&report, f)?
        }
        Command::SharpBound { d, witnesses, support5 } => {
            let mut report = cmd_sharp_bound(d, witnesses, support5)?;
            if let (Some(s), false) = (report.support5.as_mut(), cli.timings) {
                s.elapsed_ms = None;
            }
            render(&report, f)?
        }
        Command::Table1 { max_d, no_search, marathon } => {
            cfg.marathon = marathon;
            render(&cmd_table1(max_d, &cfg, !no_search)?, f)?
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let timings = cli.timings;
    let start = Instant::now();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            if timings {
                eprintln!("elapsed: {} ms", start.elapsed().as_millis());
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<mub_core::Error>().map_or(3, |e| e.exit_code());
            ExitCode::from(code as u8)
        }
    }
}
