//! braidmm: exact-arithmetic checks for braided Lie algebras, universal
//! envelopes, Milnor-Moore units and (dual) quasi-bialgebra examples.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand as ClapSubcommand};

use braidmm::{cache, config, report};
use braidmm::report::CheckReport;
use braidmm::runner::{self, RunError, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "braidmm", version, about = "Braided Lie algebra / Milnor-Moore verification engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand, Debug)]
enum Command {
    /// Verify the axioms declared by the config (Lie, color, structure).
    Check(RunArgs),
    /// Build the truncated universal envelope and report its dimensions.
    Envelop(RunArgs),
    /// Compute the primitive space of the free braided bialgebra.
    Primitives(RunArgs),
    /// Verify the Milnor-Moore unit on the truncated envelope.
    Mm(RunArgs),
    /// Verify (dual) quasi-bialgebra axioms, twists and module constraints.
    Quasi(RunArgs),
    /// Verify the monoidal-transport comparison (zeta) and envelope transport.
    Transport(RunArgs),
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Path to the JSON config.
    config: PathBuf,
    /// Override the truncation degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Override the stabilization buffer.
    #[arg(long)]
    buffer: Option<usize>,
    /// Override the seed recorded in the report.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report to this path as well as the cache.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip cache lookup and recompute (the result still refreshes the cache).
    #[arg(long)]
    no_cache: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (sub, args) = match &cli.command {
        Command::Check(a) => (Subcommand::Check, a),
        Command::Envelop(a) => (Subcommand::Envelop, a),
        Command::Primitives(a) => (Subcommand::Primitives, a),
        Command::Mm(a) => (Subcommand::Mm, a),
        Command::Quasi(a) => (Subcommand::Quasi, a),
        Command::Transport(a) => (Subcommand::Transport, a),
    };
    match execute(sub, args) {
        Ok(code) => code,
        Err(RunError::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(RunError::Stabilization(m)) => {
            eprintln!("stabilization failure: {m}");
            ExitCode::from(3)
        }
    }
}

fn execute(sub: Subcommand, args: &RunArgs) -> Result<ExitCode, RunError> {
    let start = Instant::now();
    let mut cfg = config::load_config(&args.config)?;
    if let Some(d) = args.degree {
        cfg.degree = d;
    }
    if let Some(b) = args.buffer {
        cfg.buffer = b;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    runner::bail_unsupported(&cfg, sub)?;

    let canonical = config::canonical_json(&cfg)?;
    let key = cache::report_key(&canonical, sub.name(), cfg.degree, cfg.buffer, cfg.seed);

    let mut cache_hit = false;
    let report_json = if !args.no_cache {
        cache::get(&key)
    } else {
        None
    }
    .inspect(|_text| {
        cache_hit = true;
    });

    let report_json = match report_json {
        Some(text) => text,
        None => {
            let outcome = runner::run(&cfg, sub)?;
            let report = CheckReport {
                engine_version: report::ENGINE_VERSION.into(),
                schema_version: config::SCHEMA_VERSION,
                config_hash: key.clone(),
                name: cfg.name.clone(),
                kind: cfg.kind_name().into(),
                subcommand: sub.name().into(),
                degree: cfg.degree,
                buffer: cfg.buffer,
                seed: cfg.seed,
                window: cfg.window,
                checks: outcome.checks,
                dimensions: outcome.dimensions,
                matrices: outcome.matrices,
                stabilization: outcome.stabilization,
                mm: outcome.mm,
                notes: outcome.notes,
            };
            let json = report.to_json();
            if let Err(e) = cache::put(&key, &json) {
                eprintln!("warning: cannot write cache entry: {e:#}");
            }
            json
        }
    };

    let report: CheckReport = serde_json::from_str(&report_json)
        .map_err(|e| RunError::Config(anyhow::anyhow!("internal report round-trip: {e}")))?;

    if let Some(out) = &args.out {
        cache::write_report(out, &report_json).map_err(RunError::Config)?;
    }

    print!("{}", report.text_table(start.elapsed(), cache_hit));
    if cache_hit {
        eprintln!("cache hit: {key}");
    }

    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
