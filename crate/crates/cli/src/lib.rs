//! Command-line front end: every run writes its artifacts and a
//! `manifest.json` into the output directory.

pub mod args;
mod commands;
pub mod error;
pub mod manifest;
mod output;

use std::time::Instant;

use serde_json::Map;

use args::{Cli, Command};
use commands::Ctx;
use error::CliError;
use manifest::RunManifest;
use output::OutDir;

fn subcommand_name(c: &Command) -> String {
    let v = serde_json::to_value(c).expect("commands serialise");
    match v {
        serde_json::Value::Object(m) => m.keys().next().cloned().unwrap_or_default(),
        serde_json::Value::String(s) => s,
        _ => String::new(),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let mut ctx = Ctx {
        global: cli.global.clone(),
        out: OutDir::create(&cli.global.out)?,
        inputs: Vec::new(),
        params: Map::new(),
    };
    commands::dispatch(&mut ctx, &cli.command)?;
    let manifest = RunManifest {
        subcommand: subcommand_name(&cli.command),
        seed: cli.global.seed,
        params: serde_json::Value::Object(ctx.params),
        inputs: ctx.inputs,
        version: env!("CARGO_PKG_VERSION").to_string(),
        duration_secs: start.elapsed().as_secs_f64(),
        invocation: cli,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises") + "\n";
    ctx.out.write(manifest::FILE, &text)
}

/// Runs a parsed invocation, honouring `--threads`.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let cli = match &cli.command {
        Command::Replay(r) => {
            let recorded = RunManifest::load(&r.manifest)?;
            recorded.verify_inputs()?;
            let mut replay = recorded.invocation;
            replay.global.out = cli.global.out.clone();
            replay.global.threads = cli.global.threads;
            replay
        }
        _ => cli,
    };
    match cli.global.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::usage(format!("cannot start {t} threads: {e}")))?;
            pool.install(|| execute(cli))
        }
        None => execute(cli),
    }
}
