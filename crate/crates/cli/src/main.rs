use std::process::ExitCode;

use clap::Parser;

use diracidx_cli::record::{strip_record_flag, unix_ms, RunRecord};
use diracidx_cli::{execute, exit_code_for, load_catalog, to_json, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let started = unix_ms();
    let result = load_catalog(&cli).and_then(|catalog| {
        let outcome = execute(&cli, &catalog)?;
        if let Some(path) = &cli.record {
            let args: Vec<String> = std::env::args().skip(1).collect();
            RunRecord::new(strip_record_flag(&args), catalog.version_hash(), &outcome, started).save(path)?;
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            if cli.json {
                println!("{}", to_json(&outcome.value));
            } else {
                println!("{}", outcome.text);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
