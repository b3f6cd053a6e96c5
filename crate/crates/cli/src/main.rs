use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::Parser;
use unitexp::report::{emit_report, run_with_progress, Format, RunConfig, Suite};

/// Runs the verification suites over the builtin catalog plus any extra
/// group files and writes a TSV or JSON-lines report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// Comma-separated subset of structure,exponent,theorem,lemmas,witnesses;
    /// an empty value selects none.
    #[arg(
        long,
        env = "UNITEXP_SUITES",
        default_value = "structure,exponent,theorem,lemmas,witnesses"
    )]
    suites: String,

    /// Largest group order walked exhaustively (8, 16 or 32; 32 is slow).
    #[arg(long, env = "UNITEXP_MAX_EXHAUSTIVE_ORDER", default_value_t = 16,
          value_parser = clap::builder::PossibleValuesParser::new(["8", "16", "32"]).map(|s| s.parse::<usize>().unwrap()))]
    max_exhaustive_order: usize,

    /// Random units per group when sampling.
    #[arg(long, env = "UNITEXP_SAMPLES", default_value_t = 10_000)]
    samples: u64,

    #[arg(long, env = "UNITEXP_SEED", default_value_t = 1)]
    seed: u64,

    /// Worker threads (default: available cores).
    #[arg(long, env = "UNITEXP_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Extra Cayley-table or presentation file; repeatable.
    #[arg(long = "catalog", env = "UNITEXP_CATALOG", value_delimiter = ',')]
    catalog: Vec<PathBuf>,

    /// Report path (default: standard output).
    #[arg(long, env = "UNITEXP_OUT")]
    out: Option<PathBuf>,

    #[arg(long, env = "UNITEXP_FORMAT", default_value = "tsv")]
    format: Format,
}

fn parse_suites(s: &str) -> Result<BTreeSet<Suite>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

fn main() -> ExitCode {
    let args = Args::parse();
    let suites = match parse_suites(&args.suites) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    let defaults = RunConfig::default();
    let cfg = RunConfig {
        suites,
        max_exhaustive_order: args.max_exhaustive_order,
        sample_count: args.samples,
        seed: args.seed,
        threads: args.threads.map_or(defaults.threads, |t| t as usize),
        catalog_paths: args.catalog,
        output_path: args.out,
        format: args.format,
    };
    if cfg.is_heavy() {
        eprintln!(
            "verify: heavy mode, order-{} groups are walked exhaustively",
            cfg.max_exhaustive_order
        );
    }
    let report = match run_with_progress(&cfg, &mut |msg| eprintln!("verify: {msg}")) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(e) = emit_report(&report, cfg.format, cfg.output_path.as_deref()) {
        eprintln!("verify: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    for c in report.failures() {
        eprintln!(
            "verify: {} check {} [{}] {}: {}",
            c.suite,
            c.name,
            c.group.as_deref().unwrap_or("-"),
            c.outcome.tag(),
            c.outcome.message()
        );
    }
    ExitCode::from(report.exit_code() as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert!(parse_suites("").unwrap().is_empty());
        let s = parse_suites("witnesses, structure").unwrap();
        assert_eq!(
            s.into_iter().collect::<Vec<_>>(),
            [Suite::Structure, Suite::Witnesses]
        );
        assert!(parse_suites("structure,bogus").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Args::command().debug_assert();
    }
}
