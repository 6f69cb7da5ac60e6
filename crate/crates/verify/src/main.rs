use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use quintic_core::probe::{scan_cached, scan_curve, CacheOutcome};
use quintic_verify::{parse_suites, run_with_log, AValues, ReportFormat, RunConfig, VerificationReport, CACHE_DIR_ENV};

#[derive(Parser)]
#[command(name = "verify", version, about = "Run the verification suites and render reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites and write a report.
    Run {
        /// `all`, `none`, or a comma-separated list of suites.
        #[arg(long, default_value = "all", value_parser = parse_suites)]
        suites: std::collections::BTreeSet<quintic_verify::Suite>,
        /// A prime from the supported list; repeat for several.
        #[arg(long = "prime", default_values_t = [31u64, 61])]
        primes: Vec<u64>,
        /// `auto`, `2,4`, or `31=2,4;61=2,3`.
        #[arg(long = "a", default_value = "auto", value_parser = AValues::parse)]
        a_values: AValues,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Skip the Moore suite over the field of rational functions in `a`.
        #[arg(long)]
        no_symbolic: bool,
        #[arg(long, env = CACHE_DIR_ENV)]
        cache_dir: Option<PathBuf>,
        /// Output file; stdout if absent.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        /// Count soft failures toward the exit code.
        #[arg(long)]
        strict: bool,
    },
    /// Scan E(F_p) and write the point cache.
    Scan {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        a: u64,
        #[arg(long, env = CACHE_DIR_ENV)]
        cache_dir: Option<PathBuf>,
    },
    /// Render a saved JSON report.
    Report {
        #[arg(long, default_value = "markdown")]
        format: ReportFormat,
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Run { suites, primes, a_values, seed, no_symbolic, cache_dir, report, format, strict } => {
            let config = RunConfig {
                primes,
                a_values,
                seed,
                symbolic_a: !no_symbolic,
                suites,
                cache_dir,
                report_format: format,
                strict,
            };
            config.validate().map_err(anyhow::Error::msg)?;
            let r = run_with_log(&config, &|m| eprintln!("{m}"));
            let text = r.render(format);
            match report {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            let t = r.tally();
            eprintln!(
                "{} claims: {} pass, {} fail, {} soft pass, {} soft fail",
                r.records.len(),
                t.pass,
                t.fail,
                t.soft_pass,
                t.soft_fail
            );
            Ok(ExitCode::from(r.exit_code(strict) as u8))
        }
        Command::Scan { prime, a, cache_dir } => {
            let t = Instant::now();
            let (scan, outcome) = match &cache_dir {
                Some(dir) => scan_cached(dir, prime, a)?,
                None => (scan_curve(prime, a)?, CacheOutcome::Created),
            };
            let how = match (&cache_dir, outcome) {
                (None, _) => "no cache".to_string(),
                (Some(_), CacheOutcome::Hit) => "cache hit".to_string(),
                (Some(_), CacheOutcome::Created) => "cache written".to_string(),
                (Some(_), CacheOutcome::Rebuilt(why)) => format!("cache rebuilt: {why}"),
            };
            println!(
                "p={prime} a={a} points={} hasse={} elapsed_ms={} ({how})",
                scan.len(),
                scan.hasse_ok(),
                t.elapsed().as_millis()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { format, input } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let r = VerificationReport::parse_json(&text).context("parsing report")?;
            print!("{}", r.render(format));
            Ok(ExitCode::SUCCESS)
        }
    }
}
