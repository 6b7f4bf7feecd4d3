//! Command-line front end for `matchforge-core`.
//!
//! Exit codes: 0 success, 1 input or computation error, 2 usage error,
//! 3 a cross-check disagreed.

pub mod args;
pub mod cache;
pub mod commands;
pub mod input;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;
use matchforge_core::Limits;

use args::{Cli, Command, Computation, OutFormat, Target};
use cache::{now_unix, Cache, CacheRecord, TargetSpec};
use commands::{Context, Job, JobKind};
use render::Output;

pub const CACHE_ENV: &str = "MATCHFORGE_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] matchforge_core::Error),
    #[error("cache: {0}")]
    Cache(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Parse `argv`, run the command and write its output. Returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render().ansi());
                    2
                }
            };
        }
    };
    let cache_path = cli.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    match execute(&cli, cache_path) {
        Ok((text, pass)) => {
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if pass {
                0
            } else {
                let _ = writeln!(err, "error: routes disagree");
                3
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn context(threads: Option<usize>) -> Result<Context, CliError> {
    let pool = match threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(t) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?,
        ),
        None => None,
    };
    Ok(Context {
        limits: Limits::default(),
        pool,
    })
}

fn target_spec(target: &Target) -> Result<TargetSpec, CliError> {
    match (target.family, target.n, &target.cells) {
        (None, None, Some(path)) => Ok(TargetSpec::Cells {
            cells: input::read_cells(path)?,
        }),
        (None, Some(_), Some(_)) => Err(CliError::Usage("--n does not apply to --cells".into())),
        (Some(family), Some(n), None) => Ok(TargetSpec::Family { family, n }),
        _ => Err(CliError::Usage("give --family with --n, or --cells".into())),
    }
}

fn execute(cli: &Cli, cache_path: Option<PathBuf>) -> Result<(String, bool), CliError> {
    let ctx = context(cli.threads)?;
    let job = |kind: JobKind, c: &Computation| Job::new(kind, target_spec(&c.target)?, c.method);
    let job = match &cli.command {
        Command::Family(t) => Job::new(JobKind::Family, target_spec(t)?, None)?,
        Command::Poly { cells } => Job::new(
            JobKind::Poly,
            TargetSpec::Cells {
                cells: input::read_cells(cells)?,
            },
            None,
        )?,
        Command::Count(c) => job(JobKind::Count, c)?,
        Command::ForcingPoly(c) => job(JobKind::ForcingPoly, c)?,
        Command::AntiforcingPoly(c) => job(JobKind::AntiforcingPoly, c)?,
        Command::Spectrum(c) => job(JobKind::Spectrum, c)?,
        Command::Idf { n } => return finish(commands::idf(*n), cli.out),
        Command::Afsum { n } => return finish(commands::afsum(*n), cli.out),
        Command::Limits { n } => return finish((commands::limits(*n)?, true), cli.out),
        Command::Verify { n, oracle_max } => {
            let cache = cache_path.as_deref().map(Cache::open).transpose()?;
            return finish(commands::verify(*n, *oracle_max, cache.as_ref(), &ctx), cli.out);
        }
        Command::Af { target, matching } => {
            let spec = target_spec(target)?;
            let pairs = input::read_matching(matching)?;
            return finish(commands::af(&spec, &pairs, &ctx)?, cli.out);
        }
    };
    cached(&job, cli.out, cache_path, &ctx).map(|text| (text, true))
}

fn finish((output, pass): (Output, bool), format: OutFormat) -> Result<(String, bool), CliError> {
    Ok((output.render(format)?, pass))
}

fn format_name(format: OutFormat) -> &'static str {
    match format {
        OutFormat::Json => "json",
        OutFormat::Csv => "csv",
    }
}

/// Serve a job from the cache when possible, otherwise compute and store it.
fn cached(job: &Job, format: OutFormat, cache_path: Option<PathBuf>, ctx: &Context) -> Result<String, CliError> {
    let Some(path) = cache_path else {
        return job.run(ctx)?.render(format);
    };
    let mut cache = Cache::open(&path)?;
    let key = cache::record_key(job.kind.name(), &job.target, job.method, format_name(format));
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.output.clone());
    }
    let text = job.run(ctx)?.render(format)?;
    cache.insert(CacheRecord {
        command: job.kind.name().to_string(),
        target: job.target.clone(),
        method: job.method,
        format: format_name(format).to_string(),
        output: text.clone(),
        created_unix: now_unix(),
    });
    cache.save()?;
    Ok(text)
}
