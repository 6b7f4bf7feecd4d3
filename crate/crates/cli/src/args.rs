use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "matchforge", version, about = "Forcing and anti-forcing polynomials of polyomino graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,

    /// Cache file for computed results (also MATCHFORGE_CACHE).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Worker threads for per-matching computations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    G,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enum,
    Structural,
    Recurrence,
    Explicit,
}

/// A family member or a cell file.
#[derive(Debug, Clone, Args)]
pub struct Target {
    #[arg(long, value_enum)]
    pub family: Option<Family>,

    #[arg(long)]
    pub n: Option<usize>,

    /// JSON list of [row, column] cells, or ASCII rows of '#' and '.'.
    #[arg(long, conflicts_with = "family")]
    pub cells: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Computation {
    #[command(flatten)]
    pub target: Target,

    #[arg(long, value_enum)]
    pub method: Option<Method>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertices, edges and faces of G_n or H_n.
    Family(Target),
    /// Summary of the polyomino graph spanned by a cell file.
    Poly {
        #[arg(long)]
        cells: PathBuf,
    },
    /// Number of perfect matchings.
    Count(Computation),
    /// Forcing polynomial.
    ForcingPoly(Computation),
    /// Anti-forcing polynomial.
    AntiforcingPoly(Computation),
    /// Degree of freedom of G_n by three routes.
    Idf {
        #[arg(long)]
        n: usize,
    },
    /// Anti-forcing sum of G_n by three routes.
    Afsum {
        #[arg(long)]
        n: usize,
    },
    /// Forcing and anti-forcing spectra.
    Spectrum(Computation),
    /// Ratios IDF_n / (n Φ_n) and A_n / (n Φ_n) against their limits.
    Limits {
        #[arg(long)]
        n: usize,
    },
    /// Cross-check every route and published value.
    Verify {
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Largest n whose every matching is checked by the oracles.
        #[arg(long, default_value_t = 2)]
        oracle_max: usize,
    },
    /// Forcing and anti-forcing numbers of one matching.
    Af {
        #[command(flatten)]
        target: Target,
        /// JSON list of matched [id, id] pairs.
        #[arg(long)]
        matching: PathBuf,
    },
}
