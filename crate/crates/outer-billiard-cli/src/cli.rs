use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "outer-billiard", version, about = "Exact outer billiards outside regular polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindFilter {
    Strong,
    Weak,
    Neutral,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate the billiard map T from a starting point.
    Orbit {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        /// `a,b` sector coordinates P0 + a(P_{-1} - P0) + b(P0 - P1), or
        /// `field:c0,c1,...` coefficients over powers of the root of unity.
        /// Without it a sector point is drawn from the seed.
        #[arg(long)]
        start: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// The rho and eta codings of an orbit.
    Code {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long)]
        start: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Complexity table (n, p, s, b) of the folded language.
    Language {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long)]
        compare_formula: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Bispecial words of the folded language with their indices.
    Bispecial {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long, value_enum)]
        only: Option<KindFilter>,
        #[command(flatten)]
        output: Output,
    },
    /// Members of the pentagon's bispecial families up to a length.
    Families {
        /// Largest word length listed.
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[arg(long, value_enum)]
        only: Option<KindFilter>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant checks.
    Verify {
        /// Run a single named check.
        #[arg(long)]
        only: Option<String>,
        /// Width bound for the beta enclosure.
        #[arg(long, default_value = "1e-6")]
        eps: String,
        /// Build the pentagon with the opposite tangency convention.
        #[arg(long, hide = true)]
        flip_tangency: bool,
        #[command(flatten)]
        output: Output,
    },
    /// An interval of width below eps containing beta.
    Beta {
        #[arg(long, default_value = "1e-6")]
        eps: String,
        #[command(flatten)]
        output: Output,
    },
    /// Decagon codings, their theta expansions, and the matching pentagon codings.
    DecagonMap {
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long)]
        start: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}
