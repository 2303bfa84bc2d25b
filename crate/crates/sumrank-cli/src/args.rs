use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sumrank", version, about = "Cyclic-skew-cyclic and sum-rank BCH codes")]
pub struct Cli {
    /// Worker threads for row-parallel work; output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Enumeration budget in codewords (default: SUMRANK_BUDGET or 2^22).
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a field tower: sizes, modulus, a, beta, cosets.
    Tower(TowerArgs),
    /// Bound table in CSV.
    Table(TableArgs),
    /// Build a sum-rank BCH code and write it as JSON.
    Construct(ConstructArgs),
    /// Multiply a message by the generator matrix.
    Encode(EncodeArgs),
    /// Bounded-distance decoding up to half the prescribed distance.
    Decode(DecodeArgs),
    /// Exhaustive minimum sum-rank distance.
    Mindist(MindistArgs),
    /// Run the property suite on a tower.
    Verify(VerifyArgs),
}

/// `F_p ⊆ F_{q0} ⊆ F_{q0^m}, F_{q0^s} ⊆ F_{q^m}` with `q0 = p^e`, `q = q0^s`.
#[derive(Args, Debug, Clone)]
pub struct TowerArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    #[arg(long)]
    pub s: u32,
    /// Number of blocks; defaults to q - 1.
    #[arg(long)]
    pub ell: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Appendix,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub tower: TowerArgs,
    /// Use the standard (delta, b) rows of the q0 = 2, m = 2 bound tables.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Designed distances, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub delta: Vec<usize>,
    /// Offsets `b`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<usize>,
    /// Leave the exact_dim column empty.
    #[arg(long)]
    pub no_exact_dim: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub tower: TowerArgs,
    #[arg(long)]
    pub b: usize,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EncodeArgs {
    /// Code JSON written by `construct`.
    #[arg(long)]
    pub code: PathBuf,
    /// Message over F, comma separated elements.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub message: Vec<String>,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Received word over F, comma separated elements.
    #[arg(long, value_delimiter = ',')]
    pub received: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Ranks over F_{q0} of blocks over F.
    Inner,
    /// Ranks over F_q of the blocks, as in the parent code.
    Outer,
}

#[derive(Args, Debug)]
pub struct MindistArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long, value_enum, default_value_t = Metric::Inner)]
    pub metric: Metric,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub tower: TowerArgs,
    /// Random decoding trials per code.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
