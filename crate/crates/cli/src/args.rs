use clap::{Args, Parser, Subcommand, ValueEnum};
use spinhl_core::{Composition, ExactScalar};

#[derive(Parser, Debug)]
#[command(name = "spinhl", version, about = "Exact spin Hall-Littlewood lattice computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate H_{m/w}, F_m or Borodin's F_m at an exact point.
    Compute(ComputeArgs),
    /// Expand a product into the basis via puzzles.
    Expand(ExpandArgs),
    /// Count or list the puzzles of one boundary.
    Puzzles(PuzzlesArgs),
    /// Run the randomized identity checks.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionFamily {
    #[value(name = "H")]
    H,
    #[value(name = "F")]
    F,
    #[value(name = "Fcal")]
    Fcal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PuzzleFamily {
    SixVertex,
    SpinHl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Ybe,
    Product,
    Oracle,
    All,
}

fn composition(s: &str) -> Result<Composition, String> {
    s.parse().map_err(|e: spinhl_core::Error| e.to_string())
}

fn rational(s: &str) -> Result<ExactScalar, String> {
    s.trim().parse().map_err(|e: spinhl_core::Error| e.to_string())
}

/// Comma-separated rationals, parsed as one flag value.
#[derive(Clone, Debug, Default)]
pub struct ScalarList(pub Vec<ExactScalar>);

fn rationals(s: &str) -> Result<ScalarList, String> {
    if s.trim().is_empty() {
        return Ok(ScalarList::default());
    }
    s.split(',').map(rational).collect::<Result<_, _>>().map(ScalarList)
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub family: FunctionFamily,
    #[arg(long, value_parser = composition)]
    pub m: Composition,
    /// Lower string for H; all zeros when omitted.
    #[arg(long, value_parser = composition)]
    pub w: Option<Composition>,
    /// Comma-separated rationals x_1,...,x_n.
    #[arg(long, value_parser = rationals, allow_hyphen_values = true, default_value = "")]
    pub x: ScalarList,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub q: ExactScalar,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub s: Option<ExactScalar>,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    pub family: PuzzleFamily,
    #[arg(long, value_parser = composition)]
    pub m: Composition,
    #[arg(long, value_parser = composition)]
    pub l: Composition,
    /// Six-vertex only; all zeros when omitted.
    #[arg(long, value_parser = composition)]
    pub w: Option<Composition>,
    /// Spin-hl only: number of puzzle rows (default len(m) + len(l)).
    #[arg(long)]
    pub rows: Option<usize>,
    /// Also evaluate every coefficient at this q.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub q: Option<ExactScalar>,
    /// Also evaluate every coefficient at this s (spin-hl).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub s: Option<ExactScalar>,
}

#[derive(Args, Debug)]
pub struct PuzzlesArgs {
    #[arg(long, value_enum)]
    pub family: PuzzleFamily,
    #[arg(long, value_parser = composition)]
    pub m: Composition,
    #[arg(long, value_parser = composition)]
    pub l: Composition,
    #[arg(long, value_parser = composition)]
    pub w: Option<Composition>,
    #[arg(long, value_parser = composition)]
    pub k: Composition,
    /// Print every configuration with its weight.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    /// Random draws per case.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
