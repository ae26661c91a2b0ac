//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::scalar::LambdaValue;

#[derive(Debug, Parser)]
#[command(name = "lambda-osc", version, about = "Spectra, polynomials and cross-checks for the lambda-deformed oscillator")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Deformation parameter(s): `0.3`, `-1/5`, `1e-6`; repeat or separate with commas
    #[arg(long, short = 'l', global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub lambda: Vec<LambdaValue>,
    /// Output format (default csv; text for `polys`, json for `verify`)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, short = 'o', global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance override for refinement and quadrature
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Reserved; every computation is deterministic
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Suppress the summary line on stderr
    #[arg(long, short = 'q', global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Generating,
    Rodrigues,
    Series,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels e_m = m + 1/2 - m^2 Λ/2
    Spectrum(SpectrumArgs),
    /// Samples of V(x) = α²x²/(2(1 + λx²))
    Potential(PotentialArgs),
    /// Deformed Hermite polynomials
    Polys(PolysArgs),
    /// Eigenfunction samples Ψ_m(y)
    Wavefn(WavefnArgs),
    /// Normalized overlap matrices of bound states
    Gram(GramArgs),
    /// Finite-difference eigenvalues with Richardson refinement
    Sl(SlArgs),
    /// Shape-invariance chain and ladder-built states (exact arithmetic)
    Ladder(LadderArgs),
    /// Classical orbits: measured periods or a trajectory
    Classical(ClassicalArgs),
    /// Run the cross-validation suite and emit a pass/fail report
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Highest level index (default: all bound levels, or 5 when Λ ≤ 0)
    #[arg(long)]
    pub mmax: Option<u64>,
    /// Continuous e(m) curves and bound points for Λ = 0.30 and 0.15
    #[arg(long, conflicts_with = "figure4")]
    pub figure3: bool,
    /// Curves for Λ = ±0.30 with the undeformed line
    #[arg(long)]
    pub figure4: bool,
    /// Samples per continuous curve
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Half-range of x for λ ≥ 0
    #[arg(long, default_value_t = 5.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct PolysArgs {
    #[arg(long, default_value_t = 6)]
    pub nmax: usize,
    /// Coefficients as polynomials in Λ
    #[arg(long)]
    pub generic: bool,
    #[arg(long, value_enum, default_value = "generating")]
    pub normalization: NormalizationArg,
    /// Ratio of the Rodrigues to the generating polynomial for each n
    #[arg(long, conflicts_with = "generic")]
    pub ratios: bool,
}

#[derive(Debug, Clone, Args)]
pub struct WavefnArgs {
    /// Level index; repeat for several (default: every bound level up to 4)
    #[arg(long, short = 'm', value_delimiter = ',')]
    pub m: Vec<u64>,
    /// Half-range of y when Λ ≥ 0
    #[arg(long, default_value_t = 6.0)]
    pub ymax: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// Divide by the norm under dy/√(1+Λy²)
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GramArgs {
    #[arg(long, default_value_t = 8)]
    pub mmax: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SlArgs {
    /// Number of levels (default: bound levels, at most 8)
    #[arg(long)]
    pub levels: Option<usize>,
    /// Largest grid (overrides LAMBDA_OSC_GRID_CAP)
    #[arg(long)]
    pub grid_cap: Option<usize>,
    /// Truncation half-width in u for Λ ≥ 0
    #[arg(long)]
    pub half_width: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct LadderArgs {
    /// Highest state (default: every bound state up to 8)
    #[arg(long)]
    pub nmax: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassicalArgs {
    /// Amplitude(s)
    #[arg(long, short = 'a', value_delimiter = ',')]
    pub amplitude: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 5e-4)]
    pub step: f64,
    #[arg(long, default_value_t = 100)]
    pub periods: usize,
    /// Emit (t, x, v, E) for the first λ and amplitude instead of periods
    #[arg(long)]
    pub trajectory: bool,
    /// Trajectory length in time units
    #[arg(long, default_value_t = 20.0)]
    pub duration: f64,
    /// Keep every k-th trajectory sample
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// Polynomial route equivalence up to this degree (selects the group)
    #[arg(long)]
    pub poly_nmax: Option<usize>,
    /// Polynomial checks with symbolic Λ (selects the group)
    #[arg(long)]
    pub generic: bool,
    #[arg(long)]
    pub polys: bool,
    #[arg(long)]
    pub spectrum: bool,
    #[arg(long)]
    pub sl: bool,
    #[arg(long)]
    pub gram: bool,
    #[arg(long)]
    pub ladder: bool,
    #[arg(long)]
    pub commutator: bool,
    #[arg(long)]
    pub residual: bool,
    #[arg(long)]
    pub classical: bool,
    #[arg(long)]
    pub continuity: bool,
}
