//! Command-line front end for `wavesing`.
//!
//! Every subcommand that writes files also writes a JSON run manifest next
//! to its primary output. The manifest records the fully resolved command
//! line, and `wavesing replay <manifest>` reruns it to reproduce the outputs
//! byte for byte.
//!
//! Exit statuses: 0 success, 2 bad input, 3 I/O failure, 4 incompatible
//! parameters (scale grid vs signal), 5 degenerate computation.

mod commands;
pub mod error;
pub mod formats;
pub mod schema;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, ExitCode};

#[derive(Debug, Parser)]
#[command(
    name = "wavesing",
    version,
    about = "Wavelet singularity detection and self-similarity analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a test signal or an IFS point cloud.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Wavelet transform, scalogram, modulus maxima and singularity report.
    Analyze(AnalyzeArgs),
    /// Hurst exponent from the wavelet auto-covariance power law.
    Estimate(EstimateArgs),
    /// Render a point cloud as a binary PGM image.
    Rasterize(RasterizeArgs),
    /// Rerun the command recorded in a manifest.
    Replay {
        /// Manifest written by an earlier run.
        manifest: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Slow chirp with a jump at 0.5 and a 0.4-power cusp at 0.6.
    ChirpJump(SyntheticArgs),
    /// 2 sin(4πx) − 6|x − 0.4|^0.3 − 0.5 sign(0.7 − x), plus noise.
    Eq11(SyntheticArgs),
    /// Fractional Brownian motion by circulant embedding.
    Fbm(FbmArgs),
    /// Chaos-game point cloud of an iterated function system.
    Ifs(IfsArgs),
    /// Add Gaussian white noise to an existing signal.
    NoiseAdd(NoiseAddArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Manifest path; defaults to `<out>.manifest.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SyntheticArgs {
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    /// Standard deviation of the added noise.
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FbmArgs {
    #[arg(long)]
    pub hurst: f64,
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IfsModelName {
    Barnsley,
}

#[derive(Debug, Clone, Args)]
pub struct IfsArgs {
    #[arg(long, value_enum, default_value_t = IfsModelName::Barnsley)]
    pub model: IfsModelName,
    #[arg(long, default_value_t = 50_000)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = wavesing::signal_gen::DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NoiseAddArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WaveletName {
    MexicanHat,
    Morlet,
    Haar,
}

#[derive(Debug, Clone, Args)]
pub struct WaveletArgs {
    #[arg(long, value_enum, default_value_t = WaveletName::MexicanHat)]
    pub wavelet: WaveletName,
    /// Morlet center frequency.
    #[arg(long, default_value_t = wavesing::wavelet::MORLET_DEFAULT_OMEGA0)]
    pub omega0: f64,
    /// Scales per octave.
    #[arg(long, default_value_t = wavesing::wavelet::DEFAULT_VOICES)]
    pub voices: usize,
    /// Finest scale, in signal time units.
    #[arg(long)]
    pub a_min: Option<f64>,
    /// Coarsest scale, in signal time units.
    #[arg(long)]
    pub a_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub wavelet: WaveletArgs,
    /// Long-form scalogram TSV (`b`, `a`, `S`).
    #[arg(long)]
    pub scalogram: Option<PathBuf>,
    /// Modulus maxima TSV (`b`, `a`, `absW`).
    #[arg(long)]
    pub maxima: Option<PathBuf>,
    /// Singularity report JSON; standard output when no output is named.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Maxima below this fraction of each scale's peak are dropped.
    #[arg(long, default_value_t = 0.0)]
    pub min_amplitude: f64,
    #[arg(long, default_value_t = 4)]
    pub fine_scales: usize,
    #[arg(long, default_value_t = 2.0)]
    pub persistence_octaves: f64,
    #[arg(long, default_value_t = 3.0)]
    pub threshold_multiplier: f64,
    #[arg(long, default_value_t = 3.0)]
    pub fit_octaves: f64,
    #[arg(long, default_value_t = 0.15)]
    pub jump_cusp_boundary: f64,
    /// Manifest path; defaults to `<first output>.manifest.json`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub wavelet: WaveletArgs,
    /// Lower end of a fixed fit range (with --fit-max).
    #[arg(long, requires = "fit_max")]
    pub fit_min: Option<f64>,
    /// Upper end of a fixed fit range (with --fit-min).
    #[arg(long, requires = "fit_min")]
    pub fit_max: Option<f64>,
    /// Keep coefficients inside the cone of influence.
    #[arg(long)]
    pub include_cone: bool,
    /// Scale/covariance TSV (`a`, `R`).
    #[arg(long)]
    pub covariance: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RasterizeArgs {
    /// Points CSV (`x1,x2`).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 512)]
    pub width: usize,
    #[arg(long, default_value_t = 512)]
    pub height: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// Parses and runs one invocation. `args` includes the program name.
pub fn execute<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::bad_input(e.to_string()))?;
    commands::dispatch(cli.command)
}

/// Runs one invocation, reporting errors on standard error, and returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::BadInput.code()
            } else {
                0
            };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("wavesing: {e}");
            e.code.code()
        }
    }
}
