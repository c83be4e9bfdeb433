use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "spectra", version, about = "Spectral checks and Monte Carlo for random symmetric Toeplitz matrices")]
pub struct Cli {
    /// Worker threads; 0 uses every core. Never changes numeric output.
    #[arg(long, global = true, env = "SPECTRA_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact identities for each (n, seed): embedding, conjugation, Stieltjes, Hoffman-Wielandt.
    Verify(VerifyArgs),
    /// Monte Carlo Stieltjes transform on an E x Im z grid, checked against 16√2.
    Stieltjes(StieltjesArgs),
    /// Kernel density estimate of the limiting eigenvalue law.
    Density(DensityArgs),
    /// Spectral-averaging bounds for the coefficient-substitution family.
    Wegner(WegnerArgs),
    /// Hoffman-Wielandt comparison of T and T° across sizes.
    Hw(HwArgs),
    /// Moments of the empirical spectral distribution.
    Moments(MomentsArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Matrix sizes, e.g. `1,64`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub seeds: Vec<u64>,
    /// Multiplies every tolerance.
    #[arg(long, default_value_t = 1.0)]
    pub tol_scale: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct StieltjesArgs {
    #[arg(long, default_value_t = 128)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Energy grid `lo:hi:step`.
    #[arg(long, default_value = "-6:6:0.25", allow_hyphen_values = true, value_parser = parse_range)]
    pub egrid: EnergyGrid,
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.05,0.01")]
    pub imz: Vec<f64>,
    /// Which side of the projected identity to average.
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleArg {
    Toeplitz,
    Hankel,
}

#[derive(Debug, Args, Serialize)]
pub struct DensityArgs {
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub grid_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub grid_max: f64,
    #[arg(long, default_value_t = 201)]
    pub grid_points: usize,
    /// Kernel bandwidth; Silverman's rule when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub bandwidth: Option<f64>,
    #[arg(long, value_enum, default_value = "toeplitz")]
    pub ensemble: EnsembleArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Primary,
    Mirror,
}

#[derive(Debug, Args, Serialize)]
pub struct WegnerArgs {
    /// Run the analytic scalar-family self-test instead.
    #[arg(long)]
    pub scalar: bool,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Distinguished indices, each in `0..=n`.
    #[arg(long, value_delimiter = ',', default_value = "0,1,8,16")]
    pub j: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "E", value_delimiter = ',', default_value = "-2,0,2", allow_hyphen_values = true)]
    pub energies: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.05,0.005")]
    pub delta: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.1,0.03,0.01,0.003,0.001,0.0001")]
    pub eps_ladder: Vec<f64>,
    /// Minimum λ-quadrature nodes (at least 2000).
    #[arg(long, default_value_t = 2000)]
    pub quad_points: usize,
    #[arg(long, value_enum, default_value = "primary")]
    pub variant: VariantArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct HwArgs {
    #[arg(long, value_delimiter = ',', default_value = "128,512")]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8,9,10")]
    pub seeds: Vec<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub max_order: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `lo:hi:step`, inclusive of `hi` up to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl EnergyGrid {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.lo + self.step * i as f64).collect()
    }
}

fn parse_range(s: &str) -> Result<EnergyGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!("expected lo:hi:step, got `{s}`"));
    };
    let f = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    let (lo, hi, step) = (f(lo)?, f(hi)?, f(step)?);
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!("need lo <= hi and step > 0, got `{s}`"));
    }
    Ok(EnergyGrid { lo, hi, step })
}
