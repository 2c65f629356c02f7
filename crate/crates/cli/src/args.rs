use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirac_coulomb::{presets, Mode, PotentialConfig, QuantumNumbers, Sector};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "dirac-coulomb",
    version,
    about = "Bound states of the Dirac equation with Coulomb and tensor couplings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy table for every (k, n_f) and sector.
    Spectrum(Common),
    /// Which sectors bind, from the position of the intercept.
    Regime(Common),
    /// Sampled radial functions of one state.
    Wavefunction(WavefunctionArgs),
    /// Residual, normalization and shooting cross-checks.
    Verify(VerifyArgs),
    /// Energy ladders with their distance to the continuum, for plotting.
    FigureData(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Circular,
    Spherical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SectorArg {
    Particle,
    Antiparticle,
}

impl From<SectorArg> for Sector {
    fn from(s: SectorArg) -> Self {
        match s {
            SectorArg::Particle => Sector::Particle,
            SectorArg::Antiparticle => Sector::Antiparticle,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Named parameter set (fig3a, fig3b); explicit strengths override it.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_delta: Option<f64>,
    /// Tensor Coulomb strength a.
    #[arg(long, allow_hyphen_values = true)]
    pub tensor_a: Option<f64>,
    /// Constant tensor term b̄ = b/m.
    #[arg(long, allow_hyphen_values = true)]
    pub tensor_b: Option<f64>,
    #[arg(long, value_enum, default_value = "circular")]
    pub mode: ModeArg,
    /// Comma-separated k values: "3/2,-1/2" in circular mode, integers k_s
    /// in spherical mode.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "two_k")]
    pub k: Vec<String>,
    /// Comma-separated doubled values 2k.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub two_k: Vec<i32>,
    #[arg(long, default_value_t = 5)]
    pub nf_max: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Mass used to display ε = E·m and radii ρ = mρ/m. Inputs stay
    /// dimensionless.
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0)]
    pub nf: u32,
    #[arg(long, value_enum)]
    pub sector: SectorArg,
    /// Number of sample points.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Largest mρ sampled; defaults to the point where ρ̃ = 40(n_f + γ).
    #[arg(long)]
    pub rho_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Shift every energy before checking it. Negative control for tests.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub corrupt_energy: Option<f64>,
}

/// A validated request.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub config: PotentialConfig,
    pub mode: Mode,
    pub k_list: Vec<QuantumNumbers>,
    pub n_f_max: u32,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub mass: f64,
}

impl RunSpec {
    pub fn config_json(&self) -> Value {
        json!({
            "alpha_sigma": self.config.alpha_sigma,
            "alpha_delta": self.config.alpha_delta,
            "a": self.config.a,
            "bbar": self.config.bbar(),
            "mass": self.mass,
            "n_f_max": self.n_f_max,
        })
    }

    pub fn mode_name(&self) -> &'static str {
        match self.mode {
            Mode::Circular => "circular",
            Mode::Spherical => "spherical",
        }
    }

    /// Every (k, n_f) pair of the sweep.
    pub fn pairs(&self) -> Vec<QuantumNumbers> {
        self.k_list.iter().flat_map(|q| (0..=self.n_f_max).map(move |n| q.with_n_f(n))).collect()
    }
}

/// Parses "3/2", "-1/2" or an integer into the doubled value 2k.
pub fn parse_two_k(text: &str, mode: Mode) -> CliResult<i32> {
    let t = text.trim();
    let bad = || CliError::config(format!("cannot parse k = {t:?}"));
    match mode {
        Mode::Circular => {
            let (num, den) = t.split_once('/').ok_or_else(|| {
                CliError::config(format!("k = {t:?} must be a half-integer such as 3/2 in circular mode"))
            })?;
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            let den: i32 = den.trim().parse().map_err(|_| bad())?;
            if den != 2 || num % 2 == 0 {
                return Err(CliError::config(format!("k = {t:?} must have an odd numerator over 2 in circular mode")));
            }
            Ok(num)
        }
        Mode::Spherical => {
            let k_s: i32 = t
                .parse()
                .map_err(|_| CliError::config(format!("k = {t:?} must be a nonzero integer k_s in spherical mode")))?;
            if k_s == 0 {
                return Err(CliError::config("k_s = 0 is not a spherical quantum number"));
            }
            Ok(2 * k_s)
        }
    }
}

fn quantum(mode: Mode, two_k: i32) -> CliResult<QuantumNumbers> {
    Ok(match mode {
        Mode::Circular => QuantumNumbers::circular(0, two_k)?,
        Mode::Spherical => {
            if two_k % 2 != 0 {
                return Err(CliError::config(format!("2k = {two_k} must be even in spherical mode")));
            }
            QuantumNumbers::spherical(0, two_k / 2)?
        }
    })
}

fn default_two_k(mode: Mode) -> Vec<i32> {
    match mode {
        Mode::Circular => vec![-9, -7, -5, -3, -1, 1, 3, 5, 7, 9],
        Mode::Spherical => vec![-10, -8, -6, -4, -2, 2, 4, 6, 8, 10],
    }
}

impl Common {
    pub fn run_spec(&self) -> CliResult<RunSpec> {
        let base = match &self.preset {
            Some(name) => presets::by_name(name).ok_or_else(|| {
                CliError::config(format!("unknown preset {name:?}; known: {}", presets::NAMES.join(", ")))
            })?,
            None => PotentialConfig::dimensionless(0.0, 0.0, 0.0, 0.0),
        };
        let config = PotentialConfig::new(
            self.alpha_sigma.unwrap_or(base.alpha_sigma),
            self.alpha_delta.unwrap_or(base.alpha_delta),
            self.tensor_a.unwrap_or(base.a),
            self.tensor_b.unwrap_or(base.bbar()),
            1.0,
        )?;
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(CliError::config(format!("--mass must be positive, got {}", self.mass)));
        }
        let mode = match self.mode {
            ModeArg::Circular => Mode::Circular,
            ModeArg::Spherical => Mode::Spherical,
        };
        let mut doubled = if !self.k.is_empty() {
            self.k.iter().map(|t| parse_two_k(t, mode)).collect::<CliResult<Vec<_>>>()?
        } else if !self.two_k.is_empty() {
            self.two_k.clone()
        } else {
            default_two_k(mode)
        };
        doubled.sort_unstable();
        doubled.dedup();
        let k_list = doubled.into_iter().map(|t| quantum(mode, t)).collect::<CliResult<Vec<_>>>()?;
        Ok(RunSpec {
            config,
            mode,
            k_list,
            n_f_max: self.nf_max,
            format: self.format,
            output: self.out.clone(),
            mass: self.mass,
        })
    }
}
