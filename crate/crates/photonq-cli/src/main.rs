//! photonq: reproducible photon wave-mechanics experiments from the command
//! line. Exit codes: 0 success, 1 validation failure, 2 physics-check
//! failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::coherent::CoherentArgs;
use commands::evolve::EvolveArgs;
use commands::stokes::StokesArgs;
use commands::synthesize::SynthesizeArgs;
use commands::uncertainty::UncertaintyArgs;
use config::{FileConfig, OutputFormat, RunConfig};

/// Command failure with the exit-code contract baked in.
#[derive(Debug)]
pub enum CliError {
    /// Bad input, unreadable files, malformed specs: exit 1.
    Validation(String),
    /// A physics check (bound, conservation, preset) failed: exit 2.
    Physics(String),
}

impl From<photonq::Error> for CliError {
    fn from(e: photonq::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Physics(m) => write!(f, "physics check failed: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "photonq",
    version,
    about = "Photon wave mechanics: momentum-space states, Riemann-Silberstein fields, \
             Fock-space states, and blackbody radiometry"
)]
struct Cli {
    /// TOML config file with defaults; flags win over file values
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output path (stdout when omitted)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Check tolerance override (meaning depends on the command)
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    /// Grid extents: NX or NX,NY,NZ
    #[arg(long, global = true, value_name = "NX[,NY,NZ]")]
    grid: Option<String>,

    /// Temperatures in kelvin: T or T1,T2,...
    #[arg(long, global = true, value_name = "T[,T...]")]
    temp: Option<String>,

    /// Constants profile: si or natural
    #[arg(long, global = true, value_name = "PROFILE")]
    constants: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-node Stokes parameters and ellipse geometry of a photon state
    Stokes {
        /// Load the state from a file instead of building a Gaussian
        #[arg(long, value_name = "PATH")]
        state: Option<PathBuf>,
        /// Also save the (possibly generated) state to this path
        #[arg(long, value_name = "PATH")]
        save_state: Option<PathBuf>,
        /// Packet carrier wave vector kx,ky,kz
        #[arg(long, default_value = "3.0,1.0,0.5")]
        k0: String,
        /// Packet width in k-space
        #[arg(long, default_value_t = 0.4)]
        sigma: f64,
        /// Righthanded weight re[,im]
        #[arg(long, default_value = "1")]
        c_plus: String,
        /// Lefthanded weight re[,im]
        #[arg(long, default_value = "0")]
        c_minus: String,
    },
    /// Sweep Gaussian packets and test the position-momentum bound
    Uncertainty {
        /// Packet widths, comma separated
        #[arg(long, default_value = "0.3,0.45,0.6")]
        sigma: String,
        /// Carrier magnitudes, comma separated
        #[arg(long, default_value = "3.0,4.0,5.0")]
        k: String,
        /// Helicity mixes in [0,1] (0 = righthanded, 1 = lefthanded)
        #[arg(long, default_value = "0,0.5,1")]
        mix: String,
    },
    /// Synthesize the RS field of a wave packet; write snapshot + diagnostics
    Synthesize {
        #[arg(long, default_value = "3.0,1.0,0.5")]
        k0: String,
        #[arg(long, default_value_t = 0.4)]
        sigma: f64,
        #[arg(long, default_value = "1")]
        c_plus: String,
        #[arg(long, default_value = "0")]
        c_minus: String,
        /// Evaluation time
        #[arg(long, default_value_t = 0.0)]
        time: f64,
        /// Scale by sqrt(hbar c) so one photon carries its quantum energy
        #[arg(long)]
        quantum_scale: bool,
    },
    /// Evolve a field spectrally; emit a time series and conservation report
    Evolve {
        /// Field snapshot to evolve (otherwise an inline packet is built)
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        dt: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        /// Keep every Nth sample in the time series
        #[arg(long, default_value_t = 10)]
        sample_every: usize,
        #[arg(long, default_value = "3.0,1.0,0.5")]
        k0: String,
        #[arg(long, default_value_t = 0.4)]
        sigma: f64,
        #[arg(long, default_value = "1")]
        c_plus: String,
        #[arg(long, default_value = "0")]
        c_minus: String,
    },
    /// Blackbody spectra and radiometric summaries for --temp
    Planck {
        /// Samples per spectrum
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Upper end of the dimensionless frequency range h nu / k_B T
        #[arg(long, default_value_t = 25.0)]
        x_max: f64,
    },
    /// Coherent-state statistics and the mean-field correspondence
    Coherent {
        /// Average photon number
        #[arg(long, default_value_t = 1.0)]
        n_avg: f64,
        /// Poisson tail allowed beyond the truncation
        #[arg(long, default_value_t = 1e-8)]
        tail_eps: f64,
        /// Number of space-time comparison samples
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Run the full acceptance battery
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Validation(_) => ExitCode::from(1),
                CliError::Physics(_) => ExitCode::from(2),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => Some(FileConfig::load(path)?),
        None => None,
    };
    let cfg = RunConfig::resolve(
        file,
        cli.constants.as_deref(),
        cli.grid.as_deref(),
        cli.format,
        cli.tol,
        cli.temp.as_deref(),
        cli.out.clone(),
    )?;

    match cli.command {
        Command::Stokes {
            state,
            save_state,
            k0,
            sigma,
            c_plus,
            c_minus,
        } => commands::stokes::run(
            &cfg,
            &StokesArgs {
                state_file: state,
                save_state,
                k0,
                sigma,
                c_plus,
                c_minus,
            },
        ),
        Command::Uncertainty { sigma, k, mix } => commands::uncertainty::run(
            &cfg,
            &UncertaintyArgs {
                sigmas: sigma,
                k_mags: k,
                mixes: mix,
            },
        ),
        Command::Synthesize {
            k0,
            sigma,
            c_plus,
            c_minus,
            time,
            quantum_scale,
        } => commands::synthesize::run(
            &cfg,
            &SynthesizeArgs {
                k0,
                sigma,
                c_plus,
                c_minus,
                time,
                quantum_scale,
            },
        ),
        Command::Evolve {
            input,
            dt,
            steps,
            sample_every,
            k0,
            sigma,
            c_plus,
            c_minus,
        } => commands::evolve::run(
            &cfg,
            &EvolveArgs {
                input,
                synth: SynthesizeArgs {
                    k0,
                    sigma,
                    c_plus,
                    c_minus,
                    time: 0.0,
                    quantum_scale: false,
                },
                dt,
                steps,
                sample_every,
            },
        ),
        Command::Planck { points, x_max } => {
            commands::planck::run(&cfg, &commands::planck::PlanckArgs { points, x_max })
        }
        Command::Coherent {
            n_avg,
            tail_eps,
            samples,
        } => commands::coherent::run(
            &cfg,
            &CoherentArgs {
                n_avg,
                tail_eps,
                samples,
            },
        ),
        Command::Selftest => commands::selftest::run(&cfg),
    }
}
