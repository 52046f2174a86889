//! Run configuration: a TOML config file provides defaults, command-line
//! flags override them, and the resolved record is hashed into every output
//! for reproducibility.

use std::path::{Path, PathBuf};

use photonq::PhysicalConstants;

use crate::CliError;

/// Output format selector shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Binary,
}

impl OutputFormat {
    pub fn name(&self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
            OutputFormat::Binary => "binary",
        }
    }
}

/// Optional keys of the TOML config file.
#[derive(Debug, Clone, Default, serde::Deserialize)]
pub struct FileConfig {
    /// "si" or "natural"
    pub constants: Option<String>,
    /// one or three grid extents
    pub grid: Option<Vec<usize>>,
    /// "text", "json" or "binary"
    pub format: Option<String>,
    pub tol: Option<f64>,
    /// temperatures in kelvin
    pub temp: Option<Vec<f64>>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {path:?}: {e}")))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("cannot parse config {path:?}: {e}")))
    }
}

/// Fully resolved configuration after applying flag overrides (flags win).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub constants: PhysicalConstants,
    pub constants_name: String,
    pub grid: [usize; 3],
    pub format: OutputFormat,
    pub tol: Option<f64>,
    pub temps: Vec<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(
        file: Option<FileConfig>,
        constants_flag: Option<&str>,
        grid_flag: Option<&str>,
        format_flag: Option<OutputFormat>,
        tol_flag: Option<f64>,
        temp_flag: Option<&str>,
        out: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        let file = file.unwrap_or_default();

        let constants_name = constants_flag
            .map(str::to_string)
            .or(file.constants)
            .unwrap_or_else(|| "si".into());
        let constants = match constants_name.as_str() {
            "si" => PhysicalConstants::si(),
            "natural" => PhysicalConstants::natural(),
            other => {
                return Err(CliError::Validation(format!(
                    "unknown constants profile '{other}' (use si or natural)"
                )))
            }
        };

        let grid = match grid_flag {
            Some(s) => parse_grid(s)?,
            None => match &file.grid {
                Some(v) => grid_from_vec(v)?,
                None => [16, 16, 16],
            },
        };
        if grid.iter().any(|n| *n < 2) {
            return Err(CliError::Validation("grid extents must be at least 2".into()));
        }

        let format = match format_flag {
            Some(f) => f,
            None => match file.format.as_deref() {
                Some("text") | None => OutputFormat::Text,
                Some("json") => OutputFormat::Json,
                Some("binary") => OutputFormat::Binary,
                Some(other) => {
                    return Err(CliError::Validation(format!("unknown format '{other}'")))
                }
            },
        };

        let temps = match temp_flag {
            Some(s) => s
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Validation(format!("bad temperature '{p}'")))
                })
                .collect::<Result<Vec<f64>, CliError>>()?,
            None => file.temp.unwrap_or_else(|| vec![2.7]),
        };
        if temps.iter().any(|t| *t <= 0.0) {
            return Err(CliError::Validation("temperatures must be positive".into()));
        }

        Ok(Self {
            constants,
            constants_name,
            grid,
            format,
            tol: tol_flag.or(file.tol),
            temps,
            seed: file.seed.unwrap_or(7),
            out,
        })
    }

    /// Canonical one-line rendering used for the provenance hash and the
    /// header echo.
    pub fn canonical(&self, command: &str, extra: &str) -> String {
        format!(
            "command={command} constants={} grid={},{},{} format={} tol={} temps={:?} seed={} {extra}",
            self.constants_name,
            self.grid[0],
            self.grid[1],
            self.grid[2],
            self.format.name(),
            self.tol.map(|t| t.to_string()).unwrap_or_else(|| "default".into()),
            self.temps,
            self.seed,
        )
    }
}

fn parse_grid(s: &str) -> Result<[usize; 3], CliError> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Validation(format!("bad grid extent '{p}'")))
        })
        .collect::<Result<_, _>>()?;
    grid_from_vec(&parts)
}

fn grid_from_vec(v: &[usize]) -> Result<[usize; 3], CliError> {
    match v {
        [n] => Ok([*n; 3]),
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(CliError::Validation(
            "grid takes one extent or three comma-separated extents".into(),
        )),
    }
}

/// Parse "x,y,z" into a vector.
pub fn parse_vec3(s: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Validation(format!("bad component '{p}'")))
        })
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok([x, y, z]),
        _ => Err(CliError::Validation("expected three comma-separated values".into())),
    }
}

/// Parse "re,im" into a complex number.
pub fn parse_complex(s: &str) -> Result<num_complex::Complex64, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Validation(format!("bad component '{p}'")))
        })
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [re] => Ok(num_complex::Complex64::new(re, 0.0)),
        [re, im] => Ok(num_complex::Complex64::new(re, im)),
        _ => Err(CliError::Validation("expected re or re,im".into())),
    }
}

/// Parse a comma-separated list of reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Validation(format!("bad value '{p}'")))
        })
        .collect()
}
