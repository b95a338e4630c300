//! Command-line arguments and value parsers.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "losc", version, about = "Legendre oscillator verification and tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the check suite; exit 1 if any hard check fails.
    Verify {
        /// Relative tolerance of the quadrature-based checks.
        #[arg(long, default_value_t = 1e-8, allow_hyphen_values = true)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Number statistics over a grid of J values.
    Table {
        /// J grid as START:STOP:COUNT, within [0, 1/2).
        #[arg(long = "grid-j", value_parser = parse_grid)]
        grid_j: Grid,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Amplitudes of one state; for Barut-Girardello states also the wavefunction.
    Eval {
        /// Barut-Girardello label as RE or RE,IM.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with_all = ["j", "gamma"], required_unless_present = "j")]
        z: Option<Complex64>,
        /// Gazeau-Klauder action.
        #[arg(long = "J", id = "j", requires = "gamma")]
        j: Option<f64>,
        /// Gazeau-Klauder angle.
        #[arg(long, allow_hyphen_values = true, requires = "j")]
        gamma: Option<f64>,
        /// x grid for the wavefunction as START:STOP:COUNT.
        #[arg(long = "grid-x", value_parser = parse_grid, allow_hyphen_values = true, default_value = "-1:1:5")]
        grid_x: Grid,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Overlaps of every ordered pair of the given states.
    Overlap {
        /// Barut-Girardello label RE or RE,IM; repeat for more states.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "gk", required_unless_present = "gk")]
        z: Vec<Complex64>,
        /// Gazeau-Klauder label J,GAMMA; repeat for more states.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        gk: Vec<(f64, f64)>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Fock-space truncation.
    #[arg(long, default_value_t = 128)]
    pub truncation: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `count` evenly spaced points from `start` to `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v = f64::from_str(s.trim()).map_err(|e| format!("{s:?}: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(format!("expected START:STOP:COUNT, got {s:?}"));
    };
    let grid = Grid {
        start: parse_f64(start)?,
        stop: parse_f64(stop)?,
        count: count.trim().parse().map_err(|e| format!("count {count:?}: {e}"))?,
    };
    if grid.count == 0 {
        return Err("grid count must be at least 1".into());
    }
    if grid.start > grid.stop {
        return Err(format!("grid start {} exceeds stop {}", grid.start, grid.stop));
    }
    Ok(grid)
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Complex64::new(parse_f64(s)?, 0.0)),
    }
}

pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected J,GAMMA, got {s:?}"))?;
    Ok((parse_f64(a)?, parse_f64(b)?))
}
