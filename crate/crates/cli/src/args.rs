use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rpr", version, about = "Singularity and cusp analysis of planar 3-RPR manipulators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a geometry file and print its derived quantities.
    Validate(Common),
    /// Joint lengths and leg angles of a slice pose.
    Ik(Common),
    /// Assembly modes of a joint vector.
    Dk(Common),
    /// Singular curves of a slice.
    Singular(Common),
    /// Cusp points of a slice.
    Cusps(Common),
    /// Curves, cusps and region map of a slice.
    Atlas(Common),
    /// Cusp counts and region signatures over a range of L1.
    Sweep(Common),
    /// Smallest L1 from which the slice pattern stays constant.
    Stabilize(Common),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Ik(_) => "ik",
            Command::Dk(_) => "dk",
            Command::Singular(_) => "singular",
            Command::Cusps(_) => "cusps",
            Command::Atlas(_) => "atlas",
            Command::Sweep(_) => "sweep",
            Command::Stabilize(_) => "stabilize",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Validate(c)
            | Command::Ik(c)
            | Command::Dk(c)
            | Command::Singular(c)
            | Command::Cusps(c)
            | Command::Atlas(c)
            | Command::Sweep(c)
            | Command::Stabilize(c) => c,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Geometry JSON file.
    #[arg(long, value_name = "PATH")]
    pub geom: PathBuf,
    #[arg(long, value_name = "F")]
    pub l1: Option<f64>,
    #[arg(long, value_name = "F")]
    pub l2: Option<f64>,
    #[arg(long, value_name = "F")]
    pub l3: Option<f64>,
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, value_name = "F", allow_negative_numbers = true)]
    pub theta1: Option<f64>,
    /// L1 samples `A:B:STEP`.
    #[arg(long, value_name = "A:B:STEP")]
    pub l1_range: Option<Range>,
    /// Tracing grid size per axis over (alpha, theta1).
    #[arg(long, value_name = "N", default_value_t = 512, value_parser = clap::value_parser!(u32).range(64..))]
    pub grid: u32,
    /// Region map cells per axis.
    #[arg(long, value_name = "N", default_value_t = 128, value_parser = clap::value_parser!(u32).range(1..))]
    pub regions: u32,
    /// Region window `l2min:l2max:l3min:l3max`; sized around the curves by default.
    #[arg(long, value_name = "l2min:l2max:l3min:l3max")]
    pub window: Option<WindowArg>,
    /// Output directory; defaults to `./out/<command>-<timestamp>`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Artifact formats.
    #[arg(long, value_delimiter = ',', default_value = "csv,json,svg")]
    pub format: Vec<Format>,
    /// Worker threads; defaults to the available cores.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

fn parse_fields<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != N {
        return Err(format!("expected {N} ':'-separated numbers, got '{s}'"));
    }
    let mut out = [0.0f64; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|_| format!("'{p}' is not a number"))?;
        if !o.is_finite() {
            return Err(format!("'{p}' is not finite"));
        }
    }
    Ok(out)
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let [start, end, step] = parse_fields::<3>(s)?;
        if step <= 0.0 {
            return Err("step must be positive".into());
        }
        if end < start {
            return Err("range is empty".into());
        }
        if start <= 0.0 {
            return Err("L1 values must be positive".into());
        }
        Ok(Self { start, end, step })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowArg(pub [f64; 4]);

impl FromStr for WindowArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let w = parse_fields::<4>(s)?;
        rpr_core::Window::new(w[0], w[1], w[2], w[3]).map_err(|e| e.to_string())?;
        Ok(Self(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r: Range = "26.5:27.5:0.05".parse().unwrap();
        assert_eq!((r.start, r.end, r.step), (26.5, 27.5, 0.05));
        assert!("1:2".parse::<Range>().is_err());
        assert!("1:2:0".parse::<Range>().is_err());
        assert!("2:1:0.1".parse::<Range>().is_err());
        assert!("0:1:0.1".parse::<Range>().is_err());
        assert!("a:1:0.1".parse::<Range>().is_err());
    }

    #[test]
    fn window_parsing() {
        let w: WindowArg = "1:40:2:45".parse().unwrap();
        assert_eq!(w.0, [1.0, 40.0, 2.0, 45.0]);
        assert!("0:40:2:45".parse::<WindowArg>().is_err());
        assert!("5:4:2:45".parse::<WindowArg>().is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
