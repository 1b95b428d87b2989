use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::UsageError;

/// Largest polynomial degree accepted on the command line.
pub const MAX_DEGREE: usize = 512;
/// Smallest grid accepted for 2-D sweeps.
pub const MIN_SCAN_GRID: usize = 1001;

#[derive(Parser, Debug)]
#[command(
    name = "snakeineq",
    version,
    about = "Snake-polynomials and Markov/Duffin-Schaeffer checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a snake-polynomial and print coefficients, nodes and positivity profile.
    Snake(Opts),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// M-side values and D-side lower bounds for μ_m = (1 − x²)^{m/2}.
    Growth(Opts),
    /// Parameter sweeps.
    Scan {
        #[command(subcommand)]
        what: ScanCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// M = D* = ω^{(k)}(1) for a catalog majorant.
    TheoremMain(Opts),
    /// max |τ_n′| = n² by 2-D sweep.
    TauMax(Opts),
    /// F/G bounds.
    Fg(Opts),
    /// Positivity of τ″ near x = 1.
    Tau2(Opts),
    /// Critical points of τ′ by domain.
    PropDd(Opts),
    /// Interlacing of τ(·, t) with T_n − T_n(t).
    Interlace(Opts),
    /// ψ-identities at nodes.
    Psi(Opts),
}

#[derive(Subcommand, Debug)]
pub enum ScanCmd {
    /// Sweep |τ_n′(x, t)| over [−1, 1]².
    Tau(Opts),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
}

/// Options shared by all subcommands. Every flag can also be set as
/// `key = value` in the file given by `--config`; flags win.
#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    /// key=value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Catalog case: unit, case1..case10, sqrt1mx2, mu_m, or `defaults`.
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Comma-separated c_i.
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    /// Comma-separated monomial coefficients of R_m(y).
    #[arg(long)]
    pub r: Option<String>,
    /// Case-10 factors as `a:b;a:b`.
    #[arg(long)]
    pub factors: Option<String>,
    /// Degree: `7`, `8..14` or `21,41,81`.
    #[arg(long)]
    pub n: Option<String>,
    /// Derivative order, same syntax as `--n`.
    #[arg(long)]
    pub k: Option<String>,
    /// Comma-separated t values.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Grid size of the sweep (per axis).
    #[arg(long)]
    pub grid: Option<String>,
    /// Grid size of the CSV export (per axis).
    #[arg(long)]
    pub csv_grid: Option<String>,
    /// Output file (CSV data).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

const KEYS: &[&str] = &[
    "case", "a", "b", "c", "l", "m", "r", "factors", "n", "k", "t", "grid", "csv_grid", "out",
    "format",
];

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| UsageError(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(UsageError(format!(
                "config line {}: unknown key `{}`",
                i + 1,
                k.trim()
            )));
        }
        let v = v.trim().trim_matches('"').to_string();
        map.insert(key, v);
    }
    Ok(map)
}

impl Opts {
    /// Fills unset flags from `--config`.
    pub fn merged(mut self) -> Result<Opts, UsageError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = read_config(&path)?;
        let fill = |slot: &mut Option<String>, key: &str| {
            if slot.is_none() {
                *slot = file.get(key).cloned();
            }
        };
        fill(&mut self.case, "case");
        fill(&mut self.a, "a");
        fill(&mut self.b, "b");
        fill(&mut self.c, "c");
        fill(&mut self.l, "l");
        fill(&mut self.m, "m");
        fill(&mut self.r, "r");
        fill(&mut self.factors, "factors");
        fill(&mut self.n, "n");
        fill(&mut self.k, "k");
        fill(&mut self.t, "t");
        fill(&mut self.grid, "grid");
        fill(&mut self.csv_grid, "csv_grid");
        if self.out.is_none() {
            self.out = file.get("out").map(PathBuf::from);
        }
        if self.format.is_none() {
            if let Some(f) = file.get("format") {
                self.format = Some(
                    Format::from_str(f, true)
                        .map_err(|_| UsageError(format!("unknown format `{f}`")))?,
                );
            }
        }
        Ok(self)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }
}

pub fn parse_f64(name: &str, v: &str) -> Result<f64, UsageError> {
    v.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| UsageError(format!("--{name}: `{v}` is not a finite number")))
}

pub fn parse_usize(name: &str, v: &str) -> Result<usize, UsageError> {
    v.trim()
        .parse::<usize>()
        .map_err(|_| UsageError(format!("--{name}: `{v}` is not a non-negative integer")))
}

pub fn parse_f64_list(name: &str, v: &str) -> Result<Vec<f64>, UsageError> {
    v.split(',').map(|s| parse_f64(name, s)).collect()
}

/// An integer set given as `7`, `8..14` (inclusive) or `21,41,81`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSet {
    pub values: Vec<usize>,
    pub is_range: bool,
}

pub fn parse_int_set(name: &str, v: &str) -> Result<IntSet, UsageError> {
    let v = v.trim();
    if let Some((lo, hi)) = v.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (parse_usize(name, lo)?, parse_usize(name, hi)?);
        if lo > hi {
            return Err(UsageError(format!("--{name}: empty range {v}")));
        }
        return Ok(IntSet {
            values: (lo..=hi).collect(),
            is_range: true,
        });
    }
    let values = v
        .split(',')
        .map(|s| parse_usize(name, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntSet {
        values,
        is_range: false,
    })
}
