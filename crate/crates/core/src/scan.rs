//! Parameter sweeps behind the `paecs` command-line tool.
//!
//! Every run function returns its rows in a fixed order. Rendering to CSV or
//! JSON is separate and formats floats with their shortest round-trip
//! representation, so identical configurations give byte-identical output.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::analytic::entropy;
use crate::error::{Error, Result};
use crate::fock::{build_paecs_numeric, StateDump, TruncationPolicy};
use crate::quasiprob::{q_grid, PhaseSpaceSlice, QGrid};
use crate::state::{Family, PaecsSpec};
use crate::verify::{run_verification, VerificationReport, VerifyOptions};

/// Marker written in place of numbers for the zero-vector minus states at
/// `α = 0`.
pub const DEGENERATE_MARKER: &str = "degenerate";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown output format {other:?}"
            ))),
        }
    }
}

/// `steps` equally spaced values from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Default for AlphaRange {
    fn default() -> Self {
        AlphaRange {
            lo: 0.0,
            hi: 3.0,
            steps: 121,
        }
    }
}

impl AlphaRange {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo < 0.0 || self.hi < self.lo {
            return Err(Error::InvalidConfig(format!(
                "alpha range needs 0 <= lo <= hi, got {}:{}",
                self.lo, self.hi
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "alpha range needs at least 2 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / last)
            .collect()
    }
}

impl FromStr for AlphaRange {
    type Err = Error;

    /// `lo:hi:steps`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidConfig(format!("expected lo:hi:steps, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let range = AlphaRange {
            lo: parts[0].trim().parse().map_err(|_| bad())?,
            hi: parts[1].trim().parse().map_err(|_| bad())?,
            steps: parts[2].trim().parse().map_err(|_| bad())?,
        };
        range.validate()?;
        Ok(range)
    }
}

/// Parses `m,n`.
pub fn parse_mn(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidConfig(format!("expected m,n with nonnegative integers, got {s:?}"));
    let (m, n) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        m.trim().parse().map_err(|_| bad())?,
        n.trim().parse().map_err(|_| bad())?,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyScanConfig {
    pub family: Family,
    pub alpha: AlphaRange,
    pub mn_list: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyVsMConfig {
    pub family: Family,
    pub alpha: f64,
    pub n_list: Vec<u32>,
    pub m_max: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QFuncConfig {
    pub family: Family,
    pub alpha: C64,
    pub mn: (u32, u32),
    pub slice: PhaseSpaceSlice,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateConfig {
    pub family: Family,
    pub alpha: C64,
    pub mn: (u32, u32),
}

/// One command of the tool with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    EntropyScan(EntropyScanConfig),
    EntropyVsM(EntropyVsMConfig),
    QFunc(QFuncConfig),
    State(StateConfig),
    Verify(VerifyOptions),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::EntropyScan(_) => "entropy-scan",
            Command::EntropyVsM(_) => "entropy-vs-m",
            Command::QFunc(_) => "qfunc",
            Command::State(_) => "state",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub command: Command,
    /// Standard output when `None`.
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        match &self.command {
            Command::EntropyScan(c) => {
                c.alpha.validate()?;
                if c.mn_list.is_empty() {
                    return Err(Error::InvalidConfig(
                        "at least one --mn pair is required".into(),
                    ));
                }
                for &(m, n) in &c.mn_list {
                    PaecsSpec::real(c.family, c.alpha.hi, m, n)?;
                }
            }
            Command::EntropyVsM(c) => {
                if !(c.alpha.is_finite() && c.alpha >= 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "alpha must be >= 0, got {}",
                        c.alpha
                    )));
                }
                if c.n_list.is_empty() {
                    return Err(Error::InvalidConfig("at least one n is required".into()));
                }
                for &n in &c.n_list {
                    PaecsSpec::real(c.family, c.alpha, c.m_max, n)?;
                }
            }
            Command::QFunc(c) => {
                c.slice.validate()?;
                PaecsSpec::new(c.family, c.alpha, c.mn.0, c.mn.1)?;
            }
            Command::State(c) => {
                PaecsSpec::new(c.family, c.alpha, c.mn.0, c.mn.1)?;
            }
            Command::Verify(o) => o.validate()?,
        }
        Ok(())
    }
}

/// A number, or the degenerate marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    Degenerate,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => write!(f, "{v:?}"),
            Cell::Degenerate => f.write_str(DEGENERATE_MARKER),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Value(v) => s.serialize_f64(*v),
            Cell::Degenerate => s.serialize_str(DEGENERATE_MARKER),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyRow {
    pub alpha: f64,
    pub m: u32,
    pub n: u32,
    pub lambda_plus: Cell,
    pub lambda_minus: Cell,
    pub entropy_bits: Cell,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyVsMRow {
    pub m: u32,
    pub n: u32,
    pub entropy_bits: Cell,
}

fn entropy_cells(family: Family, alpha: f64, m: u32, n: u32) -> Result<[Cell; 3]> {
    let spec = PaecsSpec::real(family, alpha, m, n)?;
    match entropy(&spec) {
        Ok(e) => Ok([
            Cell::Value(e.lambda_plus),
            Cell::Value(e.lambda_minus),
            Cell::Value(e.entropy_bits),
        ]),
        Err(err) if err.is_degenerate() => Ok([Cell::Degenerate; 3]),
        Err(err) => Err(err),
    }
}

/// One row per `(α, m, n)`, `α` outer and the pair list inner.
pub fn run_entropy_scan(config: &EntropyScanConfig) -> Result<Vec<EntropyRow>> {
    config.alpha.validate()?;
    if config.mn_list.is_empty() {
        return Err(Error::InvalidConfig("mn list is empty".into()));
    }
    let points: Vec<(f64, u32, u32)> = config
        .alpha
        .values()
        .into_iter()
        .flat_map(|a| config.mn_list.iter().map(move |&(m, n)| (a, m, n)))
        .collect();
    points
        .into_par_iter()
        .map(|(alpha, m, n)| {
            let [lambda_plus, lambda_minus, entropy_bits] =
                entropy_cells(config.family, alpha, m, n)?;
            Ok(EntropyRow {
                alpha,
                m,
                n,
                lambda_plus,
                lambda_minus,
                entropy_bits,
            })
        })
        .collect()
}

/// Rows for `m = 0..=m_max` at each `n`, `n` outer.
pub fn run_entropy_vs_m(config: &EntropyVsMConfig) -> Result<Vec<EntropyVsMRow>> {
    if config.n_list.is_empty() {
        return Err(Error::InvalidConfig("n list is empty".into()));
    }
    let points: Vec<(u32, u32)> = config
        .n_list
        .iter()
        .flat_map(|&n| (0..=config.m_max).map(move |m| (m, n)))
        .collect();
    points
        .into_par_iter()
        .map(|(m, n)| {
            let [_, _, entropy_bits] = entropy_cells(config.family, config.alpha, m, n)?;
            Ok(EntropyVsMRow { m, n, entropy_bits })
        })
        .collect()
}

pub fn run_qfunc(config: &QFuncConfig) -> Result<QGrid> {
    let spec = PaecsSpec::new(config.family, config.alpha, config.mn.0, config.mn.1)?;
    q_grid(&spec, &config.slice)
}

/// Normalized truncated Fock vector of the state.
pub fn run_state(config: &StateConfig, policy: &TruncationPolicy) -> Result<StateDump> {
    let spec = PaecsSpec::new(config.family, config.alpha, config.mn.0, config.mn.1)?;
    let built = build_paecs_numeric(&spec, policy)?;
    Ok(StateDump::new(&spec, &built.state))
}

pub fn run_verify(
    options: &VerifyOptions,
    policy: &TruncationPolicy,
) -> Result<VerificationReport> {
    run_verification(options, policy)
}

pub fn entropy_scan_csv(rows: &[EntropyRow]) -> String {
    let mut out = String::from("alpha,m,n,lambda_plus,lambda_minus,entropy_bits\n");
    for r in rows {
        out.push_str(&format!(
            "{:?},{},{},{},{},{}\n",
            r.alpha, r.m, r.n, r.lambda_plus, r.lambda_minus, r.entropy_bits
        ));
    }
    out
}

pub fn entropy_vs_m_csv(rows: &[EntropyVsMRow]) -> String {
    let mut out = String::from("m,n,entropy_bits\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.m, r.n, r.entropy_bits));
    }
    out
}

/// Two comment lines of metadata, a column header, then one row per grid
/// point with the first axis outer.
pub fn qgrid_csv(grid: &QGrid) -> String {
    let s = &grid.slice;
    let spec = &grid.spec;
    let mut out = String::from("# family,alpha_re,alpha_im,m,n,axis_1,axis_2,fixed_1,fixed_2\n");
    out.push_str(&format!(
        "# {},{:?},{:?},{},{},{},{},{:?},{:?}\n",
        spec.family,
        spec.alpha.re,
        spec.alpha.im,
        spec.m,
        spec.n,
        s.axis_1,
        s.axis_2,
        s.fixed_values[0],
        s.fixed_values[1]
    ));
    out.push_str(&format!("{},{},q_value\n", s.axis_1, s.axis_2));
    for ((i, j), v) in grid.values.indexed_iter() {
        out.push_str(&format!("{:?},{:?},{:?}\n", s.value_1(i), s.value_2(j), v));
    }
    out
}

#[derive(Serialize)]
struct QGridJson<'a> {
    family: Family,
    alpha_re: f64,
    alpha_im: f64,
    m: u32,
    n: u32,
    slice: &'a PhaseSpaceSlice,
    axis_1_values: Vec<f64>,
    axis_2_values: Vec<f64>,
    /// Row `i` holds the values at `axis_1_values[i]`.
    values: Vec<Vec<f64>>,
}

pub fn qgrid_json(grid: &QGrid) -> Result<String> {
    let s = &grid.slice;
    let doc = QGridJson {
        family: grid.spec.family,
        alpha_re: grid.spec.alpha.re,
        alpha_im: grid.spec.alpha.im,
        m: grid.spec.m,
        n: grid.spec.n,
        slice: s,
        axis_1_values: (0..s.points_1).map(|i| s.value_1(i)).collect(),
        axis_2_values: (0..s.points_2).map(|j| s.value_2(j)).collect(),
        values: grid.values.rows().into_iter().map(|r| r.to_vec()).collect(),
    };
    to_json(&doc)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidConfig(format!("cannot serialize output: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Result of a command, rendered in the configured format.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub text: String,
    /// `false` only for a verification run whose report failed.
    pub success: bool,
}

/// Runs a validated configuration and renders its output.
pub fn execute(config: &ScanConfig, policy: &TruncationPolicy) -> Result<CommandOutput> {
    config.validate()?;
    let json = config.format == OutputFormat::Json;
    let ok = |text| {
        Ok(CommandOutput {
            text,
            success: true,
        })
    };
    match &config.command {
        Command::EntropyScan(c) => {
            let rows = run_entropy_scan(c)?;
            ok(if json {
                to_json(&rows)?
            } else {
                entropy_scan_csv(&rows)
            })
        }
        Command::EntropyVsM(c) => {
            let rows = run_entropy_vs_m(c)?;
            ok(if json {
                to_json(&rows)?
            } else {
                entropy_vs_m_csv(&rows)
            })
        }
        Command::QFunc(c) => {
            let grid = run_qfunc(c)?;
            ok(if json {
                qgrid_json(&grid)?
            } else {
                qgrid_csv(&grid)
            })
        }
        Command::State(c) => ok(to_json(&run_state(c, policy)?)?),
        Command::Verify(o) => {
            let report = run_verify(o, policy)?;
            Ok(CommandOutput {
                text: to_json(&report)?,
                success: report.overall_pass,
            })
        }
    }
}
