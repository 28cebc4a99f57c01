use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use paecs::scan::{
    execute, parse_mn, AlphaRange, Command, EntropyScanConfig, EntropyVsMConfig, OutputFormat,
    QFuncConfig, ScanConfig, StateConfig,
};
use paecs::verify::VerifyOptions;
use paecs::{Error, Family, PhaseSpaceSlice, SliceAxis, TruncationPolicy, C64};

/// Entanglement and phase-space scans of photon-added entangled coherent
/// states.
///
/// PAECS_MAX_DIM overrides the largest Fock dimension the oracle may use.
/// Exit status: 0 success, 1 verification failure, 2 configuration error,
/// 3 numerical or truncation error.
#[derive(Parser)]
#[command(name = "paecs", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Cmd {
    /// Schmidt eigenvalues and entropy over an amplitude grid.
    EntropyScan {
        #[arg(long, default_value = "psi1-")]
        family: Family,
        /// lo:hi:steps of |alpha|.
        #[arg(long, default_value = "0:3:121")]
        alpha: AlphaRange,
        /// Photon numbers m,n; repeat for several pairs.
        #[arg(long = "mn", value_parser = mn_arg, default_values = ["0,0", "2,1", "3,7", "20,4"])]
        mn: Vec<(u32, u32)>,
        #[command(flatten)]
        output: Output,
    },
    /// Entropy as a function of m at fixed |alpha|.
    EntropyVsM {
        #[arg(long, default_value = "psi1-")]
        family: Family,
        #[arg(long, default_value_t = 0.2)]
        alpha: f64,
        /// Comma-separated values of n.
        #[arg(long, value_delimiter = ',', default_value = "0,1,4,20")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 20)]
        m_max: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Husimi Q-function on a two-dimensional phase-space slice.
    Qfunc {
        #[arg(long, default_value = "psi1+")]
        family: Family,
        /// Real part of alpha.
        #[arg(long, conflicts_with = "alpha2", allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// |alpha|^2, with alpha taken real and nonnegative.
        #[arg(long)]
        alpha2: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_im: f64,
        #[arg(long, value_parser = mn_arg, default_value = "0,0")]
        mn: (u32, u32),
        /// lo:hi, used for both axes.
        #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
        range: String,
        /// Grid points per axis.
        #[arg(long, default_value_t = 121)]
        points: usize,
        /// Plotted coordinates: one of z1 then one of z2.
        #[arg(long, value_delimiter = ',', default_value = "re_z1,re_z2")]
        axes: Vec<SliceAxis>,
        /// Values of the two unplotted coordinates.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0,0",
            allow_hyphen_values = true
        )]
        fixed: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Normalized truncated Fock vector as JSON.
    State {
        #[arg(long)]
        family: Family,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha_im: f64,
        #[arg(long, value_parser = mn_arg)]
        mn: (u32, u32),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed forms against the Fock-space oracle; JSON report.
    Verify {
        /// Relative error injected into the normalization constant.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb: f64,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().q_nodes)]
        q_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn mn_arg(s: &str) -> Result<(u32, u32), String> {
    parse_mn(s).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> Result<(f64, f64), Error> {
    let bad = || Error::InvalidConfig(format!("expected lo:hi, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn build_config(cmd: Cmd) -> Result<ScanConfig, Error> {
    let config = match cmd {
        Cmd::EntropyScan {
            family,
            alpha,
            mn,
            output,
        } => ScanConfig {
            command: Command::EntropyScan(EntropyScanConfig {
                family,
                alpha,
                mn_list: mn,
            }),
            output_path: output.out,
            format: output.format,
        },
        Cmd::EntropyVsM {
            family,
            alpha,
            n,
            m_max,
            output,
        } => ScanConfig {
            command: Command::EntropyVsM(EntropyVsMConfig {
                family,
                alpha,
                n_list: n,
                m_max,
            }),
            output_path: output.out,
            format: output.format,
        },
        Cmd::Qfunc {
            family,
            alpha,
            alpha2,
            alpha_im,
            mn,
            range,
            points,
            axes,
            fixed,
            output,
        } => {
            let re = match (alpha, alpha2) {
                (_, Some(x)) if x.is_nan() || x < 0.0 => {
                    return Err(Error::InvalidConfig(format!(
                        "--alpha2 must be >= 0, got {x}"
                    )))
                }
                (_, Some(x)) => x.sqrt(),
                (Some(a), None) => a,
                (None, None) => 0.05f64.sqrt(),
            };
            let [axis_1, axis_2] = <[SliceAxis; 2]>::try_from(axes)
                .map_err(|_| Error::InvalidConfig("--axes takes exactly two coordinates".into()))?;
            let fixed_values = <[f64; 2]>::try_from(fixed)
                .map_err(|_| Error::InvalidConfig("--fixed takes exactly two values".into()))?;
            let range = parse_range(&range)?;
            ScanConfig {
                command: Command::QFunc(QFuncConfig {
                    family,
                    alpha: C64::new(re, alpha_im),
                    mn,
                    slice: PhaseSpaceSlice {
                        axis_1,
                        axis_2,
                        fixed_values,
                        range_1: range,
                        range_2: range,
                        points_1: points,
                        points_2: points,
                    },
                }),
                output_path: output.out,
                format: output.format,
            }
        }
        Cmd::State {
            family,
            alpha,
            alpha_im,
            mn,
            out,
        } => ScanConfig {
            command: Command::State(StateConfig {
                family,
                alpha: C64::new(alpha, alpha_im),
                mn,
            }),
            output_path: out,
            format: OutputFormat::Json,
        },
        Cmd::Verify {
            perturb,
            seed,
            q_nodes,
            out,
        } => ScanConfig {
            command: Command::Verify(VerifyOptions {
                perturb,
                seed,
                q_nodes,
            }),
            output_path: out,
            format: OutputFormat::Json,
        },
    };
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<bool, Error> {
    let policy = TruncationPolicy::from_env()?;
    let config = build_config(cli.command)?;
    let output = execute(&config, &policy)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, &output.text)
            .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{}", output.text),
    }
    if !output.success {
        eprintln!("paecs {}: verification failed", config.command.name());
    }
    Ok(output.success)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("paecs: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
