use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cm_cells::alcoves::{normalize_to_theta1, reduce_to_fundamental, ThetaPoint};
use cm_cells::cm_blocks::{cm_partition_from_c_type_b, BlockContext};
use cm_cells::cores_quotients::{core_of_charge, p_r_size, tau, tau_inverse};
use cm_cells::domino_cells::r_cells_bounded;
use cm_cells::report::{BlocksReport, ReduceReport, Table, TauReport};
use cm_cells::scalar::parse_rational_list;
use cm_cells::verify::{self, Fault};
use cm_cells::{Charge, Error, Multipartition, Partition, Rational};

const PARALLEL_ENV: &str = "CM_CELLS_MAX_PARALLEL";

#[derive(Parser)]
#[command(
    name = "cm-cells",
    version,
    about = "Calogero-Moser blocks and domino cells"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    /// Largest partition size any command may enumerate.
    #[arg(long, global = true, default_value_t = 30)]
    max_size: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    None,
    ResidueShift,
}

#[derive(Subcommand)]
enum Command {
    /// Block partition of P(l,n) at a parameter point.
    Blocks {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals "p/q"; rescaled to sum 1.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["c_s", "c_t"])]
        theta: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "c_t")]
        c_s: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "c_s")]
        c_t: Option<String>,
    },
    /// Domino cells of P_r(n).
    Cells {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Compare blocks and cells for all 1 <= n <= max-n, r <= max-r.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        #[arg(long, value_enum, default_value = "none", hide = true)]
        inject_fault: FaultArg,
    },
    /// The bijection tau_s, or its inverse with --partition.
    Tau {
        #[arg(long)]
        ell: usize,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
        /// JSON array of partitions, e.g. "[[1],[]]".
        #[arg(
            long,
            conflicts_with = "partition",
            required_unless_present = "partition"
        )]
        mp: Option<String>,
        /// JSON array, e.g. "[2,1]".
        #[arg(long)]
        partition: Option<String>,
    },
    /// Reduce a point into the fundamental alcove.
    Reduce {
        #[arg(long)]
        ell: usize,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
}

enum Failure {
    Error(Error),
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn emit<R: Serialize + Table>(format: Format, report: &R) -> Result<String, Failure> {
    match format {
        Format::Json => serde_json::to_string_pretty(report)
            .map(|s| s + "\n")
            .map_err(|e| Failure::Error(Error::Internal(e.to_string()))),
        Format::Table => Ok(report.to_table()),
    }
}

fn theta_point(ell: usize, text: &str) -> Result<ThetaPoint<Rational>, Failure> {
    let coords = parse_rational_list(text)?;
    if coords.len() != ell {
        return Err(Failure::Usage(format!(
            "--theta has {} coordinates but --ell is {ell}",
            coords.len()
        )));
    }
    Ok(normalize_to_theta1(&ThetaPoint::new(coords)?)?)
}

fn single_rational(flag: &str, text: &str) -> Result<Rational, Failure> {
    match parse_rational_list(text)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(Failure::Usage(format!("{flag} takes a single rational"))),
    }
}

fn check_size(requested: usize, bound: usize) -> Result<(), Failure> {
    if requested > bound {
        return Err(Error::EnumerationLimit {
            what: "partition size",
            requested,
            bound,
        }
        .into());
    }
    Ok(())
}

fn parse_json<T: serde::de::DeserializeOwned>(flag: &str, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Blocks {
            ell,
            n,
            theta,
            c_s,
            c_t,
        } => {
            if ell == 0 {
                return Err(Failure::Usage("--ell must be positive".into()));
            }
            check_size(ell * n, cli.max_size)?;
            let (context, bp) = match (theta, c_s, c_t) {
                (Some(t), None, None) => {
                    let context = BlockContext::new(n, theta_point(ell, &t)?)?;
                    let bp = context.partition()?;
                    (context, bp)
                }
                (None, Some(s), Some(t)) => {
                    if ell != 2 {
                        return Err(Failure::Usage("--c-s/--c-t need --ell 2".into()));
                    }
                    cm_partition_from_c_type_b(
                        single_rational("--c-s", &s)?,
                        single_rational("--c-t", &t)?,
                        n,
                    )?
                }
                _ => {
                    return Err(Failure::Usage(
                        "give either --theta or both --c-s and --c-t".into(),
                    ))
                }
            };
            emit(cli.format, &BlocksReport::new(&context, bp))
        }
        Command::Cells { n, r } => {
            check_size(p_r_size(n, r), cli.max_size)?;
            emit(cli.format, &r_cells_bounded(n, r, cli.max_size)?)
        }
        Command::Verify {
            max_n,
            max_r,
            inject_fault,
        } => {
            check_size(p_r_size(max_n, max_r), cli.max_size)?;
            let fault = match inject_fault {
                FaultArg::None => Fault::None,
                FaultArg::ResidueShift => Fault::ResidueShift,
            };
            let report = verify::run(max_n, max_r, fault)?;
            let out = emit(cli.format, &report)?;
            if report.passed {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Command::Tau {
            ell,
            charge,
            mp,
            partition,
        } => {
            let entries: Vec<i64> = parse_json("--charge", &format!("[{charge}]"))?;
            let charge = Charge::new(entries)?;
            if charge.level() != ell {
                return Err(Failure::Usage(format!("--charge must have {ell} entries")));
            }
            let (multipartition, partition) = match (mp, partition) {
                (Some(text), None) => {
                    let mp: Multipartition = parse_json("--mp", &text)?;
                    if mp.level() != ell {
                        return Err(Failure::Usage(format!("--mp must have {ell} components")));
                    }
                    let lambda = tau(&charge, &mp)?;
                    (mp, lambda)
                }
                (None, Some(text)) => {
                    let lambda: Partition = parse_json("--partition", &text)?;
                    (tau_inverse(&charge, &lambda)?, lambda)
                }
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --mp and --partition".into(),
                    ))
                }
            };
            check_size(partition.size(), cli.max_size)?;
            let core = core_of_charge(&charge);
            emit(
                cli.format,
                &TauReport {
                    charge,
                    multipartition,
                    partition,
                    core,
                },
            )
        }
        Command::Reduce { ell, theta } => {
            let theta = theta_point(ell, &theta)?;
            let reduction = reduce_to_fundamental(&theta)?;
            emit(cli.format, &ReduceReport { theta, reduction })
        }
    }
}

fn configure_parallelism() -> Result<(), String> {
    let Ok(value) = std::env::var(PARALLEL_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{PARALLEL_ENV} must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_parallelism() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::EnumerationLimit { .. } => 3,
                Error::ContractViolation(_) | Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}
