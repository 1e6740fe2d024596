use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fleetcharge::commands::{self, OUT_DIR_ENV};
use fleetcharge::{CliError, Policy};
use fleetcharge_core::scenario::Preset;

/// Charging schedules for electric truck fleets.
///
/// Exit codes: 0 success, 2 invalid input or schedule, 3 infeasible,
/// 4 size guard, 1 other errors.
#[derive(Debug, Parser)]
#[command(name = "fleetcharge", version, after_help = format!("Outputs written without --out go to ${OUT_DIR_ENV} (default: the current directory)."))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetArg {
    Small,
    Large,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Small => Preset::Small,
            PresetArg::Large => Preset::Large,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a seeded instance file.
    Generate {
        #[arg(long, value_enum, default_value = "small")]
        preset: PresetArg,
        /// Number of trucks (8 for small, 100 for large).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        slot_minutes: Option<u32>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Solve an instance with one policy and write a report.
    Solve {
        instance: PathBuf,
        /// fcfs, edf, scdf, rollout:<fcfs|edf|scdf> or exact.
        #[arg(long)]
        policy: Policy,
        /// Report to measure the gap against.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compare policies on one instance, or saved reports of one instance.
    /// Writes <out>.csv and <out>.json.
    Compare {
        #[arg(required_unless_present = "report")]
        instance: Option<PathBuf>,
        /// Repeat or separate with commas; defaults to all heuristics and rollouts.
        #[arg(long, value_delimiter = ',', conflicts_with = "report")]
        policy: Vec<Policy>,
        #[arg(long)]
        report: Vec<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Slot-level CSV of a report for Gantt and power plots.
    Gantt {
        report: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            preset,
            n,
            seed,
            slot_minutes,
            out,
        } => {
            let g = commands::generate(preset.into(), n, seed, slot_minutes, out.as_deref())?;
            println!("{}  {} ({} trucks, {} ports)", g.sha256, g.path.display(), g.num_trucks, g.num_ports);
        }
        Command::Solve {
            instance,
            policy,
            reference,
            out,
        } => {
            let (report, path) = commands::solve(&instance, policy, reference.as_deref(), out.as_deref())?;
            let c = report.cost;
            println!(
                "{}: total {:.2} = energy {:.2} + waiting {:.2} + tardiness {:.2} EUR",
                report.policy, c.total, c.energy, c.waiting, c.tardiness
            );
            if let Some(base) = &report.base {
                match base.total {
                    Some(total) => println!(
                        "base {}: total {:.2} EUR, reduction {:.2}%{}",
                        base.policy,
                        total,
                        base.reduction_percent,
                        if base.guard_triggered { " (base ordering kept)" } else { "" }
                    ),
                    None => println!("base {}: infeasible", base.policy),
                }
            }
            if let Some(gap) = report.gap_percent {
                println!("gap vs reference: {gap:.2}%");
            }
            println!("{} inner evaluations, {:.3} s, report {}", report.inner_evaluations, report.solve_seconds, path.display());
        }
        Command::Compare {
            instance,
            policy,
            report,
            out,
        } => {
            let compared = if report.is_empty() {
                let instance = instance.expect("clap requires an instance without --report");
                let policies = if policy.is_empty() { Policy::HEURISTICS.to_vec() } else { policy };
                commands::compare_policies(&instance, &policies, out.as_deref())?
            } else {
                commands::compare_reports(&report, out.as_deref())?
            };
            print!("{}", compared.comparison.to_table());
            println!("wrote {} and {}", compared.csv.display(), compared.json.display());
        }
        Command::Gantt { report, out } => {
            let (path, rows) = commands::gantt(&report, out.as_deref())?;
            println!("{rows} rows written to {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
