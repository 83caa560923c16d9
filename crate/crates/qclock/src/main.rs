use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qclock_core::{
    decoherence_time, equivalence_check, revival_time, ConstantsPreset, DecoherenceResult,
    RevivalResult, Scenario,
};

use qclock::{emit_csv, format_number, parse_scenario, run_sweep_parallel, CliError, ParseOptions};

#[derive(Parser)]
#[command(
    name = "qclock",
    version,
    about = "Interference of quantum clocks under time dilation"
)]
struct Cli {
    /// Physical constants, overriding the scenario file.
    #[arg(long, global = true, value_enum)]
    constants: Option<ConstantsArg>,
    /// Reject unknown keys in scenario files (default).
    #[arg(long, global = true, overrides_with = "no_strict")]
    strict: bool,
    /// Warn about unknown keys instead of rejecting them.
    #[arg(long, global = true, overrides_with = "strict")]
    no_strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstantsArg {
    Si,
    PaperRounded,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the sweep and write it as CSV.
    Run {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// First revival of the visibility along the scenario's lab axis.
    Revival { file: PathBuf },
    /// First point where the visibility drops to the threshold.
    Decoherence {
        file: PathBuf,
        #[arg(long)]
        threshold: f64,
        /// Largest proper-time difference to scan, s.
        #[arg(long)]
        max_delta_tau: Option<f64>,
    },
    /// Parse and validate a scenario file.
    Validate { file: PathBuf },
    /// Compare a gravitational and a rotating scenario point by point.
    Equivalence {
        gravitational: PathBuf,
        rotating: PathBuf,
    },
}

fn load(path: &Path, options: ParseOptions) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed = parse_scenario(&text, options).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.scenario)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let options = ParseOptions {
        strict: !cli.no_strict,
        constants: cli.constants.map(|c| match c {
            ConstantsArg::Si => ConstantsPreset::Si,
            ConstantsArg::PaperRounded => ConstantsPreset::PaperRounded,
        }),
    };
    match cli.command {
        Command::Run { file, out, threads } => {
            let scenario = load(&file, options)?;
            let curve = run_sweep_parallel(&scenario, threads)?;
            let bytes = emit_csv(&curve, &out)?;
            println!(
                "wrote {} rows ({bytes} bytes) to {}",
                curve.rows.len(),
                out.display()
            );
        }
        Command::Revival { file } => {
            let scenario = load(&file, options)?;
            let model = scenario.dilation_model()?;
            let constants = scenario.physical_constants();
            match revival_time(&scenario.clock, &model, &constants)? {
                RevivalResult::Exact {
                    fundamental_frequency,
                    delta_tau,
                    lab_value,
                    axis,
                    visibility,
                } => {
                    println!("revival: exact");
                    println!(
                        "fundamental_frequency_rad_per_s: {}",
                        format_number(fundamental_frequency)
                    );
                    println!("delta_tau_s: {}", format_number(delta_tau));
                    println!("lab_value: {} {}", format_number(lab_value), axis.unit());
                    println!("visibility: {}", format_number(visibility));
                }
                RevivalResult::AlwaysMaximal => {
                    println!("revival: none needed (eigenstate, visibility is always 1)");
                }
                RevivalResult::NoExactRevival {
                    best_delta_tau,
                    best_lab_value,
                    axis,
                    best_visibility,
                } => {
                    println!("revival: no exact revival (incommensurate frequencies)");
                    println!("best_delta_tau_s: {}", format_number(best_delta_tau));
                    println!(
                        "best_lab_value: {} {}",
                        format_number(best_lab_value),
                        axis.unit()
                    );
                    println!("best_visibility: {}", format_number(best_visibility));
                }
            }
        }
        Command::Decoherence {
            file,
            threshold,
            max_delta_tau,
        } => {
            let scenario = load(&file, options)?;
            let model = scenario.dilation_model()?;
            let constants = scenario.physical_constants();
            match decoherence_time(
                &scenario.clock,
                &model,
                threshold,
                max_delta_tau,
                &constants,
            )? {
                DecoherenceResult::Reached {
                    lab_value,
                    axis,
                    delta_tau,
                    visibility,
                } => {
                    println!("decoherence: reached");
                    println!("lab_value: {} {}", format_number(lab_value), axis.unit());
                    println!("delta_tau_s: {}", format_number(delta_tau));
                    println!("visibility: {}", format_number(visibility));
                }
                DecoherenceResult::NotReached {
                    scanned_up_to,
                    min_visibility,
                } => {
                    println!("decoherence: not reached");
                    println!(
                        "scanned_up_to_delta_tau_s: {}",
                        format_number(scanned_up_to)
                    );
                    println!("min_visibility: {}", format_number(min_visibility));
                }
            }
        }
        Command::Validate { file } => {
            let scenario = load(&file, options)?;
            println!(
                "ok: {} scenario, {} points over {}",
                scenario.kind().name(),
                scenario.sweep.count,
                scenario.sweep.variable.name()
            );
        }
        Command::Equivalence {
            gravitational,
            rotating,
        } => {
            let a = load(&gravitational, options)?;
            let b = load(&rotating, options)?;
            let report = equivalence_check(&a, &b)?;
            println!(
                "equivalent: {}",
                if report.equivalent { "yes" } else { "no" }
            );
            println!("points: {}", report.points);
            println!(
                "gravitational_potential_m2_per_s2: {}",
                format_number(report.gravitational_potential)
            );
            println!(
                "centripetal_potential_m2_per_s2: {}",
                format_number(report.centripetal_potential)
            );
            println!(
                "max_visibility_diff: {}",
                format_number(report.max_visibility_diff)
            );
            println!(
                "max_phase_diff_rad: {}",
                format_number(report.max_phase_diff)
            );
            println!(
                "max_delta_tau_diff_s: {}",
                format_number(report.max_delta_tau_diff)
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
