// SPDX-License-Identifier: Apache-2.0

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bloch_efficiency::scenarios::{
    run_report, sweep_alpha, sweep_phase_profiles, sweep_phidot, table2, PhaseSweep, ProfileKind, ReportRun,
    ScenarioConfig, ScenarioKind, Table,
};
use bloch_efficiency::{Error, Result};

#[derive(Parser)]
#[command(name = "bloch-eff", version, about = "Efficiency measures for single-qubit evolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one of the four worked examples.
    Example {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        number: u8,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Directory for CSV curves and the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stationary family quantities as a function of alpha.
    SweepAlpha {
        #[arg(long)]
        theta_ab: f64,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 1.0)]
        energy: f64,
        /// CSV file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Speed efficiency over time for a phase profile.
    PhaseProfiles {
        #[arg(long)]
        profile: String,
        #[arg(long)]
        phi0: f64,
        #[arg(long)]
        phidot0: f64,
        #[arg(long)]
        omega0: f64,
        #[arg(long, default_value_t = 5.0)]
        t_end: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Speed efficiency of both wasteful variants against phidot.
    PhidotSweep {
        #[arg(long, default_value_t = 1.0)]
        omega0: f64,
        #[arg(long, default_value_t = 4.0)]
        phidot_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scenario described by a JSON config file.
    Report {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the four examples and print the summary table.
    Table2 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(table: &Table, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => table.write_csv_file(p),
        None => table.write_csv(io::stdout().lock()),
    }
}

fn print_row(run: &ReportRun) -> Result<()> {
    let mut w = io::stdout().lock();
    serde_json::to_writer_pretty(&mut w, &run.row)?;
    writeln!(w)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Example { number, t_end, steps, out } => {
            let kind = [ScenarioKind::Example1, ScenarioKind::Example2, ScenarioKind::Example3, ScenarioKind::Example4]
                [usize::from(number) - 1];
            let mut cfg = ScenarioConfig::new(kind);
            if let Some(t) = t_end {
                cfg = cfg.with_t_span(0.0, t);
            }
            if let Some(n) = steps {
                cfg = cfg.with_steps(n);
            }
            print_row(&run_report(&cfg, out.as_deref())?)
        }
        Command::SweepAlpha { theta_ab, points, energy, out } => {
            emit(&sweep_alpha(theta_ab, points, energy)?, out.as_deref())
        }
        Command::PhaseProfiles { profile, phi0, phidot0, omega0, t_end, points, out } => {
            let params = PhaseSweep { phi0, phidot0, omega0, t_end, n_points: points };
            emit(&sweep_phase_profiles(ProfileKind::parse(&profile)?, &params)?, out.as_deref())
        }
        Command::PhidotSweep { omega0, phidot_max, points, out } => {
            emit(&sweep_phidot(omega0, phidot_max, points)?, out.as_deref())
        }
        Command::Report { config, out } => {
            print_row(&run_report(&ScenarioConfig::from_path(&config)?, out.as_deref())?)
        }
        Command::Table2 { out } => {
            let runs = table2(out.as_deref())?;
            let mut w = io::stdout().lock();
            writeln!(
                w,
                "{:<10} {:>12} {:>12} {:>12}  classification",
                "scenario", "eta_ge_bar", "eta_se_bar", "eta_he"
            )?;
            for r in &runs {
                let row = &r.row;
                writeln!(
                    w,
                    "{:<10} {:>12.6} {:>12.6} {:>12.6}  {}",
                    row.scenario, row.eta_ge_bar, row.eta_se_bar, row.eta_he, row.classification
                )?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
